#include "vkramer/hilbert.hpp"

#include <stdexcept>

namespace vkramer {

Complex inner(const Vector& u, const Vector& v) {
    if (u.size() != v.size())
        throw std::invalid_argument("inner: dimension mismatch");
    // Eigen's dot() conjugates its first argument.
    return v.dot(u);
}

Subspace joint_kernel(const std::vector<Matrix>& ops, double rank_tol) {
    if (ops.empty())
        throw std::invalid_argument("joint_kernel: empty operator list");
    const Eigen::Index d = ops.front().cols();
    for (const Matrix& m : ops)
        if (m.rows() != d || m.cols() != d)
            throw std::invalid_argument("joint_kernel: operators must be d x d with equal d");

    Matrix stacked(static_cast<Eigen::Index>(ops.size()) * d, d);
    for (std::size_t i = 0; i < ops.size(); ++i)
        stacked.middleRows(static_cast<Eigen::Index>(i) * d, d) = ops[i];

    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double smax = sv.size() > 0 ? sv(0) : 0.0;
    if (smax == 0.0)
        return Subspace{Matrix::Identity(d, d)}; // zero stack: full space

    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > rank_tol * smax)
        ++rank;
    return Subspace{svd.matrixV().rightCols(d - rank)};
}

Vector project(const Vector& u, const Subspace& S) {
    if (u.size() != S.ambient_dim())
        throw std::invalid_argument("project: dimension mismatch");
    if (S.dim() == 0)
        return Vector::Zero(u.size());
    return S.basis * (S.basis.adjoint() * u);
}

Subspace complement(const Subspace& S) {
    const Eigen::Index d = S.ambient_dim();
    if (S.dim() == 0)
        return Subspace{Matrix::Identity(d, d)};
    Eigen::JacobiSVD<Matrix> svd(S.basis, Eigen::ComputeFullU);
    return Subspace{svd.matrixU().rightCols(d - S.dim())};
}

} // namespace vkramer
