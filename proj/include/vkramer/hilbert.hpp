#ifndef VKRAMER_HILBERT_HPP
#define VKRAMER_HILBERT_HPP

#include <vector>

#include <Eigen/Dense>

#include "vkramer/dual.hpp"

namespace vkramer {

using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Inner product of the coordinate space, conjugate-linear in the second
/// argument: inner(u, v) = sum_i u_i * conj(v_i).
Complex inner(const Vector& u, const Vector& v);

/// A subspace held as an orthonormal column basis (possibly zero columns).
struct Subspace {
    Matrix basis; // d x k, orthonormal columns

    Eigen::Index dim() const { return basis.cols(); }
    Eigen::Index ambient_dim() const { return basis.rows(); }

    static Subspace trivial(Eigen::Index d) { return Subspace{Matrix(d, 0)}; }
};

/// Orthonormal basis of the intersection of the kernels of `ops`.
/// Singular values of the stacked matrix below rank_tol * sigma_max are
/// treated as zero; an all-zero stack yields the full space.
Subspace joint_kernel(const std::vector<Matrix>& ops, double rank_tol = 1e-10);

/// Orthogonal projection of u onto S.
Vector project(const Vector& u, const Subspace& S);

/// Orthonormal basis of the orthogonal complement of S.
Subspace complement(const Subspace& S);

} // namespace vkramer

#endif
