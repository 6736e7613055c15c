#include "vkramer/debranges.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace vkramer {

EntireOperator EntireOperator::matrix_poly(std::vector<Matrix> coeffs) {
    if (coeffs.empty())
        throw std::invalid_argument("EntireOperator: empty coefficient list");
    const Eigen::Index d = coeffs.front().rows();
    for (const Matrix& m : coeffs)
        if (m.rows() != d || m.cols() != d)
            throw std::invalid_argument("EntireOperator: coefficients must be d x d");
    EntireOperator e;
    e.dim_ = d;
    e.coeffs_ = std::move(coeffs);
    return e;
}

EntireOperator EntireOperator::scalar_exp(Complex amp, Complex rate, Eigen::Index dim) {
    if (dim < 1)
        throw std::invalid_argument("EntireOperator: dimension must be positive");
    EntireOperator e;
    e.amp_ = amp;
    e.rate_ = rate;
    e.dim_ = dim;
    return e;
}

Eigen::Index EntireOperator::dim() const { return dim_; }

Matrix EntireOperator::eval(Complex z) const {
    if (coeffs_.empty())
        return amp_ * std::exp(rate_ * z) * Matrix::Identity(dim_, dim_);
    Matrix val = coeffs_.back();
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;)
        val = val * z + coeffs_[k];
    return val;
}

Matrix EntireOperator::deriv(Complex z) const {
    if (coeffs_.empty())
        return rate_ * amp_ * std::exp(rate_ * z) * Matrix::Identity(dim_, dim_);
    Matrix val = coeffs_.back();
    Matrix der = Matrix::Zero(dim_, dim_);
    for (std::size_t k = coeffs_.size() - 1; k-- > 0;) {
        der = der * z + val;
        val = val * z + coeffs_[k];
    }
    return der;
}

void DeBrangesOperator::validate(Complex probe) const {
    if (e_plus.dim() != e_minus.dim())
        throw std::invalid_argument("DeBrangesOperator: component dimensions differ");
    auto invertible = [](const Matrix& m) {
        Eigen::JacobiSVD<Matrix> svd(m);
        const auto& sv = svd.singularValues();
        return sv.size() > 0 && sv(sv.size() - 1) > 1e-12 * sv(0) && sv(0) > 0.0;
    };
    if (!invertible(e_plus.eval(probe)) || !invertible(e_minus.eval(probe)))
        throw std::invalid_argument("DeBrangesOperator: components not invertible at the probe");
    if (beta_star) {
        if (beta_star->imag() <= 0.0)
            throw std::invalid_argument("DeBrangesOperator: beta must lie in the upper half-plane");
        Matrix p = e_plus.eval(*beta_star);
        Matrix m = e_minus.eval(std::conj(*beta_star));
        double scale = std::max({1.0, p.norm(), m.norm()});
        if ((p - p.adjoint()).norm() > 1e-10 * scale || (m - m.adjoint()).norm() > 1e-10 * scale)
            throw std::invalid_argument("DeBrangesOperator: marked-point values are not self-adjoint");
    }
}

Complex rho(Complex gamma, Complex z) {
    return Complex(0.0, -2.0 * std::numbers::pi) * (z - std::conj(gamma));
}

Matrix db_kernel(const DeBrangesOperator& op, Complex gamma, Complex z) {
    const Complex gbar = std::conj(gamma);
    Matrix ep_g = op.e_plus.eval(gamma).adjoint();
    Matrix em_g = op.e_minus.eval(gamma).adjoint();
    if (std::abs(z - gbar) > 1e-6 * (1.0 + std::abs(gbar))) {
        return (op.e_plus.eval(z) * ep_g - op.e_minus.eval(z) * em_g) / rho(gamma, z);
    }
    return (op.e_plus.deriv(gbar) * ep_g - op.e_minus.deriv(gbar) * em_g) /
           Complex(0.0, -2.0 * std::numbers::pi);
}

PositivityReport positivity_check(const DeBrangesOperator& op,
                                  const std::vector<Complex>& points,
                                  const std::vector<Vector>& directions) {
    if (points.size() < 2)
        throw std::invalid_argument("positivity_check: need at least two points");
    if (points.size() != directions.size())
        throw std::invalid_argument("positivity_check: one direction per point");

    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    Matrix gram(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            gram(i, j) = inner(db_kernel(op, points[j], points[i]) * directions[j], directions[i]);
    gram = 0.5 * (gram + Matrix(gram.adjoint()));

    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    PositivityReport rep;
    rep.min_eigenvalue = eig.eigenvalues().minCoeff();
    rep.max_eigenvalue = eig.eigenvalues().maxCoeff();
    return rep;
}

SpaceEqualityReport space_equality_battery(const SamplingSystem& S, Complex beta) {
    for (Complex zn : S.kernel().nodes())
        if (std::abs(zn.imag()) > 1e-12)
            throw PreconditionViolation("space_equality_battery: nodes must be real");
    if (beta.imag() <= 0.0)
        throw PreconditionViolation("space_equality_battery: beta must lie in the upper half-plane");

    SpaceEqualityReport rep;
    const Complex bbar = std::conj(beta);

    auto reports = invariance_check(S, {beta, bbar});
    rep.invariance_at_beta = reports[0].all_in_space;
    rep.invariance_at_beta_conj = reports[1].all_in_space;

    IsometryDefect iso = debranges_isometry_check(S, beta);
    rep.isometry = iso.isometric;
    rep.isometry_defect = iso.max_norm_defect;

    auto cond = [&](Complex gamma) {
        Matrix k = S.kernel().reproducing_kernel(gamma, gamma);
        Eigen::JacobiSVD<Matrix> svd(k);
        const auto& sv = svd.singularValues();
        double smin = sv(sv.size() - 1);
        return smin > 0.0 ? sv(0) / smin : std::numeric_limits<double>::infinity();
    };
    rep.cond_k_beta = cond(beta);
    rep.cond_k_beta_conj = cond(bbar);
    rep.kernels_invertible = std::isfinite(rep.cond_k_beta) && std::isfinite(rep.cond_k_beta_conj);
    rep.abstained = !rep.kernels_invertible || rep.cond_k_beta > 1e12 || rep.cond_k_beta_conj > 1e12;
    rep.consistent = !rep.abstained && rep.invariance_at_beta && rep.invariance_at_beta_conj &&
                     rep.isometry && rep.kernels_invertible;
    return rep;
}

} // namespace vkramer
