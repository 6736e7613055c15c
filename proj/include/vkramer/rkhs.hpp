#ifndef VKRAMER_RKHS_HPP
#define VKRAMER_RKHS_HPP

#include <functional>
#include <vector>

#include "vkramer/grid.hpp"
#include "vkramer/kernels.hpp"

namespace vkramer {

/// Common kernel H = intersection of ker F(z) over the node set plus a few
/// generic probe points.
Subspace common_kernel(const KernelFunction& F, double rank_tol = 1e-10);

/// Element f_u(z) = F(z) u of the function space H_F. Stores both the
/// representative u and its reduction modulo the common kernel H; the
/// quotient norm of the element is the coordinate norm of the reduction.
class RkhsElement {
public:
    RkhsElement(KernelFunction F, Vector coeff, Vector reduced);

    const KernelFunction& kernel() const { return kernel_; }
    const Vector& coeff() const { return coeff_; }
    const Vector& reduced() const { return reduced_; }

    Vector value(Complex z) const { return kernel_.evaluate(z) * coeff_; }
    Vector deriv_value(Complex z) const { return kernel_.evaluate_with_deriv(z).second * coeff_; }
    double norm() const { return reduced_.norm(); }

private:
    KernelFunction kernel_;
    Vector coeff_;
    Vector reduced_;
};

RkhsElement lift(const KernelFunction& F, const Vector& u);
RkhsElement lift(const KernelFunction& F, const Vector& u, const Subspace& H);

Complex inner_H(const RkhsElement& f, const RkhsElement& g);

struct IsometryReport {
    bool is_isometry = false;
    Eigen::Index joint_kernel_dim = 0;
    Eigen::Index adjoint_range_rank = 0;
};

IsometryReport isometry_check(const KernelFunction& F, const std::vector<Complex>& probes);

/// |<f, K_gamma v>_H - <f(gamma), v>| for one (f, gamma, v) triple.
double reproducing_check(const RkhsElement& f, Complex gamma, const Vector& v);

struct MembershipResult {
    Vector u;
    double residual = 0.0;
    bool rank_deficient = false;

    bool in_space(double tol = 1e-8) const { return residual <= tol; }
};

/// Least-squares solve of F(z_j) u = g(z_j) over the grid; residual is the
/// worst grid defect normalized by 1 + max ||g||.
MembershipResult membership_solve(const KernelFunction& F,
                                  const std::function<Vector(Complex)>& g,
                                  const std::vector<Complex>& grid);

} // namespace vkramer

#endif
