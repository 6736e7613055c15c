#ifndef VKRAMER_SHIFT_HPP
#define VKRAMER_SHIFT_HPP

#include "vkramer/sampling.hpp"

namespace vkramer {

struct PreconditionViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Outcome of dividing an element by (z - beta). `output_coeff` is the
/// candidate coordinate vector w with F(z) w = f(z) / (z - beta); `in_space`
/// reports whether the quotient stayed inside the function space.
struct ShiftResult {
    Complex beta;
    Vector output_coeff;
    bool in_space = false;
    double residual = 0.0;
};

/// Generalized backward shift applied to f (which must vanish at beta).
/// The candidate coefficients are built from the closed formulas — the
/// coefficient of u_n is divided by (z_n - beta), with the derivative-based
/// formula taking over when beta is itself a node — then validated against
/// the grid values of f(z) / (z - beta).
ShiftResult backward_shift(const SamplingSystem& S, const RkhsElement& f, Complex beta);

/// Coefficient-space description of H_beta = {f in H : f(beta) = 0}.
Subspace h_beta(const SamplingSystem& S, Complex beta);

struct BetaReport {
    Complex beta;
    Eigen::Index dim_h_beta = 0;
    bool all_in_space = true;
    double max_residual = 0.0;
};

std::vector<BetaReport> invariance_check(const SamplingSystem& S,
                                         const std::vector<Complex>& betas);

struct MultResult {
    bool in_domain = false;
    Vector coeff;
    double residual = 0.0;
};

/// Membership test for z * f(z): reports whether f lies in the natural
/// domain of the multiplication operator, and the preimage when it does.
MultResult mult_apply(const SamplingSystem& S, const RkhsElement& f);

/// Verifies that g = (z - z2) f(z) / (z - z1) maps a basis of H_{z1} into
/// H_{z2} with an exact round trip.
bool bijection_check(const SamplingSystem& S, Complex z1, Complex z2);

struct IsometryDefect {
    bool isometric = false;
    double max_norm_defect = 0.0;
    Eigen::Index dim_h_beta = 0;
};

/// Norm identity behind the de Branges characterization: with real nodes and
/// Im(beta) > 0, the map f -> f + (beta - conj(beta)) R_beta f preserves the
/// coordinate norm on H_beta.
IsometryDefect debranges_isometry_check(const SamplingSystem& S, Complex beta);

} // namespace vkramer

#endif
