#ifndef VKRAMER_DEBRANGES_HPP
#define VKRAMER_DEBRANGES_HPP

#include <optional>

#include "vkramer/shift.hpp"

namespace vkramer {

/// Operator-valued entire function handle for the structure pair: either a
/// matrix polynomial or a scalar exponential multiple of the identity,
/// amp * exp(rate * z) * I.
class EntireOperator {
public:
    static EntireOperator matrix_poly(std::vector<Matrix> coeffs);
    static EntireOperator scalar_exp(Complex amp, Complex rate, Eigen::Index dim);

    Eigen::Index dim() const;
    Matrix eval(Complex z) const;
    Matrix deriv(Complex z) const;

private:
    EntireOperator() = default;
    std::vector<Matrix> coeffs_; // empty for the exponential form
    Complex amp_{1.0, 0.0};
    Complex rate_{0.0, 0.0};
    Eigen::Index dim_ = 0;
};

struct DeBrangesOperator {
    EntireOperator e_minus;
    EntireOperator e_plus;
    std::optional<Complex> beta_star; // upper half-plane

    /// Checks invertibility at the probe and, when beta_star is set,
    /// self-adjointness of E_+(beta) and E_-(conj(beta)). Throws on failure.
    void validate(Complex probe) const;
};

/// rho_gamma(z) = -2 pi i (z - conj(gamma)).
Complex rho(Complex gamma, Complex z);

/// Structure kernel (E_+(z)E_+(gamma)^* - E_-(z)E_-(gamma)^*) / rho_gamma(z),
/// with the derivative form filling in the removable point z = conj(gamma).
Matrix db_kernel(const DeBrangesOperator& op, Complex gamma, Complex z);

struct PositivityReport {
    double min_eigenvalue = 0.0;
    double max_eigenvalue = 0.0;

    bool positive(double tol = 1e-10) const {
        return min_eigenvalue >= -tol * std::max(1.0, max_eigenvalue);
    }
};

/// Minimal eigenvalue of the block Gram matrix [<K_{gamma_j}(gamma_i) v_j, v_i>].
PositivityReport positivity_check(const DeBrangesOperator& op,
                                  const std::vector<Complex>& points,
                                  const std::vector<Vector>& directions);

struct SpaceEqualityReport {
    bool invariance_at_beta = false;
    bool invariance_at_beta_conj = false;
    bool isometry = false;
    double isometry_defect = 0.0;
    double cond_k_beta = 0.0;
    double cond_k_beta_conj = 0.0;
    bool kernels_invertible = false;
    bool abstained = false; // kernel conditioning beyond trust
    bool consistent = false;
};

/// Battery of the finite-dimensional characterization conditions: shift
/// invariance at beta and conj(beta), the norm identity, and invertibility
/// of the diagonal kernels.
SpaceEqualityReport space_equality_battery(const SamplingSystem& S, Complex beta);

} // namespace vkramer

#endif
