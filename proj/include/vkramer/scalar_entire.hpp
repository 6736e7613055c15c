#ifndef VKRAMER_SCALAR_ENTIRE_HPP
#define VKRAMER_SCALAR_ENTIRE_HPP

#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "vkramer/dual.hpp"

namespace vkramer {

enum class EntireVariant { SinPi, PolyFromRoots, TruncatedProduct };

/// Scalar entire function with only simple zeros at its node list.
/// Three concrete forms:
///   SinPi            Q(z) = sin(pi z) / pi, nodes a subset of the integers
///   PolyFromRoots    Q(z) = prod_n (z - z_n)
///   TruncatedProduct Q(z) = prod_n (1 - z/z_n) exp(z/z_n), genus-1 factors,
///                    tail beyond the listed nodes dropped
class ScalarEntire {
public:
    static ScalarEntire sin_pi(std::vector<Complex> nodes);
    static ScalarEntire poly_from_roots(std::vector<Complex> nodes);
    static ScalarEntire truncated_product(std::vector<Complex> nodes);

    EntireVariant variant() const { return variant_; }
    const std::vector<Complex>& nodes() const { return nodes_; }

    template <class T>
    T eval_t(const T& z) const {
        switch (variant_) {
        case EntireVariant::SinPi:
            return sin(Complex(std::numbers::pi) * z) / Complex(std::numbers::pi);
        case EntireVariant::PolyFromRoots: {
            T p = T(Complex(1.0));
            for (Complex r : nodes_)
                p = p * (z - r);
            return p;
        }
        case EntireVariant::TruncatedProduct: {
            T p = T(Complex(1.0));
            for (Complex r : nodes_)
                p = p * ((Complex(1.0) - z / r) * exp(z / r));
            return p;
        }
        }
        throw std::logic_error("unreachable");
    }

    template <class T>
    T deriv_t(const T& z) const {
        switch (variant_) {
        case EntireVariant::SinPi:
            return cos(Complex(std::numbers::pi) * z);
        case EntireVariant::PolyFromRoots: {
            // product rule: sum over the factor being differentiated
            T s = T(Complex(0.0));
            for (std::size_t k = 0; k < nodes_.size(); ++k) {
                T p = T(Complex(1.0));
                for (std::size_t j = 0; j < nodes_.size(); ++j)
                    if (j != k)
                        p = p * (z - nodes_[j]);
                s = s + p;
            }
            return s;
        }
        case EntireVariant::TruncatedProduct: {
            // f_k(z) = (1 - z/r) e^{z/r}, f_k'(z) = -(z/r^2) e^{z/r}
            T s = T(Complex(0.0));
            for (std::size_t k = 0; k < nodes_.size(); ++k) {
                Complex r = nodes_[k];
                T term = (-z / (r * r)) * exp(z / r);
                for (std::size_t j = 0; j < nodes_.size(); ++j)
                    if (j != k) {
                        Complex rj = nodes_[j];
                        term = term * ((Complex(1.0) - z / rj) * exp(z / rj));
                    }
                s = s + term;
            }
            return s;
        }
        }
        throw std::logic_error("unreachable");
    }

    Complex eval(Complex z) const { return eval_t(z); }
    Complex deriv(Complex z) const { return deriv_t(z); }
    /// Second derivative, by differentiating deriv_t with a Dual seed.
    Complex second_deriv(Complex z) const { return deriv_t(Dual::seed(z)).d; }

    /// Pole guard radius around node n.
    double pole_eps(std::size_t n) const { return 1e-6 * (1.0 + std::abs(nodes_.at(n))); }

    /// Q(z) / (z - z_n) with the removable singularity filled in: inside the
    /// pole guard the second-order Taylor expansion about z_n is used.
    template <class T>
    T reg_quotient_t(const T& z, std::size_t n) const {
        const Complex zn = nodes_.at(n);
        if (std::abs(value_of(z) - zn) > pole_eps(n))
            return eval_t(z) / (z - zn);
        return deriv(zn) + Complex(0.5) * second_deriv(zn) * (z - zn);
    }

    Complex reg_quotient(Complex z, std::size_t n) const { return reg_quotient_t(z, n); }

private:
    ScalarEntire(EntireVariant v, std::vector<Complex> nodes);

    EntireVariant variant_;
    std::vector<Complex> nodes_;
};

} // namespace vkramer

#endif
