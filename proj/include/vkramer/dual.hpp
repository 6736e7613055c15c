#ifndef VKRAMER_DUAL_HPP
#define VKRAMER_DUAL_HPP

#include <cmath>
#include <complex>

namespace vkramer {

using Complex = std::complex<double>;

/// First-order Taylor scalar: carries a value and its derivative with
/// respect to the evaluation point. Evaluating an analytic function with a
/// Dual seed {z, 1} yields the exact derivative, with no step-size
/// cancellation.
struct Dual {
    Complex v{0.0, 0.0};
    Complex d{0.0, 0.0};

    Dual() = default;
    Dual(Complex value) : v(value) {}
    Dual(Complex value, Complex deriv) : v(value), d(deriv) {}

    static Dual seed(Complex z) { return Dual(z, Complex(1.0, 0.0)); }
};

inline Dual operator+(const Dual& a, const Dual& b) { return {a.v + b.v, a.d + b.d}; }
inline Dual operator-(const Dual& a, const Dual& b) { return {a.v - b.v, a.d - b.d}; }
inline Dual operator-(const Dual& a) { return {-a.v, -a.d}; }
inline Dual operator*(const Dual& a, const Dual& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
inline Dual operator/(const Dual& a, const Dual& b) {
    Complex q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}
inline Dual operator+(const Dual& a, Complex b) { return {a.v + b, a.d}; }
inline Dual operator+(Complex a, const Dual& b) { return {a + b.v, b.d}; }
inline Dual operator-(const Dual& a, Complex b) { return {a.v - b, a.d}; }
inline Dual operator-(Complex a, const Dual& b) { return {a - b.v, -b.d}; }
inline Dual operator*(const Dual& a, Complex b) { return {a.v * b, a.d * b}; }
inline Dual operator*(Complex a, const Dual& b) { return {a * b.v, a * b.d}; }
inline Dual operator/(const Dual& a, Complex b) { return {a.v / b, a.d / b}; }
inline Dual operator/(Complex a, const Dual& b) {
    Complex q = a / b.v;
    return {q, -q * b.d / b.v};
}

inline Dual sin(const Dual& a) { return {std::sin(a.v), std::cos(a.v) * a.d}; }
inline Dual cos(const Dual& a) { return {std::cos(a.v), -std::sin(a.v) * a.d}; }
inline Dual exp(const Dual& a) {
    Complex e = std::exp(a.v);
    return {e, e * a.d};
}

// Uniform access to the point value, so templated evaluators can branch on
// the location of the argument.
inline Complex value_of(Complex z) { return z; }
inline Complex value_of(const Dual& z) { return z.v; }

} // namespace vkramer

#endif
