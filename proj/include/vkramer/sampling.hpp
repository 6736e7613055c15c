#ifndef VKRAMER_SAMPLING_HPP
#define VKRAMER_SAMPLING_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "vkramer/random.hpp"
#include "vkramer/rkhs.hpp"

namespace vkramer {

struct CertificationFailure : std::runtime_error {
    CertificationFailure(std::string identity_, Eigen::Index node_, double residual_);
    std::string identity;
    Eigen::Index node;
    double residual;
};

/// Kernel function bundled with the node/basis/coefficient data that passed
/// the sampling-condition certification.
class SamplingSystem {
public:
    const KernelFunction& kernel() const { return kernel_; }
    Eigen::Index dim() const { return kernel_.dim(); }
    Eigen::Index count() const { return kernel_.sample_count(); }
    Complex node(Eigen::Index n) const { return kernel_.sample_node(n); }
    Vector basis_vector(Eigen::Index n) const { return kernel_.basis_vector(n); }
    const std::vector<Complex>& coefficients() const { return c_; }
    Complex c(Eigen::Index n) const { return c_[static_cast<std::size_t>(n)]; }
    bool certified() const { return true; }

    /// Sampling function F_n(z) = F(z) u_n.
    Vector sampling_function(Eigen::Index n, Complex z) const {
        return kernel_.evaluate(z) * basis_vector(n);
    }

private:
    friend SamplingSystem certify(const KernelFunction&, RandomEngine&, int);
    SamplingSystem(KernelFunction F, std::vector<Complex> c)
        : kernel_(std::move(F)), c_(std::move(c)) {}

    KernelFunction kernel_;
    std::vector<Complex> c_;
};

/// Verifies the rank-one sampling behavior of F at its nodes on random
/// probe vectors and extracts c_n. Throws CertificationFailure naming the
/// violated identity otherwise.
SamplingSystem certify(const KernelFunction& F, RandomEngine& rng, int probes = 50);

/// Values f(z_n), one per distinct node.
struct SampleSet {
    std::vector<Vector> values;

    const Vector& at_group(Eigen::Index g) const {
        if (g < 0 || static_cast<std::size_t>(g) >= values.size())
            throw std::out_of_range("SampleSet: missing sample");
        return values[static_cast<std::size_t>(g)];
    }
};

SampleSet take_samples(const KernelFunction& F, const Vector& u);

/// Sampling series sum_n <f(z_n), u_n> F_n(z) / c_n, optionally truncated to
/// the first `terms` indices (negative = all).
Vector kramer_reconstruct(const SamplingSystem& S, const SampleSet& samples, Complex z,
                          Eigen::Index terms = -1);

/// Same series written through the reproducing kernel:
/// sum_n <f(z_n), u_n> K_{z_n}(z) u_n / <K_{z_n}(z_n) u_n, u_n>.
Vector kramer_kernel_form(const SamplingSystem& S, const SampleSet& samples, Complex z);

struct Factorization {
    ScalarEntire Q;
    VectorEntire A;
    std::vector<Complex> a; // a_1 = 1
};

struct FactorizationFailure : std::runtime_error {
    FactorizationFailure(std::string what_, Complex worst_point_, double residual_);
    Complex worst_point;
    double residual;
};

/// Recovers the (Q, A, a_n) structure of the sampling functions:
/// (z - z_n) F_n(z) = a_n Q(z) A(z). Requires the backward-shift invariance
/// to hold at probe points; throws FactorizationFailure when the system
/// lacks the structure.
Factorization extract_factorization(const SamplingSystem& S);

/// sum_n <f(z_n),u_n> [Q(z) / ((z-z_n) Q'(z_n))] [A(z) / <A(z_n),u_n>].
Vector quasi_lagrange_reconstruct(const Factorization& fact, const SamplingSystem& S,
                                  const SampleSet& samples, Complex z);

/// Resolvent-family series sum_n [Q(z) / ((z-z_n) Q'(z_n))] f(z_n), using the
/// full vector sample at each distinct node.
Vector lagrange_reconstruct(const KernelFunction& F, const SampleSet& samples, Complex z);

struct SweepRow {
    int terms = 0;
    double max_error = 0.0;
    double mean_error = 0.0;
    double runtime_ms = 0.0;
};

/// Truncation sweep of the sampling series against direct evaluation.
/// Errors are normalized by 1 + max ||f|| over the grid. Wall time is
/// recorded only when `measure_time` is set; reports stay deterministic
/// otherwise.
std::vector<SweepRow> convergence_sweep(const SamplingSystem& S, const RkhsElement& f,
                                        const std::vector<int>& truncations,
                                        const std::vector<Complex>& grid,
                                        bool measure_time = false);

} // namespace vkramer

#endif
