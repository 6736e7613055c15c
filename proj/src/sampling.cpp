#include "vkramer/sampling.hpp"

#include <chrono>
#include <cmath>

#include "vkramer/shift.hpp"

namespace vkramer {

namespace {

constexpr double kCertifyTol = 1e-10;

// reg-quotient of Q against a node given by value rather than index
Complex reg_quotient_at(const ScalarEntire& Q, Complex z, Complex node) {
    const auto& qn = Q.nodes();
    for (std::size_t i = 0; i < qn.size(); ++i)
        if (std::abs(qn[i] - node) <= 1e-9 * (1.0 + std::abs(node)))
            return Q.reg_quotient(z, i);
    throw std::invalid_argument("reg_quotient_at: node is not a zero of Q");
}

} // namespace

CertificationFailure::CertificationFailure(std::string identity_, Eigen::Index node_,
                                           double residual_)
    : std::runtime_error("certification failure: " + identity_ + " violated at node index " +
                         std::to_string(node_) + ", residual " + std::to_string(residual_)),
      identity(std::move(identity_)), node(node_), residual(residual_) {}

FactorizationFailure::FactorizationFailure(std::string what_, Complex worst_point_,
                                           double residual_)
    : std::runtime_error("factorization failure: " + what_ + " (worst point " +
                         std::to_string(worst_point_.real()) + (worst_point_.imag() < 0 ? "" : "+") +
                         std::to_string(worst_point_.imag()) + "i, residual " +
                         std::to_string(residual_) + ")"),
      worst_point(worst_point_), residual(residual_) {}

SamplingSystem certify(const KernelFunction& F, RandomEngine& rng, int probes) {
    if (!F.has_sampling_data())
        throw std::invalid_argument("certify: kernel carries no node/basis data");
    const Eigen::Index count = F.sample_count();
    const Eigen::Index d = F.dim();

    std::vector<Matrix> at_node(F.nodes().size());
    for (std::size_t g = 0; g < F.nodes().size(); ++g)
        at_node[g] = F.evaluate(F.nodes()[g]);

    std::vector<Complex> c(static_cast<std::size_t>(count));
    double cmax = 0.0;
    for (Eigen::Index n = 0; n < count; ++n) {
        Vector un = F.basis_vector(n);
        c[static_cast<std::size_t>(n)] = inner(at_node[F.group_of(n)] * un, un);
        cmax = std::max(cmax, std::abs(c[static_cast<std::size_t>(n)]));
    }
    const double scale = std::max(1.0, cmax);

    for (Eigen::Index n = 0; n < count; ++n) {
        if (std::abs(c[static_cast<std::size_t>(n)]) <= kCertifyTol * scale)
            throw CertificationFailure("nonzero-coefficient", n,
                                       std::abs(c[static_cast<std::size_t>(n)]));
    }

    // rank-one, basis-aligned behavior at the nodes on random probe vectors
    for (Eigen::Index n = 0; n < count; ++n) {
        const Matrix& Fz = at_node[F.group_of(n)];
        Vector un = F.basis_vector(n);
        for (int p = 0; p < probes; ++p) {
            Vector u = rng.cnormal_vector(d);
            double res = (Fz * u - c[static_cast<std::size_t>(n)] * inner(u, un) * un).norm();
            if (res > kCertifyTol * u.norm() * scale)
                throw CertificationFailure("sampling-condition", n, res);
        }
    }

    // adjoint identity at the nodes
    for (Eigen::Index n = 0; n < count; ++n) {
        Vector un = F.basis_vector(n);
        double res =
            (at_node[F.group_of(n)].adjoint() * un - std::conj(c[static_cast<std::size_t>(n)]) * un)
                .norm();
        if (res > kCertifyTol * scale)
            throw CertificationFailure("adjoint-identity", n, res);
    }

    // interpolation deltas across all node pairs
    for (Eigen::Index n = 0; n < count; ++n) {
        Vector un = F.basis_vector(n);
        for (Eigen::Index m = 0; m < count; ++m) {
            Vector expected = F.group_of(m) == F.group_of(n)
                                  ? Vector(c[static_cast<std::size_t>(n)] * un)
                                  : Vector(Vector::Zero(d));
            double res = (at_node[F.group_of(m)] * un - expected).norm();
            if (res > kCertifyTol * scale)
                throw CertificationFailure("node-interpolation", n, res);
        }
    }

    return SamplingSystem(F, std::move(c));
}

SampleSet take_samples(const KernelFunction& F, const Vector& u) {
    SampleSet s;
    for (Complex node : F.nodes())
        s.values.push_back(F.evaluate(node) * u);
    return s;
}

Vector kramer_reconstruct(const SamplingSystem& S, const SampleSet& samples, Complex z,
                          Eigen::Index terms) {
    const Eigen::Index count = terms < 0 ? S.count() : std::min(terms, S.count());
    Matrix Fz = S.kernel().evaluate(z);
    Vector out = Vector::Zero(S.dim());
    for (Eigen::Index n = 0; n < count; ++n) {
        Vector un = S.basis_vector(n);
        Complex coeff = inner(samples.at_group(S.kernel().group_of(n)), un) / S.c(n);
        out += coeff * (Fz * un);
    }
    return out;
}

Vector kramer_kernel_form(const SamplingSystem& S, const SampleSet& samples, Complex z) {
    const KernelFunction& F = S.kernel();
    Matrix Fz = F.evaluate(z);
    Vector out = Vector::Zero(S.dim());
    for (Eigen::Index n = 0; n < S.count(); ++n) {
        Vector un = S.basis_vector(n);
        Complex zn = S.node(n);
        Matrix Fzn_adj = F.evaluate_adjoint(zn);
        Vector kn_at_z = Fz * (Fzn_adj * un);              // K_{z_n}(z) u_n
        Vector kn_at_zn = F.evaluate(zn) * (Fzn_adj * un); // K_{z_n}(z_n) u_n
        Complex denom = inner(kn_at_zn, un);               // = ||K_{z_n} u_n||_H^2
        Complex coeff = inner(samples.at_group(F.group_of(n)), un);
        out += (coeff / denom) * kn_at_z;
    }
    return out;
}

Factorization extract_factorization(const SamplingSystem& S) {
    const KernelFunction& F = S.kernel();
    const Eigen::Index count = S.count();
    if (count < 1)
        throw std::invalid_argument("extract_factorization: empty system");

    // invariance precheck: one generic point and one node
    std::vector<Complex> probe_betas;
    GridSpec spec = default_grid_spec(F.nodes());
    probe_betas.emplace_back(0.5 * (spec.real_lo + spec.real_hi) + 0.137, 0.83);
    if (count >= 2)
        probe_betas.push_back(S.node(1));
    for (const BetaReport& rep : invariance_check(S, probe_betas)) {
        if (!rep.all_in_space)
            throw FactorizationFailure("backward-shift invariance fails at probe", rep.beta,
                                       rep.max_residual);
    }

    const Complex z1 = S.node(0);
    const Complex c1 = S.c(0);
    const Vector u1 = S.basis_vector(0);

    std::vector<Complex> a(static_cast<std::size_t>(count));
    a[0] = Complex(1.0);
    for (Eigen::Index n = 1; n < count; ++n) {
        Vector fn_prime = F.evaluate_with_deriv(z1).second * S.basis_vector(n);
        a[static_cast<std::size_t>(n)] = (z1 - S.node(n)) / c1 * inner(fn_prime, u1);
    }
    double amax = 0.0;
    for (Complex an : a)
        amax = std::max(amax, std::abs(an));
    for (Eigen::Index n = 0; n < count; ++n) {
        if (std::abs(a[static_cast<std::size_t>(n)]) <= 1e-12 * amax)
            throw FactorizationFailure("vanishing series coefficient a_n", S.node(n),
                                       std::abs(a[static_cast<std::size_t>(n)]));
    }

    // A interpolated over the nodes from (z - z_1) F_1(z) / Q(z) limits
    const ScalarEntire& Q = F.Q();
    Matrix a_columns(S.dim(), count);
    a_columns.col(0) = (c1 / Q.deriv(z1)) * u1;
    for (Eigen::Index n = 1; n < count; ++n) {
        Complex zn = S.node(n);
        Vector f1_prime = F.evaluate_with_deriv(zn).second * u1;
        a_columns.col(n) = ((zn - z1) / Q.deriv(zn)) * f1_prime;
    }
    for (Eigen::Index n = 0; n < count; ++n) {
        Vector an_val = a_columns.col(n);
        if (std::abs(inner(an_val, S.basis_vector(n))) <= 1e-12 * an_val.norm())
            throw FactorizationFailure("A(z_n) orthogonal to u_n", S.node(n), an_val.norm());
    }
    std::vector<Complex> distinct_nodes = F.nodes();
    VectorEntire A = VectorEntire::lagrange(distinct_nodes, a_columns);

    // grid verification of (z - z_n) F_n(z) = a_n Q(z) A(z)
    std::vector<Complex> grid = make_grid(F);
    double worst = 0.0;
    Complex worst_point = grid.front();
    for (Eigen::Index n = 0; n < count; ++n) {
        Vector un = S.basis_vector(n);
        double scale = 0.0;
        double defect = 0.0;
        Complex defect_point = grid.front();
        for (Complex z : grid) {
            Vector lhs = (z - S.node(n)) * (F.evaluate(z) * un);
            Vector rhs = a[static_cast<std::size_t>(n)] * Q.eval(z) * A.eval(z);
            scale = std::max(scale, lhs.norm());
            double dz = (lhs - rhs).norm();
            if (dz > defect) {
                defect = dz;
                defect_point = z;
            }
        }
        double rel = defect / std::max(1.0, scale);
        if (rel > worst) {
            worst = rel;
            worst_point = defect_point;
        }
    }
    if (worst > 1e-8)
        throw FactorizationFailure("sampling functions do not share a common factor", worst_point,
                                   worst);

    // coefficient consistency c_n = a_n Q'(z_n) <A(z_n), u_n>
    for (Eigen::Index n = 0; n < count; ++n) {
        Complex zn = S.node(n);
        Complex rebuilt =
            a[static_cast<std::size_t>(n)] * Q.deriv(zn) * inner(A.eval(zn), S.basis_vector(n));
        double res = std::abs(rebuilt - S.c(n)) / std::max(1.0, std::abs(S.c(n)));
        if (res > 1e-9)
            throw FactorizationFailure("coefficient identity violated", zn, res);
    }

    return Factorization{Q, std::move(A), std::move(a)};
}

Vector quasi_lagrange_reconstruct(const Factorization& fact, const SamplingSystem& S,
                                  const SampleSet& samples, Complex z) {
    Vector az = fact.A.eval(z);
    Vector out = Vector::Zero(S.dim());
    for (Eigen::Index n = 0; n < S.count(); ++n) {
        Complex zn = S.node(n);
        Vector un = S.basis_vector(n);
        Complex lag = reg_quotient_at(fact.Q, z, zn) / fact.Q.deriv(zn);
        Complex dir = inner(fact.A.eval(zn), un);
        Complex coeff = inner(samples.at_group(S.kernel().group_of(n)), un);
        out += coeff * lag / dir * az;
    }
    return out;
}

Vector lagrange_reconstruct(const KernelFunction& F, const SampleSet& samples, Complex z) {
    if (F.family() != KernelFamily::Resolvent)
        throw std::invalid_argument("lagrange_reconstruct: requires a resolvent-family kernel");
    const ScalarEntire& Q = F.Q();
    Vector out = Vector::Zero(F.dim());
    for (std::size_t g = 0; g < F.nodes().size(); ++g) {
        Complex zn = F.nodes()[g];
        out += reg_quotient_at(Q, z, zn) / Q.deriv(zn) *
               samples.at_group(static_cast<Eigen::Index>(g));
    }
    return out;
}

std::vector<SweepRow> convergence_sweep(const SamplingSystem& S, const RkhsElement& f,
                                        const std::vector<int>& truncations,
                                        const std::vector<Complex>& grid, bool measure_time) {
    SampleSet samples = take_samples(S.kernel(), f.coeff());
    double fmax = 0.0;
    std::vector<Vector> direct;
    for (Complex z : grid) {
        direct.push_back(f.value(z));
        fmax = std::max(fmax, direct.back().norm());
    }
    const double scale = 1.0 + fmax;

    std::vector<SweepRow> rows;
    for (int N : truncations) {
        auto t0 = std::chrono::steady_clock::now();
        double worst = 0.0, sum = 0.0;
        for (std::size_t j = 0; j < grid.size(); ++j) {
            double err = (kramer_reconstruct(S, samples, grid[j], N) - direct[j]).norm() / scale;
            worst = std::max(worst, err);
            sum += err;
        }
        auto t1 = std::chrono::steady_clock::now();
        SweepRow row;
        row.terms = N;
        row.max_error = worst;
        row.mean_error = grid.empty() ? 0.0 : sum / static_cast<double>(grid.size());
        row.runtime_ms =
            measure_time ? std::chrono::duration<double, std::milli>(t1 - t0).count() : 0.0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace vkramer
