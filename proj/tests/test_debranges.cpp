#include <doctest.h>

#include <numbers>

#include "vkramer/debranges.hpp"
#include "vkramer/random.hpp"

using namespace vkramer;

namespace {

const double kPi = std::numbers::pi;

DeBrangesOperator sinc_pair(Eigen::Index dim = 1) {
    return DeBrangesOperator{EntireOperator::scalar_exp(Complex(1.0), Complex(0.0, kPi), dim),
                             EntireOperator::scalar_exp(Complex(1.0), Complex(0.0, -kPi), dim),
                             std::nullopt};
}

Complex sinc_kernel(Complex gamma, Complex z) {
    Complex w = kPi * (z - std::conj(gamma));
    if (std::abs(w) < 1e-8)
        return Complex(1.0);
    return std::sin(w) / w;
}

std::vector<Complex> real_nodes(int lo, int count) {
    std::vector<Complex> out;
    for (int i = 0; i < count; ++i)
        out.emplace_back(lo + i, 0.0);
    return out;
}

} // namespace

TEST_CASE("entire operator handles") {
    EntireOperator e = EntireOperator::scalar_exp(Complex(2.0), Complex(0.5), 2);
    Complex z(0.3, 0.4);
    CHECK((e.eval(z) - 2.0 * std::exp(0.5 * z) * Matrix::Identity(2, 2)).norm() < 1e-13);
    CHECK((e.deriv(z) - 0.5 * e.eval(z)).norm() < 1e-13);

    Matrix a0 = Matrix::Identity(2, 2), a1 = 2.0 * Matrix::Identity(2, 2);
    EntireOperator p = EntireOperator::matrix_poly({a0, a1});
    CHECK((p.eval(Complex(3.0)) - 7.0 * Matrix::Identity(2, 2)).norm() < 1e-14);
    CHECK((p.deriv(Complex(3.0)) - a1).norm() < 1e-14);

    CHECK_THROWS_AS(EntireOperator::matrix_poly({}), std::invalid_argument);
}

TEST_CASE("structure kernel of the exponential pair is the cardinal sine") {
    DeBrangesOperator op = sinc_pair();
    RandomEngine rng(211);
    for (int t = 0; t < 20; ++t) {
        Complex gamma = 1.5 * rng.cnormal();
        Complex z = 1.5 * rng.cnormal();
        Matrix k = db_kernel(op, gamma, z);
        CHECK(std::abs(k(0, 0) - sinc_kernel(gamma, z)) <= 1e-10);
    }
    // diagonal limit
    Complex gamma(0.7, 0.4);
    CHECK(std::abs(db_kernel(op, gamma, std::conj(gamma))(0, 0) - 1.0) <= 1e-12);

    // identical components annihilate the numerator
    DeBrangesOperator flat{EntireOperator::scalar_exp(Complex(1.0), Complex(0.0), 1),
                           EntireOperator::scalar_exp(Complex(1.0), Complex(0.0), 1),
                           std::nullopt};
    CHECK(db_kernel(flat, Complex(0.2, 0.3), Complex(1.0)).norm() <= 1e-14);
}

TEST_CASE("kernel symmetry and continuity at the removable point") {
    DeBrangesOperator op = sinc_pair(2);
    RandomEngine rng(223);
    for (int t = 0; t < 20; ++t) {
        Complex gamma = rng.cnormal();
        Complex z = rng.cnormal();
        Matrix k = db_kernel(op, gamma, z);
        Matrix sym = db_kernel(op, z, gamma);
        CHECK((Matrix(k.adjoint()) - sym).norm() <= 1e-10 * (1.0 + k.norm()));
    }

    Complex gamma(0.4, 0.9);
    Matrix at = db_kernel(op, gamma, std::conj(gamma));
    for (Complex dir : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
        Matrix near = db_kernel(op, gamma, std::conj(gamma) + 1e-7 * dir);
        CHECK((near - at).norm() <= 1e-7);
        // just outside the derivative-form radius the quotient form agrees too
        Matrix outside = db_kernel(op, gamma, std::conj(gamma) + 3e-6 * dir);
        CHECK((outside - at).norm() <= 1e-5);
    }
}

TEST_CASE("Gram positivity of the structure kernel") {
    DeBrangesOperator op = sinc_pair();
    std::vector<Complex> pts;
    std::vector<Vector> dirs;
    for (int i = 0; i < 8; ++i) {
        pts.emplace_back(-2.0 + 0.6 * i, 0.0);
        dirs.push_back(Vector::Ones(1));
    }
    PositivityReport pos = positivity_check(op, pts, dirs);
    CHECK(pos.positive());
    CHECK(pos.min_eigenvalue >= -1e-10 * std::max(1.0, pos.max_eigenvalue));

    // swapping the components flips the kernel sign
    DeBrangesOperator swapped{op.e_plus, op.e_minus, std::nullopt};
    PositivityReport neg = positivity_check(swapped, pts, dirs);
    CHECK(neg.min_eigenvalue < -1e-6 * std::max(1.0, neg.max_eigenvalue));

    // repeated points give a rank-deficient but still nonnegative Gram matrix
    PositivityReport degenerate =
        positivity_check(op, {Complex(0.5), Complex(0.5)}, {Vector::Ones(1), Vector::Ones(1)});
    CHECK(degenerate.min_eigenvalue >= -1e-10 * std::max(1.0, degenerate.max_eigenvalue));

    CHECK_THROWS_AS(positivity_check(op, {Complex(0.0)}, {Vector::Ones(1)}),
                    std::invalid_argument);
}

TEST_CASE("exponential-pair kernel matches the sine-system kernel at node pairs") {
    const int d = 4;
    KernelFunction f = KernelFunction::zayed(ScalarEntire::sin_pi(real_nodes(0, d)),
                                             real_nodes(0, d), Matrix::Identity(d, d));
    DeBrangesOperator op = sinc_pair();
    for (int n = 0; n < d; ++n)
        for (int m = 0; m < d; ++m) {
            Complex zn(n, 0), zm(m, 0);
            Complex lhs = db_kernel(op, zm, zn)(0, 0);
            Complex rhs = inner(f.reproducing_kernel(zm, zn) * f.basis_vector(m),
                                f.basis_vector(n));
            CHECK(std::abs(lhs - rhs) <= 1e-9);
        }
}

TEST_CASE("pair validation") {
    DeBrangesOperator ok = sinc_pair();
    CHECK_NOTHROW(ok.validate(Complex(0.3, 0.4)));

    DeBrangesOperator singular{EntireOperator::scalar_exp(Complex(1.0), Complex(0.0), 2),
                               EntireOperator::matrix_poly({Matrix::Zero(2, 2)}), std::nullopt};
    CHECK_THROWS_AS(singular.validate(Complex(0.0)), std::invalid_argument);

    DeBrangesOperator lower = sinc_pair();
    lower.beta_star = Complex(0.5, -1.0);
    CHECK_THROWS_AS(lower.validate(Complex(0.0)), std::invalid_argument);

    // constant self-adjoint components accept a marked point
    DeBrangesOperator constant{EntireOperator::matrix_poly({2.0 * Matrix::Identity(2, 2)}),
                               EntireOperator::matrix_poly({Matrix::Identity(2, 2)}),
                               Complex(0.0, 1.0)};
    CHECK_NOTHROW(constant.validate(Complex(0.0)));
}

TEST_CASE("space characterization battery") {
    // diagonal sine family: vanishing subspaces at non-real points are trivial,
    // kernels invertible, so every condition holds
    RandomEngine rng(227);
    SamplingSystem diag =
        certify(KernelFunction::zayed(ScalarEntire::sin_pi(real_nodes(0, 3)), real_nodes(0, 3),
                                      Matrix::Identity(3, 3)),
                rng);
    SpaceEqualityReport rep = space_equality_battery(diag, Complex(0.5, 1.0));
    CHECK_FALSE(rep.abstained);
    CHECK(rep.consistent);
    CHECK(rep.invariance_at_beta);
    CHECK(rep.invariance_at_beta_conj);
    CHECK(rep.isometry);

    // resolvent family behaves the same way off the spectrum
    ScalarEntire q = ScalarEntire::poly_from_roots(real_nodes(1, 3));
    Matrix id = Matrix::Identity(3, 3);
    std::vector<KernelFunction::EigenSpace> spectrum;
    for (int i = 0; i < 3; ++i)
        spectrum.push_back({Complex(1.0 + i), id.middleCols(i, 1)});
    SamplingSystem res = certify(KernelFunction::resolvent(q, spectrum), rng);
    SpaceEqualityReport rres = space_equality_battery(res, Complex(0.4, 0.8));
    CHECK(rres.consistent);

    // rank-one family: K_beta(beta) is singular at d >= 2, so the battery
    // reports the conditioning and abstains rather than guessing a verdict
    std::vector<Complex> c;
    for (Complex zn : q.nodes())
        c.push_back(q.deriv(zn));
    SamplingSystem quasi =
        certify(KernelFunction::rank_one_quasi(q, q.nodes(), id, c), rng);
    SpaceEqualityReport rq = space_equality_battery(quasi, Complex(0.5, 1.0));
    CHECK(rq.abstained);
    CHECK(rq.invariance_at_beta);
    CHECK(rq.isometry);

    CHECK_THROWS_AS(space_equality_battery(diag, Complex(0.5, -1.0)), PreconditionViolation);
}
