#include <doctest.h>

#include "vkramer/grid.hpp"
#include "vkramer/kernels.hpp"
#include "vkramer/random.hpp"

using namespace vkramer;

namespace {

std::vector<Complex> real_nodes(int lo, int count) {
    std::vector<Complex> out;
    for (int i = 0; i < count; ++i)
        out.emplace_back(lo + i, 0.0);
    return out;
}

KernelFunction make_zayed(int d, int lo = 1) {
    return KernelFunction::zayed(ScalarEntire::poly_from_roots(real_nodes(lo, d)),
                                 real_nodes(lo, d), Matrix::Identity(d, d));
}

KernelFunction make_rank_one(int d) {
    ScalarEntire q = ScalarEntire::poly_from_roots(real_nodes(1, d));
    std::vector<Complex> c;
    for (Complex zn : q.nodes())
        c.push_back(q.deriv(zn));
    return KernelFunction::rank_one_quasi(q, q.nodes(), Matrix::Identity(d, d), c);
}

} // namespace

TEST_CASE("one-dimensional diagonal family is constant") {
    KernelFunction f = KernelFunction::zayed(ScalarEntire::poly_from_roots({Complex(0.0)}),
                                             {Complex(0.0)}, Matrix::Identity(1, 1));
    CHECK(std::abs(f.evaluate(Complex(3.0, 1.0))(0, 0) - 1.0) < 1e-14); // z/z
    CHECK(std::abs(f.evaluate(Complex(0.0))(0, 0) - 1.0) < 1e-14);      // limit Q'(0)
    // gamma = z = 5: K = [Q(5)^2 / 25] = [1]
    CHECK(std::abs(f.reproducing_kernel(Complex(5.0), Complex(5.0))(0, 0) - 1.0) < 1e-14);
}

TEST_CASE("diagonal family values at and off nodes") {
    KernelFunction f = make_zayed(2); // Q = (z-1)(z-2)
    Matrix f0 = f.evaluate(Complex(0.0));
    CHECK(std::abs(f0(0, 0) - (-2.0)) < 1e-13); // Q(0)/(0-1)
    CHECK(std::abs(f0(1, 1) - (-1.0)) < 1e-13); // Q(0)/(0-2)
    CHECK(std::abs(f0(0, 1)) < 1e-15);

    // F(z_m) u_n = 0 for n != m
    for (Eigen::Index m = 0; m < 2; ++m)
        for (Eigen::Index n = 0; n < 2; ++n)
            if (n != m)
                CHECK((f.evaluate(f.nodes()[m]) * f.basis_vector(n)).norm() < 1e-13);
}

TEST_CASE("resolvent family against hand values") {
    ScalarEntire q = ScalarEntire::poly_from_roots(real_nodes(1, 2));
    std::vector<KernelFunction::EigenSpace> spectrum = {
        {Complex(1.0), Matrix::Identity(2, 2).leftCols(1)},
        {Complex(2.0), Matrix::Identity(2, 2).rightCols(1)}};
    KernelFunction f = KernelFunction::resolvent(q, spectrum);

    Matrix f0 = f.evaluate(Complex(0.0)); // Q(0) R_0 = 2 diag(-1, -1/2)
    CHECK(std::abs(f0(0, 0) - (-2.0)) < 1e-13);
    CHECK(std::abs(f0(1, 1) - (-1.0)) < 1e-13);

    // rank of F at a node equals the multiplicity
    Eigen::JacobiSVD<Matrix> svd(f.evaluate(Complex(1.0)));
    CHECK(svd.singularValues()(0) > 1e-6);
    CHECK(svd.singularValues()(1) < 1e-12);
}

TEST_CASE("resolvent family with a multiplicity-two eigenvalue") {
    ScalarEntire q = ScalarEntire::poly_from_roots({Complex(1.0), Complex(2.0)});
    Matrix id = Matrix::Identity(3, 3);
    std::vector<KernelFunction::EigenSpace> spectrum = {{Complex(1.0), id.leftCols(2)},
                                                        {Complex(2.0), id.rightCols(1)}};
    KernelFunction f = KernelFunction::resolvent(q, spectrum);

    // F(1) = Q'(1) * projection onto span{e_1, e_2}
    Matrix expected = q.deriv(Complex(1.0)) * (id.leftCols(2) * id.leftCols(2).adjoint());
    CHECK((f.evaluate(Complex(1.0)) - expected).norm() < 1e-12);
    CHECK(f.multiplicities() == std::vector<int>{2, 1});
    CHECK(f.sample_count() == 3);
    CHECK(f.group_of(1) == 0);
    CHECK(f.group_of(2) == 1);
}

TEST_CASE("rank-one family matches the worked d=2 example") {
    ScalarEntire q = ScalarEntire::poly_from_roots(real_nodes(1, 2));
    std::vector<Complex> c = {q.deriv(Complex(1.0)), q.deriv(Complex(2.0))}; // (-1, 1)
    KernelFunction f =
        KernelFunction::rank_one_quasi(q, real_nodes(1, 2), Matrix::Identity(2, 2), c);

    // A is the Lagrange pair: A(3) = ((3-2)/(1-2), (3-1)/(2-1)) = (-1, 2)
    Vector a3 = f.A().eval(Complex(3.0));
    CHECK(std::abs(a3(0) - (-1.0)) < 1e-13);
    CHECK(std::abs(a3(1) - 2.0) < 1e-13);
    CHECK(std::abs(f.a()[0] - 1.0) < 1e-14);
    CHECK(std::abs(f.a()[1] - 1.0) < 1e-14);

    // F(3)u = Q(3) [<u,e1>/2 + <u,e2>/1] A(3), Q(3) = 2
    Vector u(2);
    u << Complex(0.3, 0.2), Complex(-1.0, 0.4);
    Complex s = u(0) / (Complex(3.0) - 1.0) + u(1) / (Complex(3.0) - 2.0);
    Vector expected = 2.0 * s * a3;
    CHECK((f.evaluate(Complex(3.0)) * u - expected).norm() < 1e-12);

    // node behavior
    CHECK((f.evaluate(Complex(1.0)) * f.basis_vector(0) - c[0] * f.basis_vector(0)).norm() <
          1e-12);
    CHECK((f.evaluate(Complex(1.0)) * f.basis_vector(1)).norm() < 1e-12);
}

TEST_CASE("adjoint evaluation and the adjoint identity at nodes") {
    for (const KernelFunction& f : {make_zayed(3), make_rank_one(3)}) {
        Complex z(0.7, -0.4);
        CHECK((Matrix(f.evaluate(z).adjoint()) - f.evaluate_adjoint(z)).norm() == 0.0);

        // F(z_n)^* u_n = conj(c_n) u_n with c_n = <F(z_n) u_n, u_n>
        for (Eigen::Index n = 0; n < f.sample_count(); ++n) {
            Vector un = f.basis_vector(n);
            Matrix fn = f.evaluate(f.sample_node(n));
            Complex cn = inner(fn * un, un);
            CHECK((fn.adjoint() * un - std::conj(cn) * un).norm() <=
                  1e-10 * std::max(1.0, std::abs(cn)));
        }
    }
}

TEST_CASE("sampling condition certificate over random vectors") {
    RandomEngine rng(71);
    for (const KernelFunction& f : {make_zayed(4), make_rank_one(4)}) {
        std::vector<Complex> c;
        double cmax = 0.0;
        for (Eigen::Index n = 0; n < f.sample_count(); ++n) {
            Vector un = f.basis_vector(n);
            c.push_back(inner(f.evaluate(f.sample_node(n)) * un, un));
            cmax = std::max(cmax, std::abs(c.back()));
        }
        for (Eigen::Index n = 0; n < f.sample_count(); ++n) {
            Matrix fn = f.evaluate(f.sample_node(n));
            Vector un = f.basis_vector(n);
            for (int p = 0; p < 50; ++p) {
                Vector u = rng.cnormal_vector(4);
                double res =
                    (fn * u - c[static_cast<std::size_t>(n)] * inner(u, un) * un).norm();
                CHECK(res <= 1e-10 * u.norm() * cmax);
            }
        }
    }
}

TEST_CASE("reproducing kernel symmetry and positivity") {
    RandomEngine rng(73);
    for (const KernelFunction& f : {make_zayed(3), make_rank_one(3)}) {
        for (int p = 0; p < 20; ++p) {
            Complex g = 2.0 * rng.cnormal();
            Complex z = 2.0 * rng.cnormal();
            Matrix k = f.reproducing_kernel(g, z);
            Matrix sym = f.reproducing_kernel(z, g);
            CHECK((Matrix(k.adjoint()) - sym).norm() <= 1e-12 * std::max(1.0, k.norm()));
        }
        Complex z(0.4, 1.1);
        Matrix diag = f.reproducing_kernel(z, z);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (diag + Matrix(diag.adjoint())));
        CHECK(eig.eigenvalues().minCoeff() >= -1e-10 * std::max(1.0, eig.eigenvalues().maxCoeff()));
    }
}

TEST_CASE("kernel columns at nodes reproduce the sampling functions") {
    KernelFunction f = make_zayed(3);
    for (Eigen::Index n = 0; n < 3; ++n) {
        Vector un = f.basis_vector(n);
        Complex cn = inner(f.evaluate(f.sample_node(n)) * un, un);
        for (Complex z : {Complex(0.2, 0.5), Complex(-1.0, 0.0), Complex(4.0, -2.0)}) {
            Vector lhs = f.reproducing_kernel(f.sample_node(n), z) * un;
            Vector rhs = std::conj(cn) * (f.evaluate(z) * un);
            CHECK((lhs - rhs).norm() <= 1e-10 * (1.0 + rhs.norm()));
        }
    }
}

TEST_CASE("directional derivatives agree: analyticity proxy") {
    RandomEngine rng(79);
    const double h = 1e-6;
    for (const KernelFunction& f : {make_zayed(3), make_rank_one(3),
                                    KernelFunction::matrix_poly({Matrix::Identity(2, 2),
                                                                 Matrix::Ones(2, 2)})}) {
        for (int p = 0; p < 20; ++p) {
            Complex z = 1.5 * rng.cnormal() + Complex(0.0, 0.6);
            Matrix d_re = (f.evaluate(z + h) - f.evaluate(z - h)) / (2.0 * h);
            Matrix d_im =
                (f.evaluate(z + Complex(0, h)) - f.evaluate(z - Complex(0, h))) / Complex(0, 2.0 * h);
            Matrix exact = f.evaluate_with_deriv(z).second;
            double scale = 1.0 + exact.norm();
            CHECK((d_re - exact).norm() <= 1e-8 * scale);
            CHECK((d_im - exact).norm() <= 1e-8 * scale);
        }
    }
}

TEST_CASE("diagonal and resolvent builders agree for simple spectra") {
    ScalarEntire q = ScalarEntire::poly_from_roots(real_nodes(1, 3));
    Matrix id = Matrix::Identity(3, 3);
    KernelFunction za = KernelFunction::zayed(q, real_nodes(1, 3), id);
    std::vector<KernelFunction::EigenSpace> spectrum;
    for (int i = 0; i < 3; ++i)
        spectrum.push_back({Complex(1.0 + i), id.middleCols(i, 1)});
    KernelFunction re = KernelFunction::resolvent(q, spectrum);

    for (Complex z : make_grid(za)) {
        bool near_node = false;
        for (Complex n : za.nodes())
            near_node = near_node || std::abs(z - n) < 1e-3;
        if (near_node)
            continue;
        Matrix a = za.evaluate(z);
        Matrix b = re.evaluate(z);
        CHECK((a - b).norm() <= 1e-12 * std::max(1.0, a.norm()));
    }
}

TEST_CASE("vector entire functions") {
    Matrix cols(2, 2);
    cols << Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0);
    VectorEntire a = VectorEntire::lagrange({Complex(1.0), Complex(2.0)}, cols);
    CHECK((a.eval(Complex(1.0)) - cols.col(0)).norm() < 1e-14);
    CHECK((a.eval(Complex(2.0)) - cols.col(1)).norm() < 1e-14);

    // derivative against finite differences
    const double h = 1e-6;
    Complex z(0.4, 0.7);
    Vector fd = (a.eval(z + h) - a.eval(z - h)) / (2.0 * h);
    CHECK((a.eval_with_deriv(z).second - fd).norm() < 1e-8);

    Matrix mono(1, 3);
    mono << Complex(1.0), Complex(2.0), Complex(3.0); // 1 + 2z + 3z^2
    VectorEntire m = VectorEntire::monomial(mono);
    CHECK(std::abs(m.eval(Complex(2.0))(0) - 17.0) < 1e-13);
    CHECK(std::abs(m.eval_with_deriv(Complex(2.0)).second(0) - 14.0) < 1e-13);
}

TEST_CASE("builder guards") {
    ScalarEntire q = ScalarEntire::poly_from_roots(real_nodes(1, 2));
    Matrix id = Matrix::Identity(2, 2);
    CHECK_THROWS_AS(KernelFunction::zayed(q, real_nodes(1, 3), id), std::invalid_argument);
    CHECK_THROWS_AS(KernelFunction::zayed(q, {Complex(1.0), Complex(9.0)}, id),
                    std::invalid_argument); // 9 is not a zero of Q
    Matrix skew = id;
    skew(0, 0) = Complex(2.0);
    CHECK_THROWS_AS(KernelFunction::zayed(q, real_nodes(1, 2), skew), std::invalid_argument);

    CHECK_THROWS_AS(
        KernelFunction::resolvent(q, {{Complex(1.0, 0.5), id}}), std::invalid_argument);
    CHECK_THROWS_AS(
        KernelFunction::rank_one_quasi(q, real_nodes(1, 2), id, {Complex(0.0), Complex(1.0)}),
        std::invalid_argument);
    CHECK_THROWS_AS(KernelFunction::matrix_poly({}), std::invalid_argument);
}
