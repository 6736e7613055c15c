#include <doctest.h>

#include "vkramer/hilbert.hpp"
#include "vkramer/random.hpp"

using namespace vkramer;

namespace {

Vector e(Eigen::Index d, Eigen::Index i) {
    Vector v = Vector::Zero(d);
    v(i) = Complex(1.0);
    return v;
}

} // namespace

TEST_CASE("inner product on coordinate vectors") {
    CHECK(inner(e(2, 0), e(2, 0)) == Complex(1.0));
    CHECK(inner(e(2, 0), e(2, 1)) == Complex(0.0));

    Vector u(2), v(2);
    u << Complex(1.0, 1.0), Complex(0.0);
    v << Complex(0.0, 1.0), Complex(0.0);
    CHECK(inner(u, v) == Complex(1.0, -1.0)); // (1+i) * conj(i)

    CHECK(std::abs(inner(u, v) - std::conj(inner(v, u))) == 0.0);
    CHECK(inner(u, u).imag() == 0.0);
    CHECK(inner(u, u).real() >= 0.0);
    CHECK_THROWS_AS(inner(e(2, 0), e(3, 0)), std::invalid_argument);
}

TEST_CASE("joint kernel of operator lists") {
    Matrix id = Matrix::Identity(2, 2);
    CHECK(joint_kernel({id}).dim() == 0);

    Matrix d10 = Matrix::Zero(2, 2);
    d10(0, 0) = Complex(1.0);
    Matrix zero = Matrix::Zero(2, 2);
    Subspace k = joint_kernel({d10, zero});
    REQUIRE(k.dim() == 1);
    CHECK(std::abs(std::abs(k.basis(1, 0)) - 1.0) < 1e-14); // span{e_2}
    CHECK(std::abs(k.basis(0, 0)) < 1e-14);

    Subspace full = joint_kernel({zero});
    CHECK(full.dim() == 2);

    CHECK_THROWS_AS(joint_kernel({}), std::invalid_argument);
}

TEST_CASE("joint kernel basis annihilates the operators") {
    RandomEngine rng(17);
    const Eigen::Index d = 6;
    const double rank_tol = 1e-10;
    for (int rep = 0; rep < 10; ++rep) {
        // operators sharing a planted kernel direction
        Vector k = rng.cnormal_vector(d);
        k /= k.norm();
        std::vector<Matrix> ops;
        double smax = 0.0;
        Matrix stacked(3 * d, d);
        for (int i = 0; i < 3; ++i) {
            Matrix m(d, d);
            for (Eigen::Index r = 0; r < d; ++r)
                m.row(r) = rng.cnormal_vector(d).transpose();
            m = m - (m * k) * k.adjoint(); // force m k = 0
            stacked.middleRows(i * d, d) = m;
            ops.push_back(std::move(m));
        }
        Eigen::JacobiSVD<Matrix> svd(stacked);
        smax = svd.singularValues()(0);

        Subspace ker = joint_kernel(ops, rank_tol);
        REQUIRE(ker.dim() >= 1);
        for (Eigen::Index c = 0; c < ker.dim(); ++c)
            for (const Matrix& m : ops)
                CHECK((m * ker.basis.col(c)).norm() <= 10.0 * rank_tol * smax);

        // orthonormal basis contract
        Matrix gram = ker.basis.adjoint() * ker.basis;
        CHECK((gram - Matrix::Identity(ker.dim(), ker.dim())).norm() < 1e-12);
    }
}

TEST_CASE("projection onto subspaces") {
    Subspace s1{e(2, 0)};
    Subspace s2{e(2, 1)};
    CHECK((project(e(2, 0), s1) - e(2, 0)).norm() == 0.0);
    CHECK(project(e(2, 0), s2).norm() == 0.0);
    Vector u = e(2, 0) + e(2, 1);
    CHECK((project(u, s1) - e(2, 0)).norm() == 0.0);

    // idempotence
    RandomEngine rng(5);
    Vector w = rng.cnormal_vector(2);
    Vector p = project(w, s1);
    CHECK((project(p, s1) - p).norm() < 1e-15);
}

TEST_CASE("Pythagorean identity for projections") {
    RandomEngine rng(23);
    const Eigen::Index d = 5;
    for (int rep = 0; rep < 20; ++rep) {
        Matrix b(d, 2);
        b.col(0) = rng.cnormal_vector(d);
        b.col(0) /= b.col(0).norm();
        b.col(1) = rng.cnormal_vector(d);
        b.col(1) -= b.col(0) * inner(b.col(1), b.col(0));
        b.col(1) /= b.col(1).norm();
        Subspace s{b};

        Vector u = rng.cnormal_vector(d);
        Vector p = project(u, s);
        double lhs = u.squaredNorm();
        double rhs = p.squaredNorm() + (u - p).squaredNorm();
        CHECK(std::abs(lhs - rhs) <= 1e-10 * lhs);
    }
}

TEST_CASE("adjoint pairing identity on random operators") {
    RandomEngine rng(31);
    const Eigen::Index d = 4;
    Matrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r)
        m.row(r) = rng.cnormal_vector(d).transpose();
    CHECK((Matrix(m.adjoint().adjoint()) - m).norm() == 0.0);
    for (int p = 0; p < 100; ++p) {
        Vector u = rng.cnormal_vector(d);
        Vector v = rng.cnormal_vector(d);
        Complex lhs = inner(m * u, v);
        Complex rhs = inner(u, m.adjoint() * v);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * (std::abs(lhs) + 1.0));
    }
}

TEST_CASE("orthogonal complement") {
    Subspace s{e(3, 1)};
    Subspace c = complement(s);
    REQUIRE(c.dim() == 2);
    CHECK((c.basis.adjoint() * s.basis).norm() < 1e-14);
    Matrix gram = c.basis.adjoint() * c.basis;
    CHECK((gram - Matrix::Identity(2, 2)).norm() < 1e-13);

    CHECK(complement(Subspace::trivial(3)).dim() == 3);
}
