#ifndef VKRAMER_KERNELS_HPP
#define VKRAMER_KERNELS_HPP

#include <optional>
#include <utility>
#include <vector>

#include "vkramer/hilbert.hpp"
#include "vkramer/scalar_entire.hpp"

namespace vkramer {

/// X-valued entire function, either a combination of Lagrange basis
/// polynomials over a node set or a coordinate-wise monomial polynomial.
class VectorEntire {
public:
    /// A(z) = sum_n ell_n(z) * columns.col(n), where ell_n is the Lagrange
    /// basis polynomial of `nodes`. A(z_n) = columns.col(n) exactly.
    static VectorEntire lagrange(std::vector<Complex> nodes, Matrix columns);

    /// A(z) = coeffs * (1, z, z^2, ...)^T.
    static VectorEntire monomial(Matrix coeffs);

    Eigen::Index dim() const;
    Vector eval(Complex z) const;
    std::pair<Vector, Vector> eval_with_deriv(Complex z) const;

private:
    VectorEntire() = default;

    bool lagrange_form_ = false;
    std::vector<Complex> nodes_;
    Matrix columns_; // lagrange: d x n; monomial: d x (deg+1)
};

enum class KernelFamily { Zayed, Resolvent, RankOneQuasi, MatrixPoly };

/// Operator-valued entire function z -> F(z), the object every construction
/// of the library is built from. Immutable after construction.
class KernelFunction {
public:
    struct EigenSpace {
        Complex node;
        Matrix vectors; // d x k_n, orthonormal columns
    };

    /// F(z) = sum_n reg_quotient(Q, z, n) <.,u_n> u_n.
    static KernelFunction zayed(ScalarEntire Q, std::vector<Complex> nodes, Matrix basis);

    /// F(z) = Q(z) (zI - T)^{-1} for symmetric T given by its spectral data.
    static KernelFunction resolvent(ScalarEntire Q, std::vector<EigenSpace> spectrum);

    /// Rank-one family F(z)u = Q(z) (sum_n a_n <u,u_n> / (z - z_n)) A(z),
    /// with A the Lagrange-basis combination A(z_n) = u_n and a_n = c_n / Q'(z_n).
    static KernelFunction rank_one_quasi(ScalarEntire Q, std::vector<Complex> nodes,
                                         Matrix basis, std::vector<Complex> c);

    /// F(z) = sum_k coeffs[k] z^k. Sampling metadata optional.
    static KernelFunction matrix_poly(std::vector<Matrix> coeffs,
                                      std::optional<std::vector<Complex>> nodes = std::nullopt,
                                      std::optional<Matrix> basis = std::nullopt);

    KernelFamily family() const { return family_; }
    Eigen::Index dim() const { return dim_; }
    bool has_sampling_data() const { return basis_.cols() > 0; }

    const ScalarEntire& Q() const;

    /// Distinct nodes, in declaration order.
    const std::vector<Complex>& nodes() const { return nodes_; }
    const std::vector<int>& multiplicities() const { return multiplicities_; }

    /// Flattened sampling metadata: one basis vector per index, nodes
    /// repeated according to multiplicity.
    Eigen::Index sample_count() const { return basis_.cols(); }
    Complex sample_node(Eigen::Index n) const { return nodes_[group_of_[n]]; }
    Eigen::Index group_of(Eigen::Index n) const { return group_of_[n]; }
    Vector basis_vector(Eigen::Index n) const { return basis_.col(n); }
    const Matrix& basis() const { return basis_; }

    const std::vector<Complex>& a() const { return a_; }
    const VectorEntire& A() const;

    Matrix evaluate(Complex z) const;
    Matrix evaluate_adjoint(Complex z) const { return evaluate(z).adjoint(); }
    /// {F(z), F'(z)}, the derivative exact via Dual arithmetic.
    std::pair<Matrix, Matrix> evaluate_with_deriv(Complex z) const;

    /// K_gamma(z) = F(z) F(gamma)^*.
    Matrix reproducing_kernel(Complex gamma, Complex z) const;

    /// Loose structural equality, used to guard mixed-kernel operations.
    bool same_system(const KernelFunction& other) const;

private:
    KernelFunction(KernelFamily family, Eigen::Index dim);

    // index of each distinct node inside Q's node list
    void bind_q_indices();

    template <class T>
    T node_quotient(const T& z, Eigen::Index group) const; // reg_quotient against Q

    KernelFamily family_;
    Eigen::Index dim_;
    std::optional<ScalarEntire> q_;
    std::vector<Complex> nodes_;
    std::vector<int> multiplicities_;
    std::vector<Eigen::Index> group_of_;
    std::vector<Eigen::Index> q_index_;
    Matrix basis_; // d x sample_count, columns grouped by node
    std::vector<Complex> a_;
    std::optional<VectorEntire> A_;
    std::vector<Matrix> poly_coeffs_;
};

} // namespace vkramer

#endif
