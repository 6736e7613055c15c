#include "vkramer/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace vkramer {

namespace {

void check_orthonormal(const Matrix& columns, const char* what, double tol = 1e-10) {
    Matrix gram = columns.adjoint() * columns;
    gram -= Matrix::Identity(columns.cols(), columns.cols());
    if (gram.norm() > tol * std::max<double>(1, columns.cols()))
        throw std::invalid_argument(std::string(what) + ": columns are not orthonormal");
}

} // namespace

// ---------------------------------------------------------------- VectorEntire

VectorEntire VectorEntire::lagrange(std::vector<Complex> nodes, Matrix columns) {
    if (static_cast<Eigen::Index>(nodes.size()) != columns.cols())
        throw std::invalid_argument("VectorEntire::lagrange: node/column count mismatch");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (std::abs(nodes[i] - nodes[j]) == 0.0)
                throw std::invalid_argument("VectorEntire::lagrange: repeated nodes");
    VectorEntire a;
    a.lagrange_form_ = true;
    a.nodes_ = std::move(nodes);
    a.columns_ = std::move(columns);
    return a;
}

VectorEntire VectorEntire::monomial(Matrix coeffs) {
    if (coeffs.cols() == 0)
        throw std::invalid_argument("VectorEntire::monomial: empty coefficient list");
    VectorEntire a;
    a.columns_ = std::move(coeffs);
    return a;
}

Eigen::Index VectorEntire::dim() const { return columns_.rows(); }

Vector VectorEntire::eval(Complex z) const { return eval_with_deriv(z).first; }

std::pair<Vector, Vector> VectorEntire::eval_with_deriv(Complex z) const {
    Vector val = Vector::Zero(columns_.rows());
    Vector der = Vector::Zero(columns_.rows());
    if (lagrange_form_) {
        const std::size_t n = nodes_.size();
        for (std::size_t k = 0; k < n; ++k) {
            Dual ell(Complex(1.0));
            Complex denom(1.0);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                ell = ell * (Dual::seed(z) - nodes_[j]);
                denom *= nodes_[k] - nodes_[j];
            }
            val += (ell.v / denom) * columns_.col(k);
            der += (ell.d / denom) * columns_.col(k);
        }
    } else {
        // Horner over the coefficient columns, highest degree first
        Dual zz = Dual::seed(z);
        std::vector<Dual> acc(static_cast<std::size_t>(columns_.rows()));
        for (Eigen::Index i = 0; i < columns_.rows(); ++i) {
            Dual h(columns_(i, columns_.cols() - 1));
            for (Eigen::Index k = columns_.cols() - 2; k >= 0; --k)
                h = h * zz + columns_(i, k);
            val(i) = h.v;
            der(i) = h.d;
        }
    }
    return {val, der};
}

// -------------------------------------------------------------- KernelFunction

KernelFunction::KernelFunction(KernelFamily family, Eigen::Index dim)
    : family_(family), dim_(dim) {}

const ScalarEntire& KernelFunction::Q() const {
    if (!q_)
        throw std::logic_error("KernelFunction: family carries no scalar function Q");
    return *q_;
}

const VectorEntire& KernelFunction::A() const {
    if (!A_)
        throw std::logic_error("KernelFunction: family carries no vector function A");
    return *A_;
}

void KernelFunction::bind_q_indices() {
    q_index_.clear();
    const auto& qn = q_->nodes();
    for (Complex node : nodes_) {
        std::size_t found = qn.size();
        for (std::size_t i = 0; i < qn.size(); ++i) {
            if (std::abs(qn[i] - node) <= 1e-9 * (1.0 + std::abs(node))) {
                found = i;
                break;
            }
        }
        if (found == qn.size())
            throw std::invalid_argument("KernelFunction: node is not a declared zero of Q");
        q_index_.push_back(static_cast<Eigen::Index>(found));
    }
}

KernelFunction KernelFunction::zayed(ScalarEntire Q, std::vector<Complex> nodes, Matrix basis) {
    const Eigen::Index d = basis.rows();
    if (static_cast<Eigen::Index>(nodes.size()) != d || basis.cols() != d)
        throw std::invalid_argument("zayed: need |nodes| = |basis| = d");
    check_orthonormal(basis, "zayed basis");
    KernelFunction f(KernelFamily::Zayed, d);
    f.q_ = std::move(Q);
    f.nodes_ = std::move(nodes);
    f.multiplicities_.assign(f.nodes_.size(), 1);
    f.basis_ = std::move(basis);
    for (Eigen::Index n = 0; n < d; ++n)
        f.group_of_.push_back(n);
    f.bind_q_indices();
    return f;
}

KernelFunction KernelFunction::resolvent(ScalarEntire Q, std::vector<EigenSpace> spectrum) {
    if (spectrum.empty())
        throw std::invalid_argument("resolvent: empty spectrum");
    const Eigen::Index d = spectrum.front().vectors.rows();
    Eigen::Index total = 0;
    for (const auto& s : spectrum) {
        if (std::abs(s.node.imag()) > 1e-12)
            throw std::invalid_argument("resolvent: nodes of a symmetric operator must be real");
        total += s.vectors.cols();
    }
    if (total != d)
        throw std::invalid_argument("resolvent: multiplicities must sum to the dimension");

    KernelFunction f(KernelFamily::Resolvent, d);
    f.q_ = std::move(Q);
    f.basis_.resize(d, d);
    Eigen::Index col = 0;
    for (std::size_t g = 0; g < spectrum.size(); ++g) {
        f.nodes_.push_back(spectrum[g].node);
        f.multiplicities_.push_back(static_cast<int>(spectrum[g].vectors.cols()));
        for (Eigen::Index i = 0; i < spectrum[g].vectors.cols(); ++i) {
            f.basis_.col(col++) = spectrum[g].vectors.col(i);
            f.group_of_.push_back(static_cast<Eigen::Index>(g));
        }
    }
    check_orthonormal(f.basis_, "resolvent eigenvectors");
    f.bind_q_indices();
    return f;
}

KernelFunction KernelFunction::rank_one_quasi(ScalarEntire Q, std::vector<Complex> nodes,
                                              Matrix basis, std::vector<Complex> c) {
    const Eigen::Index d = basis.rows();
    if (static_cast<Eigen::Index>(nodes.size()) != d || basis.cols() != d)
        throw std::invalid_argument("rank_one_quasi: need |nodes| = |basis| = d");
    if (static_cast<Eigen::Index>(c.size()) != d)
        throw std::invalid_argument("rank_one_quasi: need one coefficient c_n per node");
    check_orthonormal(basis, "rank_one_quasi basis");

    KernelFunction f(KernelFamily::RankOneQuasi, d);
    f.q_ = std::move(Q);
    f.nodes_ = nodes;
    f.multiplicities_.assign(nodes.size(), 1);
    f.basis_ = basis;
    for (Eigen::Index n = 0; n < d; ++n)
        f.group_of_.push_back(n);
    f.bind_q_indices();
    for (Eigen::Index n = 0; n < d; ++n) {
        if (std::abs(c[static_cast<std::size_t>(n)]) == 0.0)
            throw std::invalid_argument("rank_one_quasi: c_n must be nonzero");
        Complex qp = f.q_->deriv(nodes[static_cast<std::size_t>(n)]);
        f.a_.push_back(c[static_cast<std::size_t>(n)] / qp);
    }
    f.A_ = VectorEntire::lagrange(std::move(nodes), std::move(basis));
    return f;
}

KernelFunction KernelFunction::matrix_poly(std::vector<Matrix> coeffs,
                                           std::optional<std::vector<Complex>> nodes,
                                           std::optional<Matrix> basis) {
    if (coeffs.empty())
        throw std::invalid_argument("matrix_poly: empty coefficient list");
    const Eigen::Index d = coeffs.front().rows();
    for (const Matrix& m : coeffs)
        if (m.rows() != d || m.cols() != d)
            throw std::invalid_argument("matrix_poly: coefficient matrices must be d x d");
    KernelFunction f(KernelFamily::MatrixPoly, d);
    f.poly_coeffs_ = std::move(coeffs);
    if (nodes && basis) {
        if (static_cast<Eigen::Index>(nodes->size()) != basis->cols() || basis->rows() != d)
            throw std::invalid_argument("matrix_poly: inconsistent sampling metadata");
        check_orthonormal(*basis, "matrix_poly basis");
        f.nodes_ = std::move(*nodes);
        f.multiplicities_.assign(f.nodes_.size(), 1);
        f.basis_ = std::move(*basis);
        for (Eigen::Index n = 0; n < f.basis_.cols(); ++n)
            f.group_of_.push_back(n);
    } else {
        f.basis_ = Matrix(d, 0);
    }
    return f;
}

template <class T>
T KernelFunction::node_quotient(const T& z, Eigen::Index group) const {
    return q_->reg_quotient_t(z, static_cast<std::size_t>(q_index_[group]));
}

Matrix KernelFunction::evaluate(Complex z) const { return evaluate_with_deriv(z).first; }

std::pair<Matrix, Matrix> KernelFunction::evaluate_with_deriv(Complex z) const {
    Matrix val = Matrix::Zero(dim_, dim_);
    Matrix der = Matrix::Zero(dim_, dim_);
    switch (family_) {
    case KernelFamily::Zayed:
    case KernelFamily::Resolvent: {
        Eigen::Index col = 0;
        for (std::size_t g = 0; g < nodes_.size(); ++g) {
            Dual q = node_quotient(Dual::seed(z), static_cast<Eigen::Index>(g));
            const int k = multiplicities_[g];
            Matrix block = basis_.middleCols(col, k);
            Matrix proj = block * block.adjoint();
            val += q.v * proj;
            der += q.d * proj;
            col += k;
        }
        break;
    }
    case KernelFamily::RankOneQuasi: {
        Eigen::RowVectorXcd row_v = Eigen::RowVectorXcd::Zero(dim_);
        Eigen::RowVectorXcd row_d = Eigen::RowVectorXcd::Zero(dim_);
        for (Eigen::Index n = 0; n < dim_; ++n) {
            Dual q = a_[static_cast<std::size_t>(n)] * node_quotient(Dual::seed(z), n);
            row_v += q.v * basis_.col(n).adjoint();
            row_d += q.d * basis_.col(n).adjoint();
        }
        auto [av, ad] = A_->eval_with_deriv(z);
        val = av * row_v;
        der = ad * row_v + av * row_d;
        break;
    }
    case KernelFamily::MatrixPoly: {
        // Horner, with the derivative accumulated alongside
        val = poly_coeffs_.back();
        for (std::size_t k = poly_coeffs_.size() - 1; k-- > 0;) {
            der = der * z + val;
            val = val * z + poly_coeffs_[k];
        }
        break;
    }
    }
    return {val, der};
}

Matrix KernelFunction::reproducing_kernel(Complex gamma, Complex z) const {
    return evaluate(z) * evaluate_adjoint(gamma);
}

bool KernelFunction::same_system(const KernelFunction& other) const {
    if (family_ != other.family_ || dim_ != other.dim_) return false;
    if (nodes_.size() != other.nodes_.size()) return false;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        if (std::abs(nodes_[i] - other.nodes_[i]) > 1e-12 * (1.0 + std::abs(nodes_[i])))
            return false;
    if (basis_.cols() != other.basis_.cols()) return false;
    if (basis_.cols() > 0 && (basis_ - other.basis_).norm() > 1e-12 * basis_.norm() + 1e-14)
        return false;
    return true;
}

} // namespace vkramer
