#include "vkramer/rkhs.hpp"

#include <cmath>
#include <stdexcept>

namespace vkramer {

namespace {

// node set plus a handful of generic points, enough to pin down H for every
// family here
std::vector<Complex> kernel_probe_points(const KernelFunction& F) {
    std::vector<Complex> pts = F.nodes();
    GridSpec spec = default_grid_spec(F.nodes());
    double span = spec.real_hi - spec.real_lo;
    for (int j = 0; j < 5; ++j) {
        double t = (j + 0.29) / 5.0;
        pts.emplace_back(spec.real_lo + t * span, 0.611 + 0.173 * j);
    }
    return pts;
}

} // namespace

Subspace common_kernel(const KernelFunction& F, double rank_tol) {
    std::vector<Matrix> ops;
    for (Complex z : kernel_probe_points(F))
        ops.push_back(F.evaluate(z));
    return joint_kernel(ops, rank_tol);
}

RkhsElement::RkhsElement(KernelFunction F, Vector coeff, Vector reduced)
    : kernel_(std::move(F)), coeff_(std::move(coeff)), reduced_(std::move(reduced)) {
    if (coeff_.size() != kernel_.dim() || reduced_.size() != kernel_.dim())
        throw std::invalid_argument("RkhsElement: coefficient dimension mismatch");
}

RkhsElement lift(const KernelFunction& F, const Vector& u) {
    return lift(F, u, common_kernel(F));
}

RkhsElement lift(const KernelFunction& F, const Vector& u, const Subspace& H) {
    if (u.size() != F.dim())
        throw std::invalid_argument("lift: dimension mismatch");
    Vector reduced = u - project(u, H);
    return RkhsElement(F, u, std::move(reduced));
}

Complex inner_H(const RkhsElement& f, const RkhsElement& g) {
    if (!f.kernel().same_system(g.kernel()))
        throw std::invalid_argument("inner_H: elements belong to different kernels");
    return inner(f.reduced(), g.reduced());
}

IsometryReport isometry_check(const KernelFunction& F, const std::vector<Complex>& probes) {
    if (probes.empty())
        throw std::invalid_argument("isometry_check: need at least one probe");
    std::vector<Matrix> ops;
    Matrix adjoints(F.dim(), F.dim() * static_cast<Eigen::Index>(probes.size()));
    for (std::size_t i = 0; i < probes.size(); ++i) {
        Matrix m = F.evaluate(probes[i]);
        adjoints.middleCols(static_cast<Eigen::Index>(i) * F.dim(), F.dim()) = m.adjoint();
        ops.push_back(std::move(m));
    }
    IsometryReport rep;
    rep.joint_kernel_dim = joint_kernel(ops).dim();

    Eigen::JacobiSVD<Matrix> svd(adjoints);
    const auto& sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;
    Eigen::Index rank = 0;
    while (rank < sv.size() && smax > 0.0 && sv(rank) > 1e-10 * smax)
        ++rank;
    rep.adjoint_range_rank = rank;

    bool kernel_trivial = rep.joint_kernel_dim == 0;
    bool range_complete = rep.adjoint_range_rank == F.dim();
    if (kernel_trivial != range_complete)
        throw std::logic_error("isometry_check: rank and kernel reports disagree");
    rep.is_isometry = kernel_trivial;
    return rep;
}

double reproducing_check(const RkhsElement& f, Complex gamma, const Vector& v) {
    const KernelFunction& F = f.kernel();
    RkhsElement kv = lift(F, F.evaluate_adjoint(gamma) * v);
    Complex lhs = inner_H(f, kv);
    Complex rhs = inner(f.value(gamma), v);
    return std::abs(lhs - rhs);
}

MembershipResult membership_solve(const KernelFunction& F,
                                  const std::function<Vector(Complex)>& g,
                                  const std::vector<Complex>& grid) {
    const Eigen::Index d = F.dim();
    if (static_cast<Eigen::Index>(grid.size()) < 1)
        throw std::invalid_argument("membership_solve: empty grid");

    Matrix stacked(static_cast<Eigen::Index>(grid.size()) * d, d);
    Vector rhs(static_cast<Eigen::Index>(grid.size()) * d);
    std::vector<Vector> samples;
    double gmax = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        Matrix m = F.evaluate(grid[j]);
        Vector gj = g(grid[j]);
        gmax = std::max(gmax, gj.norm());
        stacked.middleRows(static_cast<Eigen::Index>(j) * d, d) = m;
        rhs.segment(static_cast<Eigen::Index>(j) * d, d) = gj;
        samples.push_back(std::move(gj));
    }

    Eigen::JacobiSVD<Matrix> svd(stacked, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double smax = sv.size() > 0 ? sv(0) : 0.0;

    MembershipResult result;
    result.rank_deficient = smax == 0.0 || sv(sv.size() - 1) <= 1e-12 * smax;
    result.u = svd.solve(rhs);

    double worst = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j)
        worst = std::max(worst, (F.evaluate(grid[j]) * result.u - samples[j]).norm());
    result.residual = worst / (1.0 + gmax);
    return result;
}

} // namespace vkramer
