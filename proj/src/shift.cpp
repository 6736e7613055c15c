#include "vkramer/shift.hpp"

#include <cmath>

namespace vkramer {

namespace {

double node_guard(Complex beta) { return 1e-9 * (1.0 + std::abs(beta)); }

// candidate coefficients of f(z) / (z - beta) in the sampling basis
Vector quotient_coefficients(const SamplingSystem& S, const RkhsElement& f, Complex beta) {
    Vector w = Vector::Zero(S.dim());
    for (Eigen::Index n = 0; n < S.count(); ++n) {
        Vector un = S.basis_vector(n);
        Complex zn = S.node(n);
        Complex coeff;
        if (std::abs(zn - beta) > node_guard(beta)) {
            coeff = inner(f.coeff(), un) / (zn - beta);
        } else {
            coeff = inner(f.deriv_value(zn), un) / S.c(n);
        }
        w += coeff * un;
    }
    return w;
}

// worst grid defect of F(.) w against the quotient values of f
double quotient_residual(const SamplingSystem& S, const RkhsElement& f, Complex beta,
                         const Vector& w) {
    const KernelFunction& F = S.kernel();
    std::vector<Complex> pts = grid_excluding(make_grid(F), {beta}, 1e-3 * (1.0 + std::abs(beta)));

    double gmax = 0.0, worst = 0.0;
    std::vector<std::pair<Complex, Vector>> targets;
    for (Complex z : pts) {
        targets.emplace_back(z, Vector(f.value(z) / (z - beta)));
        gmax = std::max(gmax, targets.back().second.norm());
    }
    // the removable point itself, by l'Hopital (f vanishes at beta)
    targets.emplace_back(beta, f.deriv_value(beta));
    gmax = std::max(gmax, targets.back().second.norm());

    for (const auto& [z, g] : targets)
        worst = std::max(worst, (F.evaluate(z) * w - g).norm());
    return worst / (1.0 + gmax);
}

} // namespace

ShiftResult backward_shift(const SamplingSystem& S, const RkhsElement& f, Complex beta) {
    double point_scale = 1.0 + S.kernel().evaluate(beta).norm();
    if (f.value(beta).norm() > 1e-8 * point_scale * std::max(f.norm(), 1e-300))
        throw PreconditionViolation("backward_shift: f does not vanish at beta");

    ShiftResult r;
    r.beta = beta;
    r.output_coeff = quotient_coefficients(S, f, beta);
    r.residual = quotient_residual(S, f, beta, r.output_coeff);
    r.in_space = r.residual <= 1e-8;
    return r;
}

Subspace h_beta(const SamplingSystem& S, Complex beta) {
    const KernelFunction& F = S.kernel();
    Subspace hperp = complement(common_kernel(F));
    if (hperp.dim() == 0)
        return Subspace::trivial(F.dim());

    Matrix map = F.evaluate(beta) * hperp.basis; // d x m
    Eigen::JacobiSVD<Matrix> svd(map, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    // Reference scale includes the node values of F so that a point where F
    // vanishes entirely is seen as a full kernel rather than as full rank.
    double ref = sv.size() > 0 ? sv(0) : 0.0;
    for (Complex zn : F.nodes())
        ref = std::max(ref, F.evaluate(zn).norm());
    if (ref == 0.0)
        return hperp;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > 1e-10 * ref)
        ++rank;
    return Subspace{hperp.basis * svd.matrixV().rightCols(hperp.dim() - rank)};
}

std::vector<BetaReport> invariance_check(const SamplingSystem& S,
                                         const std::vector<Complex>& betas) {
    std::vector<BetaReport> reports;
    Subspace H = common_kernel(S.kernel());
    for (Complex beta : betas) {
        BetaReport rep;
        rep.beta = beta;
        Subspace hb = h_beta(S, beta);
        rep.dim_h_beta = hb.dim();
        for (Eigen::Index k = 0; k < hb.dim(); ++k) {
            RkhsElement f = lift(S.kernel(), hb.basis.col(k), H);
            ShiftResult r = backward_shift(S, f, beta);
            rep.all_in_space = rep.all_in_space && r.in_space;
            rep.max_residual = std::max(rep.max_residual, r.residual);
        }
        reports.push_back(rep);
    }
    return reports;
}

MultResult mult_apply(const SamplingSystem& S, const RkhsElement& f) {
    std::vector<Complex> grid = make_grid(S.kernel());
    MembershipResult m = membership_solve(
        S.kernel(), [&](Complex z) { return Vector(z * f.value(z)); }, grid);
    return MultResult{m.in_space(), m.u, m.residual};
}

bool bijection_check(const SamplingSystem& S, Complex z1, Complex z2) {
    if (std::abs(z1 - z2) <= node_guard(z1))
        throw std::invalid_argument("bijection_check: z1 and z2 must differ");

    const KernelFunction& F = S.kernel();
    Subspace H1 = h_beta(S, z1);
    Subspace H2 = h_beta(S, z2);
    if (H1.dim() != H2.dim())
        return false;
    if (H1.dim() == 0)
        return true;

    Subspace H = common_kernel(F);
    double guard = 1e-3 * (1.0 + std::max(std::abs(z1), std::abs(z2)));
    std::vector<Complex> fwd_grid = grid_excluding(make_grid(F), {z1}, guard);
    std::vector<Complex> back_grid = grid_excluding(make_grid(F), {z2}, guard);

    for (Eigen::Index k = 0; k < H1.dim(); ++k) {
        RkhsElement f = lift(F, H1.basis.col(k), H);
        MembershipResult fwd = membership_solve(
            F, [&](Complex z) { return Vector((z - z2) / (z - z1) * f.value(z)); }, fwd_grid);
        if (!fwd.in_space())
            return false;
        // image must vanish at z2
        double scale = 1.0 + F.evaluate(z2).norm();
        if ((F.evaluate(z2) * fwd.u).norm() > 1e-8 * scale)
            return false;

        RkhsElement g = lift(F, fwd.u, H);
        MembershipResult back = membership_solve(
            F, [&](Complex z) { return Vector((z - z1) / (z - z2) * g.value(z)); }, back_grid);
        if (!back.in_space())
            return false;
        Vector recovered = back.u - project(back.u, H);
        if ((recovered - f.reduced()).norm() > 1e-8 * std::max(1.0, f.reduced().norm()))
            return false;
    }
    return true;
}

IsometryDefect debranges_isometry_check(const SamplingSystem& S, Complex beta) {
    for (Complex zn : S.kernel().nodes())
        if (std::abs(zn.imag()) > 1e-12)
            throw PreconditionViolation("debranges_isometry_check: nodes must be real");
    if (beta.imag() <= 0.0)
        throw PreconditionViolation("debranges_isometry_check: beta must lie in the upper half-plane");

    IsometryDefect out;
    Subspace hb = h_beta(S, beta);
    out.dim_h_beta = hb.dim();
    for (Eigen::Index k = 0; k < hb.dim(); ++k) {
        Vector u = hb.basis.col(k);
        Vector v = Vector::Zero(S.dim());
        for (Eigen::Index n = 0; n < S.count(); ++n) {
            Vector un = S.basis_vector(n);
            v += inner(u, un) / (S.node(n) - beta) * un;
        }
        Vector shifted = u + (beta - std::conj(beta)) * v;
        out.max_norm_defect = std::max(out.max_norm_defect, std::abs(shifted.norm() - u.norm()));
    }
    out.isometric = out.max_norm_defect <= 1e-9;
    return out;
}

} // namespace vkramer
