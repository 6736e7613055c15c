// Scenario-driven experiment runner: loads a JSON scenario, builds the kernel
// family, runs the selected battery, and writes CSV + JSON reports.
//
// Exit codes: 0 all assertions passed, 2 schema/usage error, 3 certification
// failure, 4 battery failure (reports are still written).

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "vkramer/report.hpp"
#include "vkramer/scenario.hpp"

namespace vk = vkramer;
using vk::Complex;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSchema = 2;
constexpr int kExitCertification = 3;
constexpr int kExitBattery = 4;

struct Options {
    std::string command;
    std::string scenario_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::string truncations;
    std::string betas_path;
    std::string beta;
    std::optional<double> noise;
    bool timings = false;
};

struct Context {
    vk::Scenario scenario;
    vk::KernelFunction F;
    std::vector<Complex> grid;
    std::string out_dir;
    bool timings = false;
};

void emit(const Context& ctx, const std::string& battery, const vk::ReportTable& table) {
    std::filesystem::path base = std::filesystem::path(ctx.out_dir) /
                                 (ctx.scenario.name + "_" + battery);
    vk::write_file_atomic(base.string() + ".csv", table.to_csv());
    vk::write_file_atomic(base.string() + ".json", table.to_json());
}

void emit_failure(const Context& ctx, const std::string& battery, const std::string& kind,
                  const std::string& detail, double residual) {
    vk::ReportTable t;
    t.header = {"status", "kind", "detail", "residual"};
    t.add_row({"failed", kind, detail, vk::cell(residual)});
    emit(ctx, battery, t);
}

vk::SamplingSystem certify_system(const Context& ctx) {
    vk::RandomEngine rng(ctx.scenario.seed);
    return vk::certify(ctx.F, rng);
}

// ---- batteries -----------------------------------------------------------

int run_certify(const Context& ctx) {
    vk::ReportTable t;
    t.header = {"n", "node_re", "node_im", "c_re", "c_im"};
    try {
        vk::SamplingSystem S = certify_system(ctx);
        for (Eigen::Index n = 0; n < S.count(); ++n)
            t.add_row({vk::cell(static_cast<long long>(n)), vk::cell(S.node(n).real()),
                       vk::cell(S.node(n).imag()), vk::cell(S.c(n).real()),
                       vk::cell(S.c(n).imag())});
        emit(ctx, "certify", t);
        return kExitOk;
    } catch (const vk::CertificationFailure& e) {
        emit_failure(ctx, "certify", e.identity, "node " + std::to_string(e.node), e.residual);
        std::cerr << "certification failed: " << e.what() << "\n";
        return kExitCertification;
    }
}

int run_reconstruct(const Context& ctx) {
    vk::SamplingSystem S = certify_system(ctx);
    vk::RandomEngine rng(ctx.scenario.seed + 1);
    const double noise = ctx.scenario.noise;

    vk::ReportTable t;
    t.header = {"trial", "max_error", "node_error"};
    bool ok = true;
    for (int trial = 0; trial < 20; ++trial) {
        vk::RkhsElement f = vk::lift(ctx.F, rng.cnormal_vector(ctx.F.dim()));
        vk::SampleSet samples = vk::take_samples(ctx.F, f.coeff());
        for (auto& v : samples.values)
            if (noise > 0.0)
                v += noise * rng.cnormal_vector(v.size());

        double fmax = 0.0;
        for (Complex z : ctx.grid)
            fmax = std::max(fmax, f.value(z).norm());
        double max_err = 0.0;
        for (Complex z : ctx.grid)
            max_err = std::max(max_err,
                               (vk::kramer_reconstruct(S, samples, z) - f.value(z)).norm());
        max_err /= 1.0 + fmax;

        double node_err = 0.0;
        for (std::size_t g = 0; g < ctx.F.nodes().size(); ++g)
            node_err = std::max(
                node_err, (vk::kramer_reconstruct(S, samples, ctx.F.nodes()[g]) -
                           samples.at_group(static_cast<Eigen::Index>(g)))
                                  .norm() /
                              (1.0 + samples.at_group(static_cast<Eigen::Index>(g)).norm()));

        if (noise == 0.0 && (max_err > 1e-9 || node_err > 1e-10))
            ok = false;
        t.add_row({vk::cell(static_cast<long long>(trial)), vk::cell(max_err),
                   vk::cell(node_err)});
    }
    emit(ctx, "reconstruct", t);
    return ok ? kExitOk : kExitBattery;
}

int run_sweep(const Context& ctx) {
    vk::SamplingSystem S = certify_system(ctx);
    vk::RandomEngine rng(ctx.scenario.seed + 2);
    vk::RkhsElement f = vk::lift(ctx.F, rng.cnormal_vector(ctx.F.dim()));

    auto rows = vk::convergence_sweep(S, f, ctx.scenario.truncations, ctx.grid, ctx.timings);
    vk::ReportTable t;
    t.header = {"N", "max_error", "mean_error", "runtime_ms"};
    bool ok = true;
    for (const auto& r : rows) {
        if (r.terms >= static_cast<int>(S.count()) && r.max_error > 1e-9)
            ok = false;
        t.add_row({vk::cell(static_cast<long long>(r.terms)), vk::cell(r.max_error),
                   vk::cell(r.mean_error), vk::cell(r.runtime_ms)});
    }
    emit(ctx, "sweep", t);
    return ok ? kExitOk : kExitBattery;
}

int run_invariance(const Context& ctx) {
    vk::SamplingSystem S = certify_system(ctx);
    std::vector<Complex> betas = ctx.scenario.betas;
    if (betas.empty())
        betas = {Complex(0.5, 0.5), Complex(-1.0, 1.0), Complex(0.0, 2.0)};

    auto reports = vk::invariance_check(S, betas);
    vk::ReportTable t;
    t.header = {"beta_re", "beta_im", "dim_H_beta", "in_space", "max_residual"};
    bool ok = true;
    for (const auto& r : reports) {
        ok = ok && r.all_in_space;
        t.add_row({vk::cell(r.beta.real()), vk::cell(r.beta.imag()),
                   vk::cell(static_cast<long long>(r.dim_h_beta)), vk::cell(r.all_in_space),
                   vk::cell(r.max_residual)});
    }
    emit(ctx, "invariance", t);
    return ok ? kExitOk : kExitBattery;
}

int run_shift(const Context& ctx, Complex beta) {
    vk::SamplingSystem S = certify_system(ctx);
    vk::Subspace hb = vk::h_beta(S, beta);

    vk::ReportTable t;
    t.header = {"k", "beta_re", "beta_im", "in_space", "residual"};
    bool ok = true;
    for (Eigen::Index k = 0; k < hb.dim(); ++k) {
        vk::RkhsElement f = vk::lift(ctx.F, hb.basis.col(k));
        vk::ShiftResult r = vk::backward_shift(S, f, beta);
        ok = ok && r.in_space;
        t.add_row({vk::cell(static_cast<long long>(k)), vk::cell(beta.real()),
                   vk::cell(beta.imag()), vk::cell(r.in_space), vk::cell(r.residual)});
    }
    emit(ctx, "shift", t);
    return ok ? kExitOk : kExitBattery;
}

int run_factorize(const Context& ctx) {
    vk::SamplingSystem S = certify_system(ctx);
    try {
        vk::Factorization fact = vk::extract_factorization(S);
        vk::ReportTable t;
        t.header = {"n", "a_re", "a_im", "coeff_residual"};
        for (Eigen::Index n = 0; n < S.count(); ++n) {
            Complex zn = S.node(n);
            Complex rebuilt = fact.a[static_cast<std::size_t>(n)] * fact.Q.deriv(zn) *
                              vk::inner(fact.A.eval(zn), S.basis_vector(n));
            double res = std::abs(rebuilt - S.c(n)) /
                         std::max(1.0, std::abs(S.c(n)));
            t.add_row({vk::cell(static_cast<long long>(n)),
                       vk::cell(fact.a[static_cast<std::size_t>(n)].real()),
                       vk::cell(fact.a[static_cast<std::size_t>(n)].imag()), vk::cell(res)});
        }
        emit(ctx, "factorize", t);
        return kExitOk;
    } catch (const vk::FactorizationFailure& e) {
        emit_failure(ctx, "factorize", "no-quasi-lagrange-structure", e.what(), e.residual);
        std::cerr << "factorization failed: " << e.what() << "\n";
        return kExitBattery;
    }
}

int run_debranges(const Context& ctx) {
    if (!ctx.scenario.debranges) {
        std::cerr << "scenario has no debranges section\n";
        return kExitSchema;
    }
    const vk::DeBrangesOperator& op = *ctx.scenario.debranges;

    std::vector<Complex> pts = ctx.scenario.debranges_points;
    if (pts.empty())
        pts = {Complex(0.3, 0.2),  Complex(-0.7, 0.5), Complex(1.1, -0.4), Complex(0.0, 1.0),
               Complex(-1.3, 0.9), Complex(0.8, 0.8),  Complex(2.0, 0.1),  Complex(-0.2, -0.6)};
    try {
        op.validate(pts.front());
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid structure pair: " << e.what() << "\n";
        return kExitSchema;
    }

    vk::RandomEngine rng(ctx.scenario.seed + 3);
    std::vector<vk::Vector> dirs;
    for (std::size_t k = 0; k < pts.size(); ++k)
        dirs.push_back(rng.cnormal_vector(op.e_plus.dim()));
    vk::PositivityReport pos = vk::positivity_check(op, pts, dirs);

    vk::ReportTable t;
    t.header = {"check", "value", "pass"};
    bool ok = pos.positive();
    t.add_row({"gram_min_eigenvalue", vk::cell(pos.min_eigenvalue), vk::cell(pos.positive())});
    t.add_row({"gram_max_eigenvalue", vk::cell(pos.max_eigenvalue), vk::cell(true)});

    if (op.beta_star && ctx.F.has_sampling_data()) {
        bool real_nodes = std::all_of(ctx.F.nodes().begin(), ctx.F.nodes().end(),
                                      [](Complex z) { return std::abs(z.imag()) < 1e-12; });
        if (real_nodes) {
            vk::SamplingSystem S = certify_system(ctx);
            vk::SpaceEqualityReport eq = vk::space_equality_battery(S, *op.beta_star);
            bool pass = eq.abstained || eq.consistent;
            ok = ok && pass;
            t.add_row({"space_equality_isometry_defect", vk::cell(eq.isometry_defect),
                       vk::cell(eq.isometry)});
            t.add_row({"space_equality_consistent",
                       eq.abstained ? "abstained" : vk::cell(eq.consistent), vk::cell(pass)});
        }
    }
    emit(ctx, "debranges", t);
    return ok ? kExitOk : kExitBattery;
}

int run_all(const Context& ctx) {
    int worst = kExitOk;
    auto merge = [&](int code) {
        if (code != kExitOk && (worst == kExitOk || code < worst))
            worst = code;
        return code;
    };
    if (merge(run_certify(ctx)) == kExitCertification)
        return worst; // later batteries need a certified system
    merge(run_reconstruct(ctx));
    merge(run_sweep(ctx));
    merge(run_invariance(ctx));
    merge(run_factorize(ctx));
    if (ctx.scenario.debranges)
        merge(run_debranges(ctx));
    return worst;
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
        out.push_back(std::stoi(tok));
        if (comma == std::string::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

} // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"finite-truncation sampling and interpolation experiments"};
    app.add_option("command", opt.command, "battery to run")
        ->required()
        ->check(CLI::IsMember(
            {"certify", "reconstruct", "sweep", "invariance", "shift", "factorize", "debranges",
             "all"}));
    app.add_option("--scenario", opt.scenario_path, "scenario JSON file")->required();
    app.add_option("--out", opt.out_dir, "output directory (default .)");
    app.add_option("--seed", opt.seed, "override the scenario seed");
    app.add_option("--truncations", opt.truncations, "comma-separated term counts for sweep");
    app.add_option("--betas", opt.betas_path, "JSON file with a list of [re, im] shift points");
    app.add_option("--beta", opt.beta, "single shift point re,im for the shift battery");
    app.add_option("--noise", opt.noise, "override the sample noise amplitude");
    app.add_flag("--timings", opt.timings,
                 "record wall-clock sweep timings (off by default so reports are "
                 "byte-reproducible)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitSchema;
    }

    try {
        Context ctx{vk::Scenario::load(opt.scenario_path),
                    vk::KernelFunction::matrix_poly({vk::Matrix::Zero(1, 1)}), {}, "", false};
        if (opt.seed)
            ctx.scenario.seed = *opt.seed;
        if (opt.noise)
            ctx.scenario.noise = *opt.noise;
        if (!opt.truncations.empty())
            ctx.scenario.truncations = parse_int_list(opt.truncations);
        if (!opt.betas_path.empty()) {
            std::ifstream in(opt.betas_path);
            if (!in)
                throw vk::SchemaError("cannot open betas file: " + opt.betas_path);
            std::ostringstream buf;
            buf << in.rdbuf();
            vk::Scenario tmp = vk::Scenario::parse(
                R"({"dimension":1,"Q":{"variant":"poly_roots","nodes":[[0,0]]},)"
                R"("kernel":{"family":"zayed"},"betas":)" + buf.str() + "}", "betas");
            ctx.scenario.betas = tmp.betas;
        }

        ctx.F = ctx.scenario.build_kernel();
        ctx.grid = ctx.scenario.grid_points(ctx.F);
        ctx.out_dir = opt.out_dir;
        if (const char* env = std::getenv("VKRAMER_OUT"); env && *env)
            ctx.out_dir = env;
        ctx.timings = opt.timings;

        if (opt.command == "certify")
            return run_certify(ctx);
        if (opt.command == "reconstruct")
            return run_reconstruct(ctx);
        if (opt.command == "sweep")
            return run_sweep(ctx);
        if (opt.command == "invariance")
            return run_invariance(ctx);
        if (opt.command == "shift") {
            Complex beta(0.5, 0.5);
            if (!ctx.scenario.betas.empty())
                beta = ctx.scenario.betas.front();
            if (!opt.beta.empty()) {
                double re = 0.0, im = 0.0;
                if (std::sscanf(opt.beta.c_str(), "%lf,%lf", &re, &im) < 1)
                    throw vk::SchemaError("--beta expects re,im");
                beta = Complex(re, im);
            }
            return run_shift(ctx, beta);
        }
        if (opt.command == "factorize")
            return run_factorize(ctx);
        if (opt.command == "debranges")
            return run_debranges(ctx);
        return run_all(ctx);
    } catch (const vk::SchemaError& e) {
        std::cerr << "schema error: " << e.what() << "\n";
        return kExitSchema;
    } catch (const vk::CertificationFailure& e) {
        std::cerr << "certification failed: " << e.what() << "\n";
        return kExitCertification;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBattery;
    }
}
