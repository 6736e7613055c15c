#include "vkramer/scenario.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace vkramer {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw SchemaError("scenario field '" + where + "': " + what);
}

Complex parse_complex(const json& j, const std::string& where) {
    if (j.is_number())
        return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    fail(where, "expected a number or a [re, im] pair");
}

std::vector<Complex> parse_complex_list(const json& j, const std::string& where) {
    if (!j.is_array())
        fail(where, "expected an array");
    std::vector<Complex> out;
    for (std::size_t k = 0; k < j.size(); ++k)
        out.push_back(parse_complex(j[k], where + "[" + std::to_string(k) + "]"));
    return out;
}

Matrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        fail(where, "expected a non-empty array of rows");
    const std::size_t rows = j.size();
    std::size_t cols = 0;
    Matrix m;
    for (std::size_t r = 0; r < rows; ++r) {
        auto row = parse_complex_list(j[r], where + "[" + std::to_string(r) + "]");
        if (r == 0) {
            cols = row.size();
            if (cols == 0)
                fail(where, "rows must be non-empty");
            m.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
        } else if (row.size() != cols) {
            fail(where, "rows have inconsistent lengths");
        }
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = row[c];
    }
    return m;
}

const json& require(const json& j, const std::string& key, const std::string& where) {
    auto it = j.find(key);
    if (it == j.end())
        fail(where.empty() ? key : where + "." + key, "missing");
    return *it;
}

EntireOperator parse_entire_operator(const json& j, const std::string& where,
                                     Eigen::Index dimension) {
    if (!j.is_object())
        fail(where, "expected an object");
    std::string type = require(j, "type", where).get<std::string>();
    if (type == "scalar_exp") {
        Complex amp = j.contains("amp") ? parse_complex(j["amp"], where + ".amp") : Complex(1.0);
        Complex rate = parse_complex(require(j, "rate", where), where + ".rate");
        return EntireOperator::scalar_exp(amp, rate, dimension);
    }
    if (type == "matrix_poly") {
        const json& cj = require(j, "coeffs", where);
        if (!cj.is_array() || cj.empty())
            fail(where + ".coeffs", "expected a non-empty array of matrices");
        std::vector<Matrix> coeffs;
        for (std::size_t k = 0; k < cj.size(); ++k)
            coeffs.push_back(parse_matrix(cj[k], where + ".coeffs[" + std::to_string(k) + "]"));
        return EntireOperator::matrix_poly(std::move(coeffs));
    }
    fail(where + ".type", "unknown operator type '" + type + "'");
}

} // namespace

Scenario Scenario::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw SchemaError("cannot open scenario file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string name = path;
    if (auto slash = name.find_last_of('/'); slash != std::string::npos)
        name = name.substr(slash + 1);
    if (auto dot = name.find_last_of('.'); dot != std::string::npos)
        name = name.substr(0, dot);
    return parse(buf.str(), name);
}

Scenario Scenario::parse(const std::string& json_text, std::string name) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw SchemaError(std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!j.is_object())
        throw SchemaError("scenario must be a JSON object");

    Scenario s;
    s.name = std::move(name);
    if (j.contains("name") && j["name"].is_string())
        s.name = j["name"].get<std::string>();

    const json& dj = require(j, "dimension", "");
    if (!dj.is_number_integer() || dj.get<long long>() < 1)
        fail("dimension", "expected a positive integer");
    s.dimension = dj.get<Eigen::Index>();

    if (j.contains("seed")) {
        if (!j["seed"].is_number_unsigned() && !j["seed"].is_number_integer())
            fail("seed", "expected an integer");
        s.seed = j["seed"].get<std::uint64_t>();
    }
    if (j.contains("noise")) {
        if (!j["noise"].is_number() || j["noise"].get<double>() < 0.0)
            fail("noise", "expected a non-negative number");
        s.noise = j["noise"].get<double>();
    }

    const json& qj = require(j, "Q", "");
    s.q_variant = require(qj, "variant", "Q").get<std::string>();
    if (s.q_variant != "sin_pi" && s.q_variant != "poly_roots" && s.q_variant != "trunc_product")
        fail("Q.variant", "expected sin_pi, poly_roots, or trunc_product");
    s.q_nodes = parse_complex_list(require(qj, "nodes", "Q"), "Q.nodes");
    if (s.q_nodes.empty())
        fail("Q.nodes", "at least one node required");

    const json& kj = require(j, "kernel", "");
    s.family = require(kj, "family", "kernel").get<std::string>();
    if (s.family != "zayed" && s.family != "resolvent" && s.family != "rank_one_quasi" &&
        s.family != "matrix_poly")
        fail("kernel.family", "unknown kernel family '" + s.family + "'");
    s.kernel_nodes =
        kj.contains("nodes") ? parse_complex_list(kj["nodes"], "kernel.nodes") : s.q_nodes;
    if (kj.contains("multiplicities")) {
        if (!kj["multiplicities"].is_array())
            fail("kernel.multiplicities", "expected an array of positive integers");
        for (const auto& mj : kj["multiplicities"]) {
            if (!mj.is_number_integer() || mj.get<int>() < 1)
                fail("kernel.multiplicities", "expected an array of positive integers");
            s.multiplicities.push_back(mj.get<int>());
        }
    }
    if (kj.contains("c"))
        s.c_override = parse_complex_list(kj["c"], "kernel.c");
    if (kj.contains("basis")) {
        Matrix b = parse_matrix(kj["basis"], "kernel.basis");
        if (b.rows() != s.dimension)
            fail("kernel.basis", "row count must equal the dimension");
        s.basis = std::move(b);
    }
    if (kj.contains("coefficients")) {
        const json& cj = kj["coefficients"];
        if (!cj.is_array() || cj.empty())
            fail("kernel.coefficients", "expected a non-empty array of matrices");
        for (std::size_t k = 0; k < cj.size(); ++k)
            s.poly_coeffs.push_back(
                parse_matrix(cj[k], "kernel.coefficients[" + std::to_string(k) + "]"));
    }
    if (s.family == "matrix_poly" && s.poly_coeffs.empty())
        fail("kernel.coefficients", "required for the matrix_poly family");

    if (j.contains("grid")) {
        const json& gj = j["grid"];
        GridSpec g;
        const json& span = require(gj, "real_span", "grid");
        if (!span.is_array() || span.size() != 2 || !span[0].is_number() || !span[1].is_number())
            fail("grid.real_span", "expected [lo, hi]");
        g.real_lo = span[0].get<double>();
        g.real_hi = span[1].get<double>();
        if (!(g.real_lo < g.real_hi))
            fail("grid.real_span", "lo must be below hi");
        const json& cnt = require(gj, "count", "grid");
        if (!cnt.is_number_integer() || cnt.get<int>() < 2)
            fail("grid.count", "expected an integer >= 2");
        g.count = cnt.get<int>();
        const json& rad = require(gj, "circle_radius", "grid");
        if (!rad.is_number() || rad.get<double>() <= 0.0)
            fail("grid.circle_radius", "expected a positive number");
        g.circle_radius = rad.get<double>();
        s.grid = g;
    }

    if (j.contains("betas"))
        s.betas = parse_complex_list(j["betas"], "betas");
    if (j.contains("truncations")) {
        if (!j["truncations"].is_array())
            fail("truncations", "expected an array of non-negative integers");
        for (const auto& tj : j["truncations"]) {
            if (!tj.is_number_integer() || tj.get<int>() < 0)
                fail("truncations", "expected an array of non-negative integers");
            s.truncations.push_back(tj.get<int>());
        }
    }
    if (s.truncations.empty())
        for (int t = 0; t <= static_cast<int>(s.dimension); ++t)
            s.truncations.push_back(t);

    if (j.contains("debranges")) {
        const json& bj = j["debranges"];
        auto component = [&](const char* name, const char* alt) -> const json& {
            if (bj.contains(name))
                return bj[name];
            if (bj.contains(alt))
                return bj[alt];
            fail(std::string("debranges.") + name, "missing");
        };
        DeBrangesOperator op{
            parse_entire_operator(component("E_minus", "e_minus"), "debranges.E_minus",
                                  s.dimension),
            parse_entire_operator(component("E_plus", "e_plus"), "debranges.E_plus",
                                  s.dimension),
            std::nullopt};
        if (bj.contains("beta"))
            op.beta_star = parse_complex(bj["beta"], "debranges.beta");
        s.debranges = std::move(op);
        if (bj.contains("points"))
            s.debranges_points = parse_complex_list(bj["points"], "debranges.points");
    }
    return s;
}

ScalarEntire Scenario::build_q() const {
    if (q_variant == "sin_pi")
        return ScalarEntire::sin_pi(q_nodes);
    if (q_variant == "poly_roots")
        return ScalarEntire::poly_from_roots(q_nodes);
    return ScalarEntire::truncated_product(q_nodes);
}

KernelFunction Scenario::build_kernel() const {
    Matrix b;
    if (basis) {
        b = *basis;
    } else {
        b = Matrix::Identity(dimension, dimension);
    }

    if (family == "matrix_poly") {
        for (const Matrix& m : poly_coeffs)
            if (m.rows() != dimension || m.cols() != dimension)
                fail("kernel.coefficients", "matrices must be dimension x dimension");
        return KernelFunction::matrix_poly(poly_coeffs);
    }

    try {
        ScalarEntire q = build_q();
        if (family == "zayed") {
            if (b.cols() < static_cast<Eigen::Index>(kernel_nodes.size()))
                fail("kernel.basis", "need one basis vector per node");
            return KernelFunction::zayed(
                q, kernel_nodes, b.leftCols(static_cast<Eigen::Index>(kernel_nodes.size())));
        }
        if (family == "resolvent") {
            std::vector<int> mult = multiplicities;
            if (mult.empty())
                mult.assign(kernel_nodes.size(), 1);
            if (mult.size() != kernel_nodes.size())
                fail("kernel.multiplicities", "need one entry per node");
            std::vector<KernelFunction::EigenSpace> spectrum;
            Eigen::Index col = 0;
            for (std::size_t n = 0; n < kernel_nodes.size(); ++n) {
                if (col + mult[n] > b.cols())
                    fail("kernel.multiplicities", "total multiplicity exceeds the basis size");
                spectrum.push_back({kernel_nodes[n], b.middleCols(col, mult[n])});
                col += mult[n];
            }
            return KernelFunction::resolvent(q, std::move(spectrum));
        }
        // rank_one_quasi
        if (b.cols() < static_cast<Eigen::Index>(kernel_nodes.size()))
            fail("kernel.basis", "need one basis vector per node");
        std::vector<Complex> c = c_override;
        if (c.empty())
            for (Complex zn : kernel_nodes)
                c.push_back(q.deriv(zn));
        if (c.size() != kernel_nodes.size())
            fail("kernel.c", "need one coefficient per node");
        return KernelFunction::rank_one_quasi(
            q, kernel_nodes, b.leftCols(static_cast<Eigen::Index>(kernel_nodes.size())),
            std::move(c));
    } catch (const std::invalid_argument& e) {
        throw SchemaError(std::string("scenario kernel is inconsistent: ") + e.what());
    }
}

std::vector<Complex> Scenario::grid_points(const KernelFunction& F) const {
    if (grid)
        return make_grid(*grid);
    return make_grid(F);
}

} // namespace vkramer
