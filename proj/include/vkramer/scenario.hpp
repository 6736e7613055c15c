#ifndef VKRAMER_SCENARIO_HPP
#define VKRAMER_SCENARIO_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "vkramer/debranges.hpp"

namespace vkramer {

struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Declarative description of one experiment: the kernel family to build,
/// the scalar function Q, grids, probe parameters, and the RNG seed.
struct Scenario {
    std::string name;
    Eigen::Index dimension = 0;
    std::uint64_t seed = 1;
    double noise = 0.0;

    ScalarEntire build_q() const;
    KernelFunction build_kernel() const;
    std::vector<Complex> grid_points(const KernelFunction& F) const;

    std::string q_variant;              // sin_pi | poly_roots | trunc_product
    std::vector<Complex> q_nodes;
    std::string family;                 // zayed | resolvent | rank_one_quasi | matrix_poly
    std::vector<Complex> kernel_nodes;  // defaults to q_nodes
    std::vector<int> multiplicities;    // resolvent
    std::vector<Complex> c_override;    // rank_one_quasi
    std::optional<Matrix> basis;        // defaults to the standard basis
    std::vector<Matrix> poly_coeffs;    // matrix_poly

    std::optional<GridSpec> grid;
    std::vector<Complex> betas;
    std::vector<int> truncations;       // defaults to 0..d

    std::optional<DeBrangesOperator> debranges;
    std::vector<Complex> debranges_points;

    static Scenario load(const std::string& path);
    static Scenario parse(const std::string& json_text, std::string name);
};

} // namespace vkramer

#endif
