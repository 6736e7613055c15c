#ifndef VKRAMER_GRID_HPP
#define VKRAMER_GRID_HPP

#include <optional>
#include <vector>

#include "vkramer/kernels.hpp"

namespace vkramer {

/// Test-grid layout: `count` points on a real interval and `count` points on
/// a circle about the origin.
struct GridSpec {
    double real_lo = -2.0;
    double real_hi = 2.0;
    int count = 20;
    double circle_radius = 3.0;
};

/// Spec derived from the node set: real span nodes +/- 2, circle radius
/// max|z_n| + 3.
GridSpec default_grid_spec(const std::vector<Complex>& nodes);

std::vector<Complex> make_grid(const GridSpec& spec);

/// Default grid for a kernel's node set.
std::vector<Complex> make_grid(const KernelFunction& F);

/// Copy of `grid` with every point within `radius` of an excluded center
/// removed.
std::vector<Complex> grid_excluding(const std::vector<Complex>& grid,
                                    const std::vector<Complex>& centers, double radius);

} // namespace vkramer

#endif
