#include "vkramer/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace vkramer {

GridSpec default_grid_spec(const std::vector<Complex>& nodes) {
    if (nodes.empty())
        return GridSpec{};
    double lo = nodes.front().real(), hi = nodes.front().real(), rad = 0.0;
    for (Complex n : nodes) {
        lo = std::min(lo, n.real());
        hi = std::max(hi, n.real());
        rad = std::max(rad, std::abs(n));
    }
    return GridSpec{lo - 2.0, hi + 2.0, 20, rad + 3.0};
}

std::vector<Complex> make_grid(const GridSpec& spec) {
    if (spec.count < 1)
        throw std::invalid_argument("make_grid: count must be positive");
    std::vector<Complex> pts;
    pts.reserve(2 * static_cast<std::size_t>(spec.count));
    for (int i = 0; i < spec.count; ++i) {
        double t = spec.count == 1 ? 0.5 : static_cast<double>(i) / (spec.count - 1);
        pts.emplace_back(spec.real_lo + t * (spec.real_hi - spec.real_lo), 0.0);
    }
    for (int i = 0; i < spec.count; ++i) {
        // offset angle keeps circle points off the real axis and the nodes
        double theta = 2.0 * std::numbers::pi * (i + 0.37) / spec.count;
        pts.emplace_back(spec.circle_radius * std::cos(theta), spec.circle_radius * std::sin(theta));
    }
    return pts;
}

std::vector<Complex> make_grid(const KernelFunction& F) {
    return make_grid(default_grid_spec(F.nodes()));
}

std::vector<Complex> grid_excluding(const std::vector<Complex>& grid,
                                    const std::vector<Complex>& centers, double radius) {
    std::vector<Complex> out;
    for (Complex z : grid) {
        bool keep = true;
        for (Complex c : centers)
            if (std::abs(z - c) <= radius) { keep = false; break; }
        if (keep)
            out.push_back(z);
    }
    return out;
}

} // namespace vkramer
