#include "vkramer/scalar_entire.hpp"

#include <cmath>

namespace vkramer {

namespace {

void check_distinct(const std::vector<Complex>& nodes) {
    if (nodes.empty())
        throw std::invalid_argument("ScalarEntire: node list must be nonempty");
    for (std::size_t i = 0; i < nodes.size(); ++i)
        for (std::size_t j = i + 1; j < nodes.size(); ++j)
            if (std::abs(nodes[i] - nodes[j]) == 0.0)
                throw std::invalid_argument("ScalarEntire: nodes must be pairwise distinct");
}

} // namespace

ScalarEntire::ScalarEntire(EntireVariant v, std::vector<Complex> nodes)
    : variant_(v), nodes_(std::move(nodes)) {
    check_distinct(nodes_);
    if (variant_ == EntireVariant::SinPi) {
        for (Complex n : nodes_) {
            if (std::abs(n.imag()) > 1e-12 || std::abs(n.real() - std::round(n.real())) > 1e-12)
                throw std::invalid_argument("ScalarEntire: sin_pi nodes must be integers");
        }
    }
    if (variant_ == EntireVariant::TruncatedProduct) {
        for (Complex n : nodes_)
            if (std::abs(n) == 0.0)
                throw std::invalid_argument("ScalarEntire: truncated_product nodes must be nonzero");
    }
}

ScalarEntire ScalarEntire::sin_pi(std::vector<Complex> nodes) {
    return ScalarEntire(EntireVariant::SinPi, std::move(nodes));
}

ScalarEntire ScalarEntire::poly_from_roots(std::vector<Complex> nodes) {
    return ScalarEntire(EntireVariant::PolyFromRoots, std::move(nodes));
}

ScalarEntire ScalarEntire::truncated_product(std::vector<Complex> nodes) {
    return ScalarEntire(EntireVariant::TruncatedProduct, std::move(nodes));
}

} // namespace vkramer
