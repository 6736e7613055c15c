#ifndef VKRAMER_RANDOM_HPP
#define VKRAMER_RANDOM_HPP

#include <cstdint>
#include <random>

#include "vkramer/hilbert.hpp"

namespace vkramer {

/// Seeded generator for reproducible test vectors. Complex-normal variates
/// are produced by an explicit Box-Muller transform so the sequence depends
/// only on the mt19937_64 stream, not on library distribution internals.
class RandomEngine {
public:
    explicit RandomEngine(std::uint64_t seed) : gen_(seed) {}

    double uniform() {
        // in (0, 1]
        return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1p-53;
    }

    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    Complex cnormal() {
        double re = normal();
        double im = normal();
        return Complex(re, im) / std::sqrt(2.0);
    }

    Vector cnormal_vector(Eigen::Index d) {
        Vector v(d);
        for (Eigen::Index i = 0; i < d; ++i)
            v(i) = cnormal();
        return v;
    }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace vkramer

#endif
