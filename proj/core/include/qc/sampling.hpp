#pragma once

// Seeded small-rational sample points. The reduction from raw 64-bit draws is
// done by hand so the sequence is identical across standard libraries.

#include "qc/field.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace qc {

class PointSampler {
public:
    PointSampler(std::uint64_t seed, int bound) : rng_(seed), bound_(bound < 1 ? 1 : bound) {}

    /// p/q with |p| <= bound and 1 <= q <= bound.
    Rational next_rational() {
        const auto span = static_cast<std::uint64_t>(2 * bound_ + 1);
        const auto num = static_cast<long>(rng_() % span) - bound_;
        const auto den = static_cast<long>(rng_() % static_cast<std::uint64_t>(bound_)) + 1;
        Rational q(num, den);
        q.canonicalize();
        return q;
    }

    std::vector<Rational> next_point(int dim) {
        std::vector<Rational> p;
        p.reserve(static_cast<std::size_t>(dim));
        for (int i = 0; i < dim; ++i) p.push_back(next_rational());
        return p;
    }

private:
    std::mt19937_64 rng_;
    int bound_;
};

} // namespace qc
