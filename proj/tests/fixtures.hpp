#pragma once

#include "qc/atlas.hpp"
#include "qc/qcframe.hpp"
#include "qc/sampling.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qctest {

inline std::vector<qc::Rational> sample_point(const qc::QcChart& chart, std::uint64_t seed, int bound = 5) {
    qc::PointSampler s(seed, bound);
    return s.next_point(chart.dimension());
}

inline qc::QcPointFrame<qc::Rational> frame_at(const qc::QcChart& chart, std::uint64_t seed, int order = 3) {
    return qc::build_frame<qc::Rational>(chart, sample_point(chart, seed), order);
}

inline qc::QcChart deformed_heisenberg(int n, const std::string& mu = "1+x1^2") {
    return qc::conformal_deform(qc::heisenberg(n), mu);
}

} // namespace qctest
