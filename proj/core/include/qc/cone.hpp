#pragma once

// The cone N = M x R+ over a qc chart: metric, the three 2-forms F_i, the
// 4-form F, and the closedness checks.

#include "qc/qcframe.hpp"

#include <array>
#include <optional>

namespace qc {

template <class F>
struct SasakianResult {
    /// dη_i - 2ω_i - 2ε η_j ^ η_k for ε = +1 and ε = -1.
    std::array<FormJet<F>, 3> plus;
    std::array<FormJet<F>, 3> minus;
    /// The sign whose residuals all vanish, if any.
    std::optional<int> epsilon;
};

template <class F>
SasakianResult<F> sasakian_check(const QcPointFrame<F>& frame);

template <class F>
struct ConeData {
    int epsilon = 1;
    Rational tvalue;
    JetMatrix<F> GN;
    std::array<FormJet<F>, 3> Fi;
    FormJet<F> F4;
};

/// Jets in D+1 variables; the cone variable t is the last one. Throws DimensionMismatch on t <= 0.
template <class F>
ConeData<F> cone_structures(const QcPointFrame<F>& frame, const Rational& tvalue, int epsilon);

template <class F>
struct HyperkahlerResult {
    std::array<FormJet<F>, 3> dFi;
    FormJet<F> dF;
    /// dF - 2 sum dF_i ^ F_i.
    FormJet<F> leibniz;
};

template <class F>
HyperkahlerResult<F> hyperkahler_check(const ConeData<F>& cone);

/// Expected inertia of the value part of GN: positive definite for ε = +1,
/// (4n, 4) for ε = -1.
bool cone_signature_ok(const ConeData<Rational>& cone, int n);

/// Horizontal metric as a D x D coordinate tensor: g(h u, h v) with h the projection to H.
template <class F>
JetMatrix<F> horizontal_metric(const QcPointFrame<F>& frame);

} // namespace qc
