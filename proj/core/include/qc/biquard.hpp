#pragma once

// sp(1)-connection forms, qc scalar curvature, Ricci 2-forms and torsion of the
// Biquard connection at a point, plus the identity suites and classification.

#include "qc/qcframe.hpp"
#include "qc/report.hpp"

#include <array>
#include <optional>
#include <string>

namespace qc {

template <class F>
struct ConnectionData {
    /// alpha_l = beta_l - (s/2) eta_l.
    std::array<FormJet<F>, 3> beta;
    bool solved = false;
    Jet<F> s;
    Jet<F> scal;
    std::array<FormJet<F>, 3> alpha;
    std::array<FormJet<F>, 3> rho;
};

template <class F>
ConnectionData<F> connection_forms(const QcPointFrame<F>& frame);

/// Solves for s from each k; throws CrossKInconsistency when the three disagree.
/// Fills s, scal and alpha.
template <class F>
Jet<F> solve_scalar(const QcPointFrame<F>& frame, ConnectionData<F>& conn);

/// rho_k = (d alpha_k + alpha_i ^ alpha_j) / 2.
template <class F>
void ricci_forms(ConnectionData<F>& conn);

enum class TorsionRoute { FourForm, Ricci };

template <class F>
struct TorsionReport {
    TorsionRoute route = TorsionRoute::Ricci;
    JetMatrix<F> T0;
    JetMatrix<F> U;
    std::array<JetMatrix<F>, 3> per_reeb;
    /// |T0|^2 and |U|^2 in the metric G (value parts).
    F T0_norm;
    F U_norm;
    /// Consistency residuals of the raw computation, checked before use.
    CheckList checks;
};

/// Upsilon(H) = sum_l J_l^T H J_l, i.e. (X, Y) -> sum_l H(I_l X, I_l Y).
template <class F>
JetMatrix<F> upsilon(const QcPointFrame<F>& frame, const JetMatrix<F>& h);

/// Per-Reeb torsion T0(xi_l, ., .) = -(J_l^T T0 + T0 J_l) / 4.
template <class F>
std::array<JetMatrix<F>, 3> per_reeb_torsion(const QcPointFrame<F>& frame, const JetMatrix<F>& T0);

template <class F>
TorsionReport<F> torsion_from_ricci(const QcPointFrame<F>& frame, const ConnectionData<F>& conn);

/// Throws DimensionSevenUnsupported for n = 1.
template <class F>
TorsionReport<F> torsion_from_four_form(const QcPointFrame<F>& frame, const FormJet<F>& dOmega);

struct Classification {
    bool dOmega_zero = false;
    bool torsion_zero = false;
    bool reeb_invariant = false;
    std::array<bool, 3> reeb_invariant_each{};
    std::string s;
    std::string scal;
    std::string verdict;
    std::string caveat;
};

/// All per-point identities of the structure, torsion and theorem suites.
struct SuiteSelection {
    bool structure = true;
    bool torsion = true;
    bool theorem = true;
};

template <class F>
struct PointAnalysis {
    CheckList checks;
    std::optional<Classification> classification;
    Jet<F> s;
    Jet<F> scal;
};

/// Runs every stage at a point. Stage failures become error checks; frame failures propagate.
template <class F>
PointAnalysis<F> identity_suite(const QcPointFrame<F>& frame, const SuiteSelection& suites);

extern const char* const kVerdictSasakian;
extern const char* const kVerdictFlat;
extern const char* const kVerdictGeneric;
extern const char* const kDimensionSevenCaveat;

} // namespace qc
