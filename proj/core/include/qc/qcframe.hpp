#pragma once

// Chart-level quaternionic contact structures and the per-point frame derived
// from them: Reeb fields, a horizontal frame, the horizontal metric and
// quaternionic triple, and the fundamental 2- and 4-forms.

#include "qc/exterior.hpp"
#include "qc/expression.hpp"
#include "qc/linalg.hpp"

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace qc {

/// Three contact 1-forms on a single chart of dimension 4n+3.
struct QcChart {
    std::string label;
    int n = 1;
    std::vector<std::string> coordinates;
    std::array<std::vector<Expression>, 3> eta;
    std::optional<int> epsilon;

    int dimension() const { return 4 * n + 3; }
    /// Throws SchemaError when the shape is inconsistent.
    void validate() const;
};

template <class F>
struct QcPointFrame {
    std::vector<Rational> point;
    int n = 1;
    int order = 0; ///< jet order the contact forms were sampled at
    std::array<FormJet<F>, 3> eta;
    std::array<FormJet<F>, 3> deta;
    std::array<VectorJet<F>, 3> xi;
    std::vector<VectorJet<F>> hframe;
    /// Rows map a horizontal vector to its coordinates in `hframe` (valid on H only).
    JetMatrix<F> hcoord;
    JetMatrix<F> G;
    JetMatrix<F> Ginv;
    std::array<JetMatrix<F>, 3> J;
    std::array<FormJet<F>, 3> omega;
    FormJet<F> Omega;

    int dim() const { return 4 * n + 3; }
    int rank() const { return 4 * n; }
};

extern template struct QcPointFrame<Rational>;
extern template struct QcPointFrame<ModP>;

/// The contact forms as jets at a point.
template <class F>
std::array<FormJet<F>, 3> contact_forms(const QcChart& chart, std::span<const Rational> point, int order);

/// Basis of H = ker(eta_1) ^ ker(eta_2) ^ ker(eta_3) from the free columns of the
/// row-reduced eta matrix, plus the matching coordinate rows.
template <class F>
std::pair<std::vector<VectorJet<F>>, JetMatrix<F>> horizontal_frame(const std::array<FormJet<F>, 3>& eta);

/// Solves the Reeb system and verifies the cross conditions.
/// Throws SingularSystem or NotQuaternionicContact.
template <class F>
std::array<VectorJet<F>, 3> reeb_fields(const std::array<FormJet<F>, 3>& eta, const std::array<FormJet<F>, 3>& deta,
                                        const std::vector<VectorJet<F>>& hframe);

/// G, its inverse and the triple J_l on the given horizontal frame.
/// Throws DegenerateStructure or NotQuaternionCompatible.
template <class F>
void quaternionic_data(const std::array<FormJet<F>, 3>& deta, const std::vector<VectorJet<F>>& hframe, JetMatrix<F>& G,
                       JetMatrix<F>& Ginv, std::array<JetMatrix<F>, 3>& J);

/// omega_m from the horizontal projection of d eta_m, and Omega = sum omega_l ^ omega_l.
template <class F>
void fundamental_forms(const std::array<FormJet<F>, 3>& eta, const std::array<FormJet<F>, 3>& deta,
                       const std::array<VectorJet<F>, 3>& xi, std::array<FormJet<F>, 3>& omega, FormJet<F>& Omega);

/// Full frame construction at a point; `order` >= 1 is the jet order of eta.
template <class F>
QcPointFrame<F> build_frame(const QcChart& chart, std::span<const Rational> point, int order);

/// The same frame with hframe replaced by hframe * M for an invertible rational 4n x 4n matrix M.
template <class F>
QcPointFrame<F> remix_frame(const QcPointFrame<F>& frame, const std::vector<Rational>& m);

/// M(a, b) = beta(X_a, X_b) for a 2-form beta over the horizontal frame.
template <class F>
JetMatrix<F> frame_matrix(const FormJet<F>& beta, const std::vector<VectorJet<F>>& hframe);

/// The vector sum_b coords[b] X_b.
template <class F>
VectorJet<F> frame_vector(const std::vector<VectorJet<F>>& hframe, const std::vector<Jet<F>>& coords);

/// Frame coordinates of a horizontal vector.
template <class F>
std::vector<Jet<F>> frame_coordinates(const QcPointFrame<F>& frame, const VectorJet<F>& v);

/// v - sum_m eta_m(v) xi_m.
template <class F>
VectorJet<F> horizontal_part(const QcPointFrame<F>& frame, const VectorJet<F>& v);

/// The 1-form a(v) evaluated on a vector.
template <class F>
Jet<F> apply(const FormJet<F>& one_form, const VectorJet<F>& v);

} // namespace qc
