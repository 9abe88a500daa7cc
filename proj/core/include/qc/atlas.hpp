#pragma once

// Built-in example charts, conformal deformation and chart JSON I/O.

#include "qc/qcframe.hpp"

#include <string>
#include <vector>

namespace qc {

/// Quaternionic Heisenberg group: eta_l = dt_l + sum_ab (L_l)_ba x^a dx^b, with
/// L_l the left multiplications by i, j, k on each quaternion block. G = Id, J_l = L_l.
QcChart heisenberg(int n);

/// Local chart of the round 3-Sasakian sphere S^{4n+3} by inverse stereographic
/// projection. Validated at seeded points; throws ConstructionInvalid on failure.
QcChart sphere_3sasakian(int n);

/// eta_l -> mu eta_l.
QcChart conformal_deform(const QcChart& chart, const Expression& mu);

/// Parses `mu` over the chart coordinates, then deforms.
QcChart conformal_deform(const QcChart& chart, const std::string& mu);

/// Names accepted by make_example.
const std::vector<std::string>& example_names();

/// Throws SchemaError for unknown names.
QcChart make_example(const std::string& name, int n);

/// The 4x4 matrices of left multiplication by i, j, k (l = 0, 1, 2) on one quaternion block.
const std::vector<int>& quaternion_unit(int l);

/// Chart JSON schema: {"label", "n", "coordinates", "eta", "epsilon"?}.
std::string chart_to_json(const QcChart& chart);
/// Throws SchemaError, SyntaxError or UnknownSymbol.
QcChart chart_from_json(const std::string& text);
/// Throws SchemaError when the file cannot be read.
QcChart load_chart(const std::string& path);

} // namespace qc
