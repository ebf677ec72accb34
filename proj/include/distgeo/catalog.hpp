#pragma once

#include <optional>
#include <string>
#include <vector>

#include "distgeo/connections.hpp"

namespace distgeo {

ManifoldPtr sphere3(const SamplePlan& plan = SamplePlan::standard());
ManifoldPtr heisenberg3(const SamplePlan& plan = SamplePlan::standard());
// Frame (dt, X1, X2, X3), metric (1, f^2, f^2, 1). Throws ZeroWarp if f vanishes on the plan.
ManifoldPtr warped_sphere(const ScalarExpr& f, const SamplePlan& plan = SamplePlan::standard());
ManifoldPtr warped_heisenberg(const ScalarExpr& f, const SamplePlan& plan = SamplePlan::standard());
// Flat R^m with E_1 = dt and orthonormal frame; twist != 0 rotates (E_2, E_m) along t,
// giving [E_1,E_2] = twist E_m and [E_1,E_m] = -twist E_2.
ManifoldPtr flat_frame(std::size_t m, double twist = 0.0, const SamplePlan& plan = SamplePlan::standard());

enum class GoldenQuantity {
  Bracket,    // [E_a, E_b]
  Nabla,      // ambient Levi-Civita nabla_{E_a} E_b
  NablaD,     // induced nabla^D_{E_a} E_b of the block connection
  B,          // second fundamental form of the block connection
  H,          // mean curvature of the block connection
  Shape,      // Levi-Civita A_{E_xi} E_a, args (xi, a)
  ShapeSpec,  // A_xi - omega(xi) Id, args (xi, a)
  NormalConn, // L^perp_{E_a} E_xi, args (a, xi)
  R,          // ambient Levi-Civita R(E_a,E_b)E_c
  RD,         // R^D(E_a,E_b)E_c of the block connection
  Ric,        // ambient Levi-Civita Ric(E_a,E_b)
  Scalar,     // ambient scalar curvature
  Sectional,  // K^D of the unit pair (a, b)
  Tau,        // tau^D
  RicD,       // Ric^D(E_a,E_b)
  ScalarD,    // s^D
};

std::string to_string(GoldenQuantity q);

struct GoldenEntry {
  GoldenQuantity quantity;
  std::vector<int> args;  // 0-based frame indices
  // Vector values list (label, expression) pairs; scalars use the single label "".
  std::vector<std::pair<std::string, std::string>> expected;
  std::string eq;
  // Set when the stated value was analysed and found to disagree with the definitions.
  std::string finding;
};

struct GoldenBlock {
  std::string name;
  std::vector<int> distribution;
  ConnectionSpec connection;
  double tolerance = 1e-9;
  std::vector<GoldenEntry> entries;
};

struct ScenarioPreset {
  std::string name;
  std::string description;
  ManifoldPtr manifold;
  std::vector<int> distribution;
  ConnectionSpec connection;
  std::optional<double> declared_c;
  Bindings bindings;  // f, fp, fpp for the warped presets
  std::vector<GoldenBlock> golden;
};

// name in {"sphere3", "heisenberg3", "warped-sphere", "warped-heisenberg", "flat"}.
// f is used by the warped presets (default 2t+1); dim by "flat" (default 5).
ScenarioPreset make_preset(const std::string& name, const std::optional<ScalarExpr>& f = std::nullopt,
                           const SamplePlan& plan = SamplePlan::standard(), std::size_t dim = 5);
std::vector<std::string> preset_names();
std::string preset_anchor(const std::string& name);

struct GoldenResult {
  std::string block;
  std::string key;
  std::string eq;
  std::string expected;         // expression text
  std::string expected_sample;  // numeric rendering at the first plan point
  std::string engine_sample;
  double residual = 0.0;
  bool match = false;
  std::string finding;
};

std::vector<GoldenResult> evaluate_golden(const ManifoldPtr& M, const GoldenBlock& block,
                                          const Bindings& bindings = {});
std::vector<GoldenResult> evaluate_golden(const ScenarioPreset& preset);

}  // namespace distgeo
