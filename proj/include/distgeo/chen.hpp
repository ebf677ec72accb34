#pragma once

#include <optional>
#include <string>
#include <vector>

#include "distgeo/connections.hpp"

namespace distgeo {

// h[r][i][j] = g(B(E_i, E_j), E_r) over orthonormalized frames; i, j follow ChenQuantities::order.
using HTable = std::vector<Matrix>;

struct ChenQuantities {
  double c = 0.0;
  std::vector<int> order;  // D indices with the plane (or X slot) first
  ScalarExpr lambda, lambda1;
  ScalarExpr A_D, Omega_Pi, Omega_Pi_star, tr_alpha1_Pi;
  VectorField tr_B_Pi;
  ScalarExpr normB_sq, normBtilde_sq;
  ScalarExpr H_norm_sq, Htilde_norm_sq, omega_H;
  HTable h, htilde;  // Levi-Civita and spec second fundamental forms
};

struct InequalityReport {
  std::string kind;  // "first" or "ricci"
  std::string label;
  ScalarExpr lhs, rhs;
  std::vector<double> lhs_values, rhs_values, slack;
  double min_slack = 0.0;
  bool pass = false;
  double two_path_residual = 0.0;   // named rhs against raw h-table rhs
  double expansion_residual = 0.0;  // lhs against its h-table expansion
  // Right side with the coefficient exactly as printed (ssnm Chen-Ricci uses lambda there).
  std::vector<double> printed_rhs_values, printed_slack;
  // Each term vanishes exactly when the equality-case conditions hold.
  std::vector<ScalarExpr> equality_terms;
  ChenQuantities q;
};

// Throws NotConstantCurvature when c is absent or the ambient Levi-Civita
// curvature differs from c (g(X,W)g(Y,Z) - g(X,Z)g(Y,W)) beyond tol.
void require_constant_curvature(const FrameManifold& M, std::optional<double> c, double tol = 1e-8);

// Plane (i, j) and X are given in 0-based frame indices of D.
ChenQuantities chen_quantities(const Distribution& dist, const ConnectionSpec& spec, int i, int j, double c);

InequalityReport chen_first(const Distribution& dist, const ConnectionSpec& spec, int i, int j,
                            std::optional<double> c);
// X: unit field in D with constant coefficients over the orthonormalized frame.
InequalityReport chen_ricci(const Distribution& dist, const ConnectionSpec& spec, const VectorField& X,
                            std::optional<double> c);

// Unit field sum_k coeffs[k] Ê_{indices[k]}, normalized pointwise.
VectorField unit_combination(const Distribution& dist, const std::vector<double>& coeffs);

struct EqualityPoint {
  double t = 0.0;
  double slack = 0.0;
  bool slack_zero = false;
  double max_violation = 0.0;
  bool conditions_hold = false;
};

struct EqualityDiagnosis {
  std::string kind;
  std::vector<EqualityPoint> points;
  // points with zero slack while the conditions fail
  int zero_slack_without_conditions = 0;
  // points where the conditions hold but the slack is not zero
  int conditions_without_zero_slack = 0;
};

// Conditions of the equality case next to the slack at each sample point.
EqualityDiagnosis equality_diagnosis(const InequalityReport& report, const SamplePlan& plan);

struct LemmaValues {
  double pair_lhs = 0.0, pair_rhs = 0.0;
  double ricci_lhs = 0.0, ricci_rhs = 0.0;
  bool has_pair = false;
};

// h: one n x n matrix per normal direction r.
LemmaValues algebraic_lemmas(const std::vector<std::vector<std::vector<double>>>& h);

}  // namespace distgeo
