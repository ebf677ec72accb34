#pragma once

#include <optional>
#include <string>
#include <vector>

#include "distgeo/connections.hpp"

namespace distgeo {

struct ScalarCheck {
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

// max over orthonormalized D pairs of |Ric^D(Ê_i,Ê_j) - c0 delta_ij| against abs_tol.
ScalarCheck is_einstein(const Distribution& dist, const ConnectionSpec& spec, double c0);
// Ric^D of the first unit D field at the first sample point.
double estimate_einstein_constant(const Distribution& dist, const ConnectionSpec& spec);
// |s^D - lambda0| against abs_tol, s^D taken for the spec's connection.
ScalarCheck has_constant_scalar(const Distribution& dist, const ConnectionSpec& spec, double lambda0);

struct FamilyParams {
  std::optional<double> constant;  // c0 or lambda0; fixed by the case when it has one value
  double c1 = 0.0;
  double c2 = 0.0;
};

struct SolutionFamily {
  std::string label;  // "thm5.4/2"
  std::string theorem;
  int case_index = 0;
  std::string constant_name;  // "c0" or "lambda0"
  double constant = 0.0;
  double c1 = 0.0, c2 = 0.0;
  std::string preset;  // "warped-sphere" or "warped-heisenberg"
  ConnectionKind kind = ConnectionKind::LC;
  bool einstein = false;  // Einstein check, else constant scalar curvature
  ScalarExpr f;
  ScalarExpr w;  // f = w^(2/3) for the scalar-curvature families
  SamplePlan plan;
  std::string window_note;  // set when the window is moved off a zero of f
};

// label "thm5.x/k". Throws ConstraintViolated when params break the case, ZeroWarp
// when no zero-free window is found, InvalidArgument on unknown labels.
SolutionFamily family(const std::string& label, const FamilyParams& params);
SolutionFamily family(const std::string& theorem, int case_index, const FamilyParams& params);

std::vector<std::string> family_labels();
// "thm5.5/1 (λ₀ = −2/3)"
std::string family_display(const std::string& label);

struct OdeResidual {
  std::string name;  // equation label
  double residual = 0.0;
};

// Substitution residuals of the case's ODEs (and the linear w equation).
std::vector<OdeResidual> ode_residuals(const SolutionFamily& fam);

// The distribution D = span{dt, fiber pair} with the family's connection (U = dt).
Distribution family_distribution(const SolutionFamily& fam, const ScalarExpr& f);
ConnectionSpec family_connection(const SolutionFamily& fam);

struct FamilyCheck {
  SolutionFamily fam;
  std::vector<OdeResidual> odes;
  double ode_max = 0.0;
  ScalarCheck check;      // Einstein or constant scalar with the family constant
  ScalarCheck perturbed;  // the same check for f + 0.1
  bool pass = false;      // odes < 1e-8, check passes, perturbed residual > 1e-3
};

FamilyCheck verify_family(const SolutionFamily& fam);

// Two or more parameter draws per case.
std::vector<SolutionFamily> default_family_draws();

}  // namespace distgeo
