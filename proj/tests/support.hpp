#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "distgeo/catalog.hpp"
#include "distgeo/connections.hpp"
#include "distgeo/frame.hpp"
#include "distgeo/jet.hpp"
#include "distgeo/sample_plan.hpp"
#include "distgeo/scalar_expr.hpp"

namespace testing {

using namespace distgeo;

inline ScalarExpr E(const std::string& text, const Bindings& b = {}) { return parse_expr(text, b); }

// Field from expression strings over the frame of M.
inline VectorField field(const FrameManifold& M, std::initializer_list<const char*> coeffs, const Bindings& b = {}) {
  VectorField v(M.dim());
  std::size_t i = 0;
  for (const char* c : coeffs) v[i++] = parse_expr(c, b);
  return v;
}

inline VectorField basis(const FrameManifold& M, std::size_t i) { return VectorField::basis(M.dim(), i); }

// Largest coefficient difference over M's sample plan.
inline double diff(const FrameManifold& M, const VectorField& a, const VectorField& b) {
  return max_abs(M, a - b);
}

inline double diff(const SamplePlan& plan, const ScalarExpr& a, const ScalarExpr& b) {
  Sampler s(plan);
  return s.max_abs(a - b);
}

inline double diff(const FrameManifold& M, const ScalarExpr& a, const ScalarExpr& b) { return diff(M.plan(), a, b); }

// Warping functions used across the warped-preset tests.
inline std::vector<std::string> test_warps() { return {"2*t+1", "exp(t)", "(2*t+1)^(2/3)"}; }

inline Bindings warp_bindings(const std::string& f) {
  ScalarExpr fx = parse_expr(f);
  ScalarExpr fp = derive(fx);
  return {{"f", fx}, {"fp", fp}, {"fpp", derive(fp)}};
}

}  // namespace testing
