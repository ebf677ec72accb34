#pragma once

#include <unordered_map>
#include <vector>

#include "distgeo/scalar_expr.hpp"

namespace distgeo {

// Value and derivatives of order 1..3 at a point.
struct Jet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  static Jet constant(double v) { return {v, 0.0, 0.0, 0.0}; }
  static Jet variable(double t) { return {t, 1.0, 0.0, 0.0}; }
};

Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator-(const Jet& a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);

// g(u) given g and its first three derivatives at u.value.
Jet compose(const Jet& u, double g0, double g1, double g2, double g3);

// Evaluates many expressions at one point, sharing work across common subtrees.
class PointEvaluator {
 public:
  explicit PointEvaluator(double t) : t_(t) {}
  double t() const { return t_; }
  Jet jet(const ScalarExpr& e);
  double value(const ScalarExpr& e) { return jet(e).value; }

 private:
  Jet compute(const ScalarExpr& e);
  double t_;
  std::unordered_map<const void*, std::pair<Jet, ScalarExpr>> memo_;
};

Jet eval_jet(const ScalarExpr& e, double t);
double eval(const ScalarExpr& e, double t);

}  // namespace distgeo
