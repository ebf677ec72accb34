#pragma once

#include <vector>

#include "distgeo/jet.hpp"
#include "distgeo/scalar_expr.hpp"

namespace distgeo {

struct SamplePlan {
  std::vector<double> points;
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;

  // 17 uniform points on [0.1, 2.1].
  static SamplePlan standard();
  static SamplePlan uniform(double first, double last, int count, double abs_tol = 1e-9, double rel_tol = 1e-9);
  // Throws InvalidArgument on empty or repeated points.
  void validate() const;
};

// One PointEvaluator per sample point; reuse it for every expression of a
// computation so shared subtrees are evaluated once.
class Sampler {
 public:
  explicit Sampler(const SamplePlan& plan);
  const SamplePlan& plan() const { return plan_; }
  std::size_t size() const { return ev_.size(); }
  double value(const ScalarExpr& e, std::size_t point) { return ev_[point].value(e); }
  Jet jet(const ScalarExpr& e, std::size_t point) { return ev_[point].jet(e); }
  std::vector<double> values(const ScalarExpr& e);
  double max_abs(const ScalarExpr& e);

 private:
  SamplePlan plan_;
  std::vector<PointEvaluator> ev_;
};

// |e(t)| <= abs_tol + rel_tol*scale at every plan point.
bool approx_zero(const ScalarExpr& e, const SamplePlan& plan, double scale = 0.0);

}  // namespace distgeo
