#include "distgeo/sample_plan.hpp"

#include <algorithm>
#include <cmath>

#include "distgeo/errors.hpp"

namespace distgeo {

SamplePlan SamplePlan::standard() { return uniform(0.1, 2.1, 17); }

SamplePlan SamplePlan::uniform(double first, double last, int count, double abs_tol, double rel_tol) {
  if (count < 1) throw InvalidArgument("sample plan needs at least one point");
  SamplePlan p;
  p.abs_tol = abs_tol;
  p.rel_tol = rel_tol;
  if (count == 1) {
    p.points.push_back(first);
    return p;
  }
  double step = (last - first) / (count - 1);
  for (int i = 0; i < count; ++i) p.points.push_back(first + step * i);
  return p;
}

void SamplePlan::validate() const {
  if (points.empty()) throw InvalidArgument("sample plan has no points");
  std::vector<double> sorted = points;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("sample plan points must be pairwise distinct");
  for (double t : points)
    if (!std::isfinite(t)) throw InvalidArgument("sample plan points must be finite");
  if (!(abs_tol >= 0.0) || !(rel_tol >= 0.0)) throw InvalidArgument("tolerances must be non-negative");
}

Sampler::Sampler(const SamplePlan& plan) : plan_(plan) {
  ev_.reserve(plan.points.size());
  for (double t : plan.points) ev_.emplace_back(t);
}

std::vector<double> Sampler::values(const ScalarExpr& e) {
  std::vector<double> out;
  out.reserve(ev_.size());
  for (auto& ev : ev_) out.push_back(ev.value(e));
  return out;
}

double Sampler::max_abs(const ScalarExpr& e) {
  if (e.is_constant()) return std::fabs(e.constant_value());
  double m = 0.0;
  for (auto& ev : ev_) m = std::max(m, std::fabs(ev.value(e)));
  return m;
}

bool approx_zero(const ScalarExpr& e, const SamplePlan& plan, double scale) {
  double bound = plan.abs_tol + plan.rel_tol * scale;
  for (double t : plan.points)
    if (!(std::fabs(eval(e, t)) <= bound)) return false;
  return true;
}

}  // namespace distgeo
