#include "distgeo/distribution.hpp"

#include <algorithm>
#include <cmath>

#include "distgeo/errors.hpp"

namespace distgeo {

Distribution::Distribution(ManifoldPtr manifold, std::vector<int> indices) : M_(std::move(manifold)), idx_(std::move(indices)) {
  if (!M_) throw InvalidArgument("distribution needs a manifold");
  const int m = static_cast<int>(M_->dim());
  std::vector<int> sorted = idx_;
  std::sort(sorted.begin(), sorted.end());
  if (sorted.empty()) throw InvalidArgument("distribution index list is empty");
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw InvalidArgument("distribution index list has duplicates");
  if (sorted.front() < 0 || sorted.back() >= m) throw InvalidArgument("distribution index out of range");
  if (static_cast<int>(sorted.size()) == m) throw InvalidArgument("distribution must be a proper subbundle");
  for (int i = 0; i < m; ++i)
    if (!std::binary_search(sorted.begin(), sorted.end(), i)) perp_.push_back(i);
}

bool Distribution::contains(int i) const { return std::find(idx_.begin(), idx_.end(), i) != idx_.end(); }

VectorField project(const Distribution& dist, const VectorField& v, Side side) {
  VectorField r(v.dim());
  const auto& keep = side == Side::D ? dist.indices() : dist.complement();
  for (int i : keep) r[i] = v[i];
  return r;
}

namespace {

void require_side(const Distribution& dist, const VectorField& v, Side forbidden, const char* what, bool tangent) {
  if (v.dim() != dist.manifold().dim()) throw ShapeMismatch(std::string(what) + " has the wrong dimension");
  Sampler s(dist.manifold().plan());
  const auto& bad = forbidden == Side::D ? dist.indices() : dist.complement();
  for (int i : bad) {
    if (s.max_abs(v[i]) > dist.manifold().plan().abs_tol) {
      std::string msg = std::string(what) + " has a component along " + dist.manifold().labels()[i];
      if (tangent) throw NotTangent(msg);
      throw NotNormal(msg);
    }
  }
}

}  // namespace

void require_tangent(const Distribution& dist, const VectorField& v, const char* what) {
  require_side(dist, v, Side::Dperp, what, true);
}

void require_normal(const Distribution& dist, const VectorField& v, const char* what) {
  require_side(dist, v, Side::D, what, false);
}

Integrability is_integrable(const Distribution& dist) {
  Calculus calc(dist.manifold());
  Sampler s(dist.manifold().plan());
  Integrability out;
  const auto& idx = dist.indices();
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      VectorField n = project(dist, calc.bracket(calc.frame(idx[a]), calc.frame(idx[b])), Side::Dperp);
      if (max_abs(s, n) > dist.manifold().plan().abs_tol) {
        out.integrable = false;
        out.witness = std::make_pair(idx[a], idx[b]);
        out.witness_normal = n;
        return out;
      }
    }
  return out;
}

VectorField second_fundamental_form(const Distribution& dist, const ConnectionTable& C, const VectorField& X,
                                    const VectorField& Y) {
  require_tangent(dist, X, "X");
  require_tangent(dist, Y, "Y");
  return project(dist, covariant(dist.manifold(), C, X, Y), Side::Dperp);
}

ShapeOperator shape_operator(const Distribution& dist, const ConnectionTable& C, const VectorField& xi) {
  require_normal(dist, xi, "xi");
  const FrameManifold& M = dist.manifold();
  Calculus calc(M);
  ShapeOperator out;
  for (int i : dist.indices()) {
    VectorField a(M.dim());
    for (int j : dist.indices()) {
      VectorField b = project(dist, calc.covariant(C, calc.frame(i), calc.frame(j)), Side::Dperp);
      a[j] = calc.inner(b, xi) / M.metric(j);
    }
    out.shape.push_back(a);
    out.normal.push_back(project(dist, calc.covariant(C, calc.frame(i), xi), Side::Dperp));
  }
  return out;
}

VectorField mean_curvature(const Distribution& dist, const ConnectionTable& C) {
  const FrameManifold& M = dist.manifold();
  Calculus calc(M);
  VectorField h(M.dim());
  for (int i : dist.indices()) {
    VectorField u = calc.unit(i);
    h = h + project(dist, calc.covariant(C, u, u), Side::Dperp);
  }
  return rational(1, static_cast<std::int64_t>(dist.rank())) * h;
}

Predicates predicates(const Distribution& dist, const ConnectionTable& C) {
  const FrameManifold& M = dist.manifold();
  Calculus calc(M);
  Sampler s(M.plan());
  const auto& idx = dist.indices();
  const double tol = M.plan().abs_tol;
  Predicates p;

  VectorField h = mean_curvature(dist, C);
  p.minimal_residual = max_abs(s, h);

  double tg = 0.0, umb = 0.0;
  for (int i : idx)
    for (int j : idx) {
      VectorField bij = project(dist, calc.covariant(C, calc.frame(i), calc.frame(j)), Side::Dperp);
      VectorField bji = project(dist, calc.covariant(C, calc.frame(j), calc.frame(i)), Side::Dperp);
      tg = std::max(tg, max_abs(s, bij + bji));
      // symmetric part h(X,Y) against H g(X,Y)
      VectorField sym = rational(1, 2) * (bij + bji);
      if (i == j) sym = sym - M.metric(i) * h;
      umb = std::max(umb, max_abs(s, sym));
    }
  p.totally_geodesic_residual = tg;
  p.umbilical_residual = umb;
  p.minimal = p.minimal_residual <= tol;
  p.totally_geodesic = tg <= tol;
  p.umbilical = umb <= tol;
  return p;
}

}  // namespace distgeo
