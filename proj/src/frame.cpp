#include "distgeo/frame.hpp"

#include <cmath>
#include <sstream>

#include "distgeo/errors.hpp"

namespace distgeo {

VectorField VectorField::basis(std::size_t m, std::size_t i, const ScalarExpr& scale) {
  VectorField v(m);
  v[i] = scale;
  return v;
}

bool VectorField::is_symbolic_zero() const {
  for (const auto& c : c_)
    if (!c.is_zero()) return false;
  return true;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  VectorField r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] + b[i];
  return r;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  VectorField r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = a[i] - b[i];
  return r;
}

VectorField operator-(const VectorField& a) {
  VectorField r(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) r[i] = -a[i];
  return r;
}

VectorField operator*(const ScalarExpr& s, const VectorField& v) {
  VectorField r(v.dim());
  for (std::size_t i = 0; i < v.dim(); ++i) r[i] = s * v[i];
  return r;
}

// ---------------------------------------------------------------------------

Calculus::Calculus(const FrameManifold& M) : M_(M) {
  inv_sqrt_.reserve(M.dim());
  for (std::size_t i = 0; i < M.dim(); ++i) inv_sqrt_.push_back(ScalarExpr(1) / sqrt(M.metric(i)));
}

ScalarExpr Calculus::apply(const VectorField& X, const ScalarExpr& phi) {
  if (phi.is_constant()) return ScalarExpr();
  ScalarExpr rate;
  for (std::size_t i = 0; i < X.dim(); ++i) rate += X[i] * M_.weight(i);
  if (rate.is_zero()) return ScalarExpr();
  return rate * diff_(phi);
}

ScalarExpr Calculus::inner(const VectorField& V, const VectorField& W) {
  ScalarExpr s;
  for (std::size_t i = 0; i < V.dim(); ++i) {
    if (V[i].is_zero() || W[i].is_zero()) continue;
    s += M_.metric(i) * V[i] * W[i];
  }
  return s;
}

VectorField Calculus::bracket(const VectorField& V, const VectorField& W) {
  const std::size_t m = M_.dim();
  const Tensor3& c = M_.structure();
  VectorField r(m);
  for (std::size_t k = 0; k < m; ++k) {
    ScalarExpr s = apply(V, W[k]) - apply(W, V[k]);
    for (std::size_t i = 0; i < m; ++i) {
      if (V[i].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (W[j].is_zero() || c(i, j, k).is_zero()) continue;
        s += V[i] * W[j] * c(i, j, k);
      }
    }
    r[k] = s;
  }
  return r;
}

VectorField Calculus::covariant(const ConnectionTable& C, const VectorField& X, const VectorField& Y) {
  const std::size_t m = M_.dim();
  VectorField r(m);
  for (std::size_t k = 0; k < m; ++k) {
    ScalarExpr s = apply(X, Y[k]);
    for (std::size_t i = 0; i < m; ++i) {
      if (X[i].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) {
        if (Y[j].is_zero() || C.gamma(i, j, k).is_zero()) continue;
        s += X[i] * Y[j] * C.gamma(i, j, k);
      }
    }
    r[k] = s;
  }
  return r;
}

VectorField Calculus::curvature(const ConnectionTable& C, const VectorField& X, const VectorField& Y,
                                const VectorField& Z) {
  VectorField a = covariant(C, X, covariant(C, Y, Z));
  VectorField b = covariant(C, Y, covariant(C, X, Z));
  VectorField c = covariant(C, bracket(X, Y), Z);
  return a - b - c;
}

// ---------------------------------------------------------------------------

FrameManifold::FrameManifold(std::string name, std::vector<std::string> labels, std::vector<ScalarExpr> metric,
                             Tensor3 structure, std::vector<ScalarExpr> weights, SamplePlan plan)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      metric_(std::move(metric)),
      structure_(std::move(structure)),
      weights_(std::move(weights)),
      plan_(std::move(plan)) {
  validate();
  lc_ = std::make_shared<const ConnectionTable>(koszul_levi_civita(*this));
}

FrameManifold FrameManifold::with_plan(const SamplePlan& plan) const {
  return FrameManifold(name_, labels_, metric_, structure_, weights_, plan);
}

void FrameManifold::validate() const {
  const std::size_t m = metric_.size();
  if (m < 2) throw InvalidManifold("frame manifold needs dimension >= 2");
  if (labels_.size() != m || weights_.size() != m || structure_.dim() != m)
    throw InvalidManifold("labels, weights and structure table must match the metric dimension");
  plan_.validate();

  Sampler s(plan_);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t p = 0; p < s.size(); ++p) {
      double g = s.value(metric_[i], p);
      if (!(std::fabs(g) > plan_.abs_tol)) {
        std::ostringstream os;
        os << "metric coefficient g_" << (i + 1) << " (" << labels_[i] << ") vanishes at t=" << plan_.points[p];
        throw SingularMetric(os.str());
      }
      if (g < 0) throw InvalidManifold("metric coefficient g_" + std::to_string(i + 1) + " is negative");
    }
  }

  auto tol = [&](double scale) { return plan_.abs_tol + plan_.rel_tol * scale; };
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        double r = s.max_abs(structure_(i, j, k) + structure_(j, i, k));
        if (r > tol(s.max_abs(structure_(i, j, k))))
          throw InvalidManifold("structure functions are not antisymmetric in (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ")");
      }

  Calculus calc(*this);
  // [E_i,E_j](phi) = E_i(E_j phi) - E_j(E_i phi) must hold for the derivation weights.
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      ScalarExpr lhs = weights_[i] * calc.d(weights_[j]) - weights_[j] * calc.d(weights_[i]);
      for (std::size_t k = 0; k < m; ++k) lhs -= structure_(i, j, k) * weights_[k];
      if (s.max_abs(lhs) > tol(1.0))
        throw InvalidManifold("derivation weights are incompatible with the bracket of E_" + std::to_string(i + 1) +
                              ", E_" + std::to_string(j + 1));
    }

  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k) {
        VectorField ei = calc.frame(i), ej = calc.frame(j), ek = calc.frame(k);
        VectorField jac = calc.bracket(ei, calc.bracket(ej, ek)) + calc.bracket(ej, calc.bracket(ek, ei)) +
                          calc.bracket(ek, calc.bracket(ei, ej));
        if (max_abs(s, jac) > tol(1.0))
          throw InvalidManifold("Jacobi identity fails for (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                                "," + std::to_string(k + 1) + ")");
      }
}

// ---------------------------------------------------------------------------

ConnectionTable koszul_levi_civita(const FrameManifold& M) {
  const std::size_t m = M.dim();
  const Tensor3& c = M.structure();
  Calculus calc(M);
  std::vector<ScalarExpr> dg(m);
  for (std::size_t i = 0; i < m; ++i) dg[i] = calc.d(M.metric(i));

  ConnectionTable C{Tensor3(m)};
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        ScalarExpr s;
        if (j == k) s += M.weight(i) * dg[j];
        if (i == k) s += M.weight(j) * dg[i];
        if (i == j) s -= M.weight(k) * dg[i];
        s += c(i, j, k) * M.metric(k);
        s -= c(i, k, j) * M.metric(j);
        s -= c(j, k, i) * M.metric(i);
        C.gamma(i, j, k) = s.is_zero() ? ScalarExpr() : s / (ScalarExpr(2) * M.metric(k));
      }
  return C;
}

VectorField bracket_general(const FrameManifold& M, const VectorField& V, const VectorField& W) {
  return Calculus(M).bracket(V, W);
}

VectorField covariant(const FrameManifold& M, const ConnectionTable& C, const VectorField& X, const VectorField& Y) {
  return Calculus(M).covariant(C, X, Y);
}

VectorField curvature(const FrameManifold& M, const ConnectionTable& C, const VectorField& X, const VectorField& Y,
                      const VectorField& Z) {
  return Calculus(M).curvature(C, X, Y, Z);
}

ScalarExpr inner(const FrameManifold& M, const VectorField& V, const VectorField& W) {
  return Calculus(M).inner(V, W);
}

Matrix ricci_ambient(const FrameManifold& M, const ConnectionTable& C) {
  const std::size_t m = M.dim();
  Calculus calc(M);
  Matrix ric(m, std::vector<ScalarExpr>(m));
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      ScalarExpr s;
      for (std::size_t k = 0; k < m; ++k) {
        VectorField uk = calc.unit(k);
        s += calc.inner(calc.curvature(C, calc.frame(a), uk, calc.frame(b)), uk);
      }
      ric[a][b] = s;
    }
  return ric;
}

ScalarExpr scalar_ambient(const FrameManifold& M, const ConnectionTable& C) {
  Matrix ric = ricci_ambient(M, C);
  ScalarExpr s;
  for (std::size_t k = 0; k < M.dim(); ++k) s += ric[k][k] / M.metric(k);
  return s;
}

double max_abs(Sampler& s, const VectorField& v) {
  double m = 0.0;
  for (std::size_t i = 0; i < v.dim(); ++i) m = std::max(m, s.max_abs(v[i]));
  return m;
}

double max_abs(const FrameManifold& M, const VectorField& v) {
  Sampler s(M.plan());
  return max_abs(s, v);
}

}  // namespace distgeo
