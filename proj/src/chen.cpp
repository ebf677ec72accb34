#include "distgeo/chen.hpp"

#include <algorithm>
#include <cmath>

#include "distgeo/errors.hpp"

namespace distgeo {

namespace {

ConnectionSpec as_semi_symmetric(const Distribution& dist, const ConnectionSpec& spec) {
  if (spec.statistical()) throw InvalidArgument("Chen inequalities are stated for ssm and ssnm connections");
  if (spec.kind == ConnectionKind::LC) return ConnectionSpec::ssm(VectorField(dist.manifold().dim()));
  return spec;
}

// Shared machinery over the orthonormalized D and D^perp frames.
struct ChenContext {
  InducedGeometry G;
  std::vector<VectorField> u;  // D, in q.order
  std::vector<VectorField> e;  // D^perp
  std::size_t n;

  ChenContext(const Distribution& dist, const ConnectionSpec& spec, const std::vector<int>& order)
      : G(dist, spec), n(order.size()) {
    for (int k : order) u.push_back(G.unit(k));
    for (int r : dist.complement()) e.push_back(G.unit(r));
  }

  bool ssnm() const { return G.spec().kind == ConnectionKind::SSNM; }

  // (nabla_X omega)(Y) - omega(X) omega(Y)
  ScalarExpr alpha1(const VectorField& X, const VectorField& Y) {
    return G.calc().apply(X, G.omega(Y)) - G.omega(G.nabla_lc(X, Y)) - G.omega(X) * G.omega(Y);
  }
  ScalarExpr alpha(const VectorField& X, const VectorField& Y) {
    return alpha1(X, Y) + rational(1, 2) * G.g(X, Y) * G.omega(G.spec().U);
  }
  ScalarExpr rd(const VectorField& x, const VectorField& y, const VectorField& z, const VectorField& w) {
    return G.g(G.curvature_D(x, y, z), w);
  }
  HTable table(bool spec_form, const std::vector<VectorField>& basis) {
    HTable h;
    for (const auto& er : e) {
      Matrix m(basis.size(), std::vector<ScalarExpr>(basis.size()));
      for (std::size_t i = 0; i < basis.size(); ++i)
        for (std::size_t j = 0; j < basis.size(); ++j) {
          VectorField b = spec_form ? G.B(basis[i], basis[j]) : G.B_lc(basis[i], basis[j]);
          m[i][j] = G.g(b, er);
        }
      h.push_back(std::move(m));
    }
    return h;
  }
};

ScalarExpr norm_sq(InducedGeometry& G, const VectorField& v) { return G.g(v, v); }

ScalarExpr rnum(double x) { return ScalarExpr(x); }

void sample_report(InequalityReport& rep, const SamplePlan& plan, const ScalarExpr& raw_rhs,
                   const ScalarExpr& lhs_expansion, const ScalarExpr* printed_rhs) {
  Sampler s(plan);
  rep.lhs_values = s.values(rep.lhs);
  rep.rhs_values = s.values(rep.rhs);
  rep.slack.clear();
  for (std::size_t p = 0; p < rep.lhs_values.size(); ++p) rep.slack.push_back(rep.rhs_values[p] - rep.lhs_values[p]);
  rep.min_slack = *std::min_element(rep.slack.begin(), rep.slack.end());
  rep.pass = std::all_of(rep.slack.begin(), rep.slack.end(), [&](double x) { return x >= -plan.abs_tol; });
  rep.two_path_residual = s.max_abs(rep.rhs - raw_rhs);
  rep.expansion_residual = s.max_abs(rep.lhs - lhs_expansion);
  if (printed_rhs) {
    rep.printed_rhs_values = s.values(*printed_rhs);
    for (std::size_t p = 0; p < rep.lhs_values.size(); ++p)
      rep.printed_slack.push_back(rep.printed_rhs_values[p] - rep.lhs_values[p]);
  }
}

}  // namespace

void require_constant_curvature(const FrameManifold& M, std::optional<double> c, double tol) {
  if (!c) throw NotConstantCurvature("no constant curvature declared for " + M.name());
  Calculus calc(M);
  Sampler s(M.plan());
  const std::size_t m = M.dim();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) {
        VectorField R = calc.curvature(M.levi_civita(), calc.unit(i), calc.unit(j), calc.unit(k));
        for (std::size_t l = 0; l < m; ++l) {
          double expect = *c * ((i == l && j == k ? 1.0 : 0.0) - (i == k && j == l ? 1.0 : 0.0));
          if (s.max_abs(calc.inner(R, calc.unit(l)) - ScalarExpr(expect)) > tol)
            throw NotConstantCurvature(M.name() + " does not have constant curvature " + std::to_string(*c));
        }
      }
}

ChenQuantities chen_quantities(const Distribution& dist, const ConnectionSpec& spec_in, int i, int j, double c) {
  if (i == j) throw SamePlane("a plane needs two distinct frame indices");
  if (!dist.contains(i) || !dist.contains(j)) throw NotTangent("plane indices must lie in the distribution");
  ConnectionSpec spec = as_semi_symmetric(dist, spec_in);
  ChenQuantities q;
  q.c = c;
  q.order = {i, j};
  for (int k : dist.indices())
    if (k != i && k != j) q.order.push_back(k);
  ChenContext ctx(dist, spec, q.order);
  InducedGeometry& G = ctx.G;
  const std::size_t n = ctx.n;
  const auto& u = ctx.u;

  for (const auto& x : u) {
    q.lambda += ctx.alpha(x, x);
    q.lambda1 += ctx.alpha1(x, x);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) q.A_D += G.g(G.B_lc(u[b], u[a]), G.bracket(u[b], u[a]));
  q.A_D = rational(1, 2) * q.A_D;
  ScalarExpr skew = G.g(G.B_lc(u[0], u[1]) - G.B_lc(u[1], u[0]), G.bracket(u[0], u[1]));
  q.Omega_Pi = ctx.alpha(u[0], u[0]) + ctx.alpha(u[1], u[1]) - rational(1, 2) * skew;
  q.Omega_Pi_star = -rational(1, 2) * skew;
  q.tr_alpha1_Pi = ctx.alpha1(u[0], u[0]) + ctx.alpha1(u[1], u[1]);
  q.tr_B_Pi = G.B_lc(u[0], u[0]) + G.B_lc(u[1], u[1]);

  VectorField H(dist.manifold().dim()), Ht(dist.manifold().dim());
  for (std::size_t a = 0; a < n; ++a) {
    H = H + G.B_lc(u[a], u[a]);
    Ht = Ht + G.B(u[a], u[a]);
    for (std::size_t b = 0; b < n; ++b) {
      q.normB_sq += norm_sq(G, G.B_lc(u[a], u[b]));
      q.normBtilde_sq += norm_sq(G, G.B(u[a], u[b]));
    }
  }
  const ScalarExpr inv_n = rational(1, static_cast<std::int64_t>(n));
  H = inv_n * H;
  Ht = inv_n * Ht;
  q.H_norm_sq = norm_sq(G, H);
  q.Htilde_norm_sq = norm_sq(G, Ht);
  q.omega_H = G.omega(H);
  q.h = ctx.table(false, u);
  q.htilde = ctx.table(true, u);
  return q;
}

InequalityReport chen_first(const Distribution& dist, const ConnectionSpec& spec_in, int i, int j,
                            std::optional<double> c) {
  const std::size_t n = dist.rank();
  if (n < 3) throw DimensionTooSmall("the Chen first inequality needs dim D >= 3");
  require_constant_curvature(dist.manifold(), c);
  ConnectionSpec spec = as_semi_symmetric(dist, spec_in);
  InequalityReport rep;
  rep.kind = "first";
  rep.q = chen_quantities(dist, spec, i, j, *c);
  const ChenQuantities& q = rep.q;
  ChenContext ctx(dist, spec, q.order);
  const bool ssnm = ctx.ssnm();
  rep.label = ssnm ? "Eq 3.12" : "Eq 2.39";
  const auto& u = ctx.u;

  ScalarExpr tau;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) tau += ctx.rd(u[a], u[b], u[b], u[a]);
  tau = rational(1, 2) * tau;
  ScalarExpr K = rational(1, 2) * (ctx.rd(u[0], u[1], u[1], u[0]) - ctx.rd(u[0], u[1], u[0], u[1]));
  rep.lhs = tau - K;

  const double nd = static_cast<double>(n);
  const ScalarExpr c_term = rnum((nd + 1) * (nd - 2) / 2 * *c);
  const ScalarExpr h_coeff = rnum(nd * nd * (nd - 2) / (2 * (nd - 1)));
  const HTable& h = ssnm ? q.h : q.htilde;

  // raw sums over the h tables
  ScalarExpr Hsq_raw, Bsq_raw, mixed;
  for (const auto& hr : h) {
    ScalarExpr tr;
    for (std::size_t a = 0; a < n; ++a) tr += hr[a][a];
    Hsq_raw += pow(tr / ScalarExpr(nd), 2);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) Bsq_raw += hr[a][b] * hr[a][b];
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) mixed += hr[a][a] * hr[b][b] - hr[a][b] * hr[b][a];
    mixed -= hr[0][0] * hr[1][1] - hr[0][1] * hr[1][0];
  }

  ScalarExpr base;
  if (ssnm) {
    base = c_term - rnum((nd - 1) / 2) * q.lambda1 - rnum(nd * (nd - 1) / 2) * q.omega_H +
           rational(1, 2) * q.tr_alpha1_Pi + rational(1, 2) * ctx.G.omega(q.tr_B_Pi) + q.A_D + q.Omega_Pi_star;
    rep.rhs = base + h_coeff * q.H_norm_sq + rational(1, 2) * q.normB_sq;
  } else {
    base = c_term - rnum(nd - 1) * q.lambda + q.A_D + q.Omega_Pi;
    rep.rhs = base + h_coeff * q.Htilde_norm_sq + rational(1, 2) * q.normBtilde_sq;
  }
  ScalarExpr raw = base + h_coeff * Hsq_raw + rational(1, 2) * Bsq_raw;
  sample_report(rep, dist.manifold().plan(), raw, base + mixed, nullptr);

  for (const auto& hr : h) {
    for (std::size_t a = 0; a < n; ++a) {
      rep.equality_terms.push_back(hr[a][a]);
      for (std::size_t b = a + 1; b < n; ++b) rep.equality_terms.push_back(hr[a][b] + hr[b][a]);
    }
    rep.equality_terms.push_back(hr[0][1]);
    rep.equality_terms.push_back(hr[1][0]);
  }
  return rep;
}

VectorField unit_combination(const Distribution& dist, const std::vector<double>& coeffs) {
  if (coeffs.size() != dist.rank()) throw ShapeMismatch("X needs one coefficient per distribution index");
  Calculus calc(dist.manifold());
  VectorField X(dist.manifold().dim());
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    if (coeffs[k] != 0.0) X = X + ScalarExpr(coeffs[k]) * calc.unit(dist.indices()[k]);
  ScalarExpr len = sqrt(calc.inner(X, X));
  return (ScalarExpr(1) / len) * X;
}

InequalityReport chen_ricci(const Distribution& dist, const ConnectionSpec& spec_in, const VectorField& X,
                            std::optional<double> c) {
  const std::size_t n = dist.rank();
  if (n < 2) throw DimensionTooSmall("the Chen-Ricci inequality needs dim D >= 2");
  require_tangent(dist, X, "X");
  {
    Sampler s(dist.manifold().plan());
    ScalarExpr dev = inner(dist.manifold(), X, X) - ScalarExpr(1);
    if (s.max_abs(dev) > dist.manifold().plan().rel_tol) throw NotUnit("X is not a unit field");
  }
  require_constant_curvature(dist.manifold(), c);
  ConnectionSpec spec = as_semi_symmetric(dist, spec_in);
  InequalityReport rep;
  rep.kind = "ricci";
  ChenContext ctx(dist, spec, dist.indices());
  InducedGeometry& G = ctx.G;
  const bool ssnm = ctx.ssnm();
  rep.label = ssnm ? "Eq 3.21" : "Eq 2.52";
  rep.q.c = *c;
  rep.q.order = dist.indices();
  const auto& u = ctx.u;
  const double nd = static_cast<double>(n);

  // Sums over an orthonormal basis are basis independent, so the frame need not start at X.
  ScalarExpr ric, AX, lambda, lambda1, BXsq, BXsq_lc;
  VectorField H(dist.manifold().dim()), Ht(dist.manifold().dim());
  for (const auto& uk : u) {
    ric += ctx.rd(X, uk, uk, X);
    AX += G.g(G.B_lc(uk, X), G.bracket(uk, X));
    lambda += ctx.alpha(uk, uk);
    lambda1 += ctx.alpha1(uk, uk);
    BXsq += norm_sq(G, G.B(X, uk)) + norm_sq(G, G.B(uk, X));
    BXsq_lc += norm_sq(G, G.B_lc(X, uk)) + norm_sq(G, G.B_lc(uk, X));
    H = H + G.B_lc(uk, uk);
    Ht = Ht + G.B(uk, uk);
  }
  const ScalarExpr inv_n = rational(1, static_cast<std::int64_t>(n));
  H = inv_n * H;
  Ht = inv_n * Ht;
  BXsq -= ScalarExpr(2) * norm_sq(G, G.B(X, X));
  BXsq_lc -= ScalarExpr(2) * norm_sq(G, G.B_lc(X, X));
  rep.q.lambda = lambda;
  rep.q.lambda1 = lambda1;
  rep.q.A_D = AX;
  rep.q.H_norm_sq = norm_sq(G, H);
  rep.q.Htilde_norm_sq = norm_sq(G, Ht);
  rep.q.omega_H = G.omega(H);
  rep.q.normB_sq = BXsq_lc;
  rep.q.normBtilde_sq = BXsq;
  rep.lhs = ric;

  // h-table pieces with E_1 = X, from bilinear traces
  auto hform = [&](const VectorField& a, const VectorField& b, const VectorField& er) {
    return G.g(ssnm ? G.B_lc(a, b) : G.B(a, b), er);
  };
  ScalarExpr mixed, Hsq_raw, BX_raw;
  for (const auto& er : ctx.e) {
    ScalarExpr h11 = hform(X, X, er);
    ScalarExpr trace, cross, sq;
    for (const auto& uk : u) {
      trace += hform(uk, uk, er);
      ScalarExpr a = hform(X, uk, er), b = hform(uk, X, er);
      cross += a * b;
      sq += a * a + b * b;
    }
    mixed += h11 * (trace - h11) - (cross - h11 * h11);
    Hsq_raw += pow(trace / ScalarExpr(nd), 2);
    BX_raw += sq - ScalarExpr(2) * h11 * h11;
    rep.equality_terms.push_back(ScalarExpr(2) * h11 - trace);
    for (const auto& uk : u) {
      ScalarExpr along = G.g(uk, X);
      rep.equality_terms.push_back(hform(X, uk, er) + hform(uk, X, er) - ScalarExpr(2) * along * h11);
    }
  }

  const ScalarExpr c_term = rnum((nd - 1) * *c);
  const ScalarExpr quarter = rnum(nd * nd / 4);
  ScalarExpr base, printed_base;
  if (ssnm) {
    ScalarExpr rest = ctx.alpha1(X, X) - rnum(nd) * rep.q.omega_H + G.omega(G.B_lc(X, X)) + AX;
    base = c_term - lambda1 + rest;
    printed_base = c_term - lambda + rest;
    rep.rhs = base + quarter * rep.q.H_norm_sq + rational(1, 2) * BXsq_lc;
  } else {
    base = c_term - lambda + rnum(2 - nd) * ctx.alpha(X, X) + AX;
    rep.rhs = base + quarter * rep.q.Htilde_norm_sq + rational(1, 2) * BXsq;
  }
  ScalarExpr raw = base + quarter * Hsq_raw + rational(1, 2) * BX_raw;
  if (ssnm) {
    ScalarExpr printed = printed_base + quarter * rep.q.H_norm_sq + rational(1, 2) * BXsq_lc;
    sample_report(rep, dist.manifold().plan(), raw, base + mixed, &printed);
  } else {
    sample_report(rep, dist.manifold().plan(), raw, base + mixed, nullptr);
  }
  return rep;
}

EqualityDiagnosis equality_diagnosis(const InequalityReport& report, const SamplePlan& plan) {
  EqualityDiagnosis out;
  out.kind = report.kind;
  Sampler s(plan);
  for (std::size_t p = 0; p < s.size(); ++p) {
    EqualityPoint pt;
    pt.t = plan.points[p];
    pt.slack = p < report.slack.size() ? report.slack[p] : 0.0;
    pt.slack_zero = std::fabs(pt.slack) <= 1e-9;
    for (const auto& e : report.equality_terms) pt.max_violation = std::max(pt.max_violation, std::fabs(s.value(e, p)));
    pt.conditions_hold = pt.max_violation <= 1e-6;
    if (pt.slack_zero && !pt.conditions_hold) ++out.zero_slack_without_conditions;
    if (pt.conditions_hold && !pt.slack_zero) ++out.conditions_without_zero_slack;
    out.points.push_back(pt);
  }
  return out;
}

LemmaValues algebraic_lemmas(const std::vector<std::vector<std::vector<double>>>& h) {
  if (h.empty()) throw ShapeMismatch("h needs at least one normal direction");
  const std::size_t n = h.front().size();
  if (n < 2) throw ShapeMismatch("h matrices need n >= 2");
  for (const auto& m : h) {
    if (m.size() != n) throw ShapeMismatch("h matrices must all be n x n");
    for (const auto& row : m)
      if (row.size() != n) throw ShapeMismatch("h matrices must all be n x n");
  }
  const double nd = static_cast<double>(n);
  double Hsq = 0.0;
  LemmaValues v;
  v.has_pair = n >= 3;
  for (const auto& m : h) {
    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += m[i][i];
    Hsq += (tr / nd) * (tr / nd);
    for (std::size_t j = 1; j < n; ++j) v.ricci_lhs += m[0][0] * m[j][j];
    if (v.has_pair) {
      double tail = 0.0;
      for (std::size_t j = 2; j < n; ++j) tail += m[j][j];
      v.pair_lhs += (m[0][0] + m[1][1]) * tail;
      for (std::size_t i = 2; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) v.pair_lhs += m[i][i] * m[j][j];
    }
  }
  v.ricci_rhs = nd * nd / 4 * Hsq;
  if (v.has_pair) v.pair_rhs = nd * nd * (nd - 2) / (2 * (nd - 1)) * Hsq;
  return v;
}

}  // namespace distgeo
