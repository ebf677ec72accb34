#include "distgeo/connections.hpp"

#include <algorithm>
#include <cmath>

#include "distgeo/errors.hpp"

namespace distgeo {

std::string to_string(ConnectionKind k) {
  switch (k) {
    case ConnectionKind::LC: return "lc";
    case ConnectionKind::SSM: return "ssm";
    case ConnectionKind::SSNM: return "ssnm";
    case ConnectionKind::STAT: return "stat";
    case ConnectionKind::STAT_DUAL: return "stat_dual";
  }
  return "lc";
}

ConnectionKind connection_kind_from_string(const std::string& s) {
  std::string l;
  for (char c : s) l.push_back(c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (l == "lc" || l == "levi_civita") return ConnectionKind::LC;
  if (l == "ssm") return ConnectionKind::SSM;
  if (l == "ssnm") return ConnectionKind::SSNM;
  if (l == "stat") return ConnectionKind::STAT;
  if (l == "stat_dual") return ConnectionKind::STAT_DUAL;
  throw InvalidArgument("unknown connection kind '" + s + "'");
}

Tensor3 ConnectionSpec::signed_K() const {
  if (kind != ConnectionKind::STAT_DUAL) return K;
  Tensor3 r(K.dim());
  for (std::size_t a = 0; a < K.dim(); ++a)
    for (std::size_t b = 0; b < K.dim(); ++b)
      for (std::size_t c = 0; c < K.dim(); ++c) r(a, b, c) = -K(a, b, c);
  return r;
}

Tensor3 cubic_form_to_K(const FrameManifold& M, const Tensor3& C) {
  const std::size_t m = M.dim();
  if (C.dim() != m) throw ShapeMismatch("cubic form has the wrong dimension");
  Tensor3 K(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      for (std::size_t c = 0; c < m; ++c)
        if (!C(a, b, c).is_zero()) K(a, b, c) = C(a, b, c) / M.metric(c);
  return K;
}

void validate_spec(const FrameManifold& M, const ConnectionSpec& spec) {
  const std::size_t m = M.dim();
  if (spec.semi_symmetric() && spec.U.dim() != m)
    throw ShapeMismatch("U needs " + std::to_string(m) + " coefficients");
  if (!spec.statistical()) return;
  if (spec.K.dim() != m) throw ShapeMismatch("K needs an " + std::to_string(m) + "^3 table");
  Sampler s(M.plan());
  const SamplePlan& plan = M.plan();
  auto C = [&](std::size_t a, std::size_t b, std::size_t c) { return M.metric(c) * spec.K(a, b, c); };
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b)
      for (std::size_t c = b; c < m; ++c) {
        ScalarExpr base = C(a, b, c);
        double scale = s.max_abs(base);
        const ScalarExpr others[] = {C(a, c, b), C(b, a, c), C(b, c, a), C(c, a, b), C(c, b, a)};
        for (const auto& o : others)
          if (s.max_abs(base - o) > plan.abs_tol + plan.rel_tol * scale)
            throw AsymmetricCubicForm("C = g(K(.,.),.) is not symmetric at (" + std::to_string(a + 1) + "," +
                                      std::to_string(b + 1) + "," + std::to_string(c + 1) + ")");
      }
}

ConnectionTable ambient_connection(const FrameManifold& M, const ConnectionSpec& spec) {
  validate_spec(M, spec);
  const std::size_t m = M.dim();
  ConnectionTable T = M.levi_civita();
  switch (spec.kind) {
    case ConnectionKind::LC:
      break;
    case ConnectionKind::SSM:
    case ConnectionKind::SSNM:
      // + omega(E_j) E_i  [- g(E_i,E_j) U]
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
          ScalarExpr wj = M.metric(j) * spec.U[j];
          if (!wj.is_zero()) T.gamma(i, j, i) = T.gamma(i, j, i) + wj;
          if (spec.kind == ConnectionKind::SSM && i == j)
            for (std::size_t k = 0; k < m; ++k)
              if (!spec.U[k].is_zero()) T.gamma(i, i, k) = T.gamma(i, i, k) - M.metric(i) * spec.U[k];
        }
      break;
    case ConnectionKind::STAT:
    case ConnectionKind::STAT_DUAL: {
      Tensor3 K = spec.signed_K();
      for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
          for (std::size_t k = 0; k < m; ++k)
            if (!K(i, j, k).is_zero()) T.gamma(i, j, k) = T.gamma(i, j, k) + K(i, j, k);
      break;
    }
  }
  return T;
}

// ---------------------------------------------------------------------------

namespace {

ConnectionSpec dual_of(const ConnectionSpec& spec) {
  ConnectionSpec d = spec;
  if (spec.kind == ConnectionKind::STAT) d.kind = ConnectionKind::STAT_DUAL;
  else if (spec.kind == ConnectionKind::STAT_DUAL) d.kind = ConnectionKind::STAT;
  else d = ConnectionSpec::levi_civita();
  return d;
}

}  // namespace

InducedGeometry::InducedGeometry(const Distribution& dist, const ConnectionSpec& spec)
    : dist_(dist),
      spec_(spec),
      calc_(dist.manifold()),
      amb_(ambient_connection(dist.manifold(), spec)),
      dual_(ambient_connection(dist.manifold(), dual_of(spec))) {}

ScalarExpr InducedGeometry::omega(const VectorField& v) {
  if (!spec_.semi_symmetric()) return ScalarExpr();
  return calc_.inner(spec_.U, v);
}

VectorField InducedGeometry::L_perp(const VectorField& x, const VectorField& xi) {
  return on_perp(calc_.covariant(spec_.statistical() ? amb_ : lc(), x, xi));
}

VectorField InducedGeometry::shape_from(const VectorField& xi, const VectorField& x, int which) {
  const FrameManifold& M = manifold();
  VectorField a(M.dim());
  for (int j : dist_.indices()) {
    VectorField ej = frame(j);
    VectorField b = which == 0 ? B_lc(x, ej) : which == 1 ? B(x, ej) : B_dual(x, ej);
    ScalarExpr p = calc_.inner(b, xi);
    if (!p.is_zero()) a[j] = p / M.metric(j);
  }
  return a;
}

VectorField InducedGeometry::A_lc(const VectorField& xi, const VectorField& x) { return shape_from(xi, x, 0); }
VectorField InducedGeometry::A_stat(const VectorField& xi, const VectorField& x) { return shape_from(xi, x, 1); }
VectorField InducedGeometry::A_stat_star(const VectorField& xi, const VectorField& x) { return shape_from(xi, x, 2); }

VectorField InducedGeometry::A_tilde(const VectorField& xi, const VectorField& x) {
  return A_lc(xi, x) - omega(xi) * x;
}

VectorField InducedGeometry::curvature_D(const VectorField& x, const VectorField& y, const VectorField& z) {
  VectorField br = bracket(x, y);
  VectorField a = nabla_D(x, nabla_D(y, z));
  VectorField b = nabla_D(y, nabla_D(x, z));
  VectorField c = nabla_D(on_D(br), z);
  VectorField d = on_D(bracket(on_perp(br), z));
  return a - b - c - d;
}

// ---------------------------------------------------------------------------

InducedPair induced_pair(const Distribution& dist, const ConnectionSpec& spec) {
  InducedGeometry G(dist, spec);
  Sampler s(dist.manifold().plan());
  const ConnectionSpec& sp = G.spec();
  InducedPair out;
  out.indices = dist.indices();
  double res = 0.0;
  Tensor3 K = sp.statistical() ? sp.signed_K() : Tensor3();
  for (int a : dist.indices()) {
    std::vector<VectorField> rowD, rowB;
    for (int b : dist.indices()) {
      VectorField X = G.frame(a), Y = G.frame(b);
      VectorField nd = G.nabla_D(X, Y), bb = G.B(X, Y);
      // closed forms built from the Levi-Civita split
      VectorField nd0 = G.on_D(G.nabla_lc(X, Y)), b0 = G.B_lc(X, Y);
      if (sp.semi_symmetric()) {
        nd0 = nd0 + G.omega(Y) * X;
        if (sp.kind == ConnectionKind::SSM) {
          ScalarExpr gxy = G.g(X, Y);
          nd0 = nd0 - gxy * G.on_D(sp.U);
          b0 = b0 - gxy * G.on_perp(sp.U);
        }
      } else if (sp.statistical()) {
        VectorField kxy(dist.manifold().dim());
        for (std::size_t c = 0; c < kxy.dim(); ++c) kxy[c] = K(a, b, c);
        nd0 = nd0 + G.on_D(kxy);
        b0 = b0 + G.on_perp(kxy);
      }
      res = std::max({res, max_abs(s, nd - nd0), max_abs(s, bb - b0),
                      max_abs(s, G.nabla(X, Y) - nd - bb)});
      rowD.push_back(nd);
      rowB.push_back(bb);
    }
    out.nabla_D.push_back(std::move(rowD));
    out.B.push_back(std::move(rowB));
  }
  out.closed_form_residual = res;
  return out;
}

Weingarten weingarten(const Distribution& dist, const ConnectionSpec& spec, const VectorField& xi) {
  require_normal(dist, xi, "xi");
  InducedGeometry G(dist, spec);
  Sampler s(dist.manifold().plan());
  Weingarten out;
  double res = 0.0;
  for (int i : dist.indices()) {
    VectorField X = G.frame(i);
    if (spec.statistical()) {
      VectorField a = G.A_stat(xi, X), as = G.A_stat_star(xi, X);
      res = std::max({res, max_abs(s, a + G.on_D(G.nabla_dual(X, xi))), max_abs(s, as + G.on_D(G.nabla(X, xi)))});
      out.shape.push_back(a);
      out.shape_star.push_back(as);
    } else {
      VectorField a = spec.semi_symmetric() ? G.A_tilde(xi, X) : G.A_lc(xi, X);
      res = std::max(res, max_abs(s, a + G.on_D(G.nabla(X, xi))));
      out.shape.push_back(a);
    }
    VectorField n = G.L_perp(X, xi);
    res = std::max(res, max_abs(s, G.on_perp(G.nabla(X, xi)) - n));
    out.normal.push_back(n);
  }
  out.closed_form_residual = res;

  if (spec.statistical()) {
    // X g(Y,Z) = g(nabla_X Y, Z) + g(Y, nabla*_X Z)
    const std::size_t m = dist.manifold().dim();
    double d = 0.0;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c) {
          VectorField X = G.frame(static_cast<int>(a)), Y = G.frame(static_cast<int>(b)),
                      Z = G.frame(static_cast<int>(c));
          ScalarExpr r = G.calc().apply(X, G.g(Y, Z)) - G.g(G.nabla(X, Y), Z) - G.g(Y, G.nabla_dual(X, Z));
          d = std::max(d, s.max_abs(r));
        }
    out.duality_residual = d;
  }
  return out;
}

CheckReport verify_characterization(const Distribution& dist, const ConnectionSpec& spec) {
  if (!spec.semi_symmetric()) throw InvalidArgument("characterization applies to ssm and ssnm connections");
  InducedGeometry G(dist, spec);
  Sampler s(dist.manifold().plan());
  CheckReport rep;
  rep.identity = "characterization";
  rep.label = spec.kind == ConnectionKind::SSM ? "Thm 2.1" : "Thm 3.1";
  const auto& idx = dist.indices();
  for (int a : idx)
    for (int b : idx) {
      VectorField X = G.frame(a), Y = G.frame(b);
      // torsion against the closed form
      VectorField br = G.bracket(X, Y);
      VectorField T = G.nabla_D(X, Y) - G.nabla_D(Y, X) - br;
      VectorField T0 = -G.on_perp(br) + G.omega(Y) * X - G.omega(X) * Y;
      double r = max_abs(s, T - T0);
      for (int c : idx) {
        VectorField Z = G.frame(c);
        ScalarExpr metricity = G.calc().apply(X, G.g(Y, Z)) - G.g(G.nabla_D(X, Y), Z) - G.g(Y, G.nabla_D(X, Z));
        ScalarExpr expect;
        if (spec.kind == ConnectionKind::SSNM) expect = -G.omega(Y) * G.g(X, Z) - G.omega(Z) * G.g(X, Y);
        rep.add({a, b, c}, std::max(r, s.max_abs(metricity - expect)));
      }
    }
  rep.finish(dist.manifold().plan().abs_tol);
  return rep;
}

}  // namespace distgeo
