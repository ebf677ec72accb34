#include "distgeo/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "distgeo/errors.hpp"

namespace distgeo {

namespace {

double tol_of(const Distribution& dist) { return dist.manifold().plan().abs_tol; }

// R^D(X,Y,Z,W) = g(R^D(X,Y)Z, W) evaluated on unit fields.
ScalarExpr rd4(InducedGeometry& G, const VectorField& x, const VectorField& y, const VectorField& z,
               const VectorField& w) {
  return G.g(G.curvature_D(x, y, z), w);
}

ScalarExpr sectional_of(InducedGeometry& G, const VectorField& u, const VectorField& v) {
  return rational(1, 2) * (rd4(G, u, v, v, u) - rd4(G, u, v, u, v));
}

}  // namespace

VectorField curvature_D(const Distribution& dist, const ConnectionSpec& spec, const VectorField& X,
                        const VectorField& Y, const VectorField& Z) {
  require_tangent(dist, X, "X");
  require_tangent(dist, Y, "Y");
  require_tangent(dist, Z, "Z");
  InducedGeometry G(dist, spec);
  return G.curvature_D(X, Y, Z);
}

CheckReport verify_gauss(const Distribution& dist, const ConnectionSpec& spec) {
  InducedGeometry G(dist, spec);
  Sampler s(dist.manifold().plan());
  const ConnectionKind kind = spec.kind;
  CheckReport rep;
  rep.identity = "gauss";
  rep.label = spec.statistical() ? "Eq 4.6" : kind == ConnectionKind::SSNM ? "Eq 3.6" : "Eq 2.15";
  const auto& idx = dist.indices();
  const VectorField Uperp = spec.semi_symmetric() ? G.on_perp(spec.U) : VectorField(dist.manifold().dim());
  const ScalarExpr wUperp = G.omega(Uperp);

  for (int a : idx)
    for (int b : idx) {
      VectorField X = G.frame(a), Y = G.frame(b);
      VectorField br = G.bracket(X, Y);
      for (int c : idx) {
        VectorField Z = G.frame(c);
        VectorField Rxyz = G.curvature(X, Y, Z);
        VectorField RDxyz = G.curvature_D(X, Y, Z);
        for (int d : idx) {
          VectorField W = G.frame(d);
          ScalarExpr lhs = G.g(Rxyz, W);
          ScalarExpr rhs = G.g(RDxyz, W);
          if (spec.statistical()) {
            rhs += G.g(G.B_dual(Y, W), G.B(X, Z)) - G.g(G.B_dual(X, W), G.B(Y, Z)) + G.g(G.B_dual(Z, W), br);
          } else {
            VectorField Bxw = G.B_lc(X, W), Byz = G.B_lc(Y, Z), Byw = G.B_lc(Y, W), Bxz = G.B_lc(X, Z);
            rhs += -G.g(Bxw, Byz) + G.g(Byw, Bxz) + G.g(G.B_lc(Z, W), br);
            if (spec.semi_symmetric()) {
              ScalarExpr gxw = G.g(X, W), gyw = G.g(Y, W);
              rhs += gxw * G.omega(Byz) - gyw * G.omega(Bxz);
              if (kind == ConnectionKind::SSM) {
                ScalarExpr gyz = G.g(Y, Z), gxz = G.g(X, Z);
                rhs += gyz * G.omega(Bxw) - gxz * G.omega(Byw) - gyz * gxw * wUperp + gxz * gyw * wUperp;
              }
            }
          }
          rep.add({a, b, c, d}, s.max_abs(lhs - rhs));
        }
      }
    }
  rep.finish(tol_of(dist));
  return rep;
}

CheckReport verify_codazzi(const Distribution& dist, const ConnectionSpec& spec) {
  InducedGeometry G(dist, spec);
  Sampler s(dist.manifold().plan());
  CheckReport rep;
  rep.identity = "codazzi";
  rep.label = spec.statistical() ? "Eq 4.11" : spec.kind == ConnectionKind::SSNM ? "Eq 3.7" : "Eq 2.23";
  const auto& idx = dist.indices();

  // (L_X B)(Y,Z) = L_X(B(Y,Z)) - B(nabla^D_X Y, Z) - B(Y, nabla^D_X Z)
  auto LB = [&](const VectorField& X, const VectorField& Y, const VectorField& Z) {
    return G.L_perp(X, G.B(Y, Z)) - G.B(G.nabla_D(X, Y), Z) - G.B(Y, G.nabla_D(X, Z));
  };

  for (int a : idx)
    for (int b : idx) {
      VectorField X = G.frame(a), Y = G.frame(b);
      VectorField br = G.bracket(X, Y);
      VectorField brp = G.on_perp(br), brd = G.on_D(br);
      for (int c : idx) {
        VectorField Z = G.frame(c);
        VectorField lhs = G.on_perp(G.curvature(X, Y, Z));
        VectorField rhs;
        if (spec.statistical()) {
          rhs = -G.on_perp(G.bracket(brp, Z)) + G.B(X, G.nabla_D(Y, Z)) - G.B(Y, G.nabla_D(X, Z)) - G.B(brd, Z) +
                G.L_perp(X, G.B(Y, Z)) - G.L_perp(Y, G.B(X, Z)) - G.L_perp(Z, brp);
        } else {
          rhs = LB(X, Y, Z) - LB(Y, X, Z) - G.omega(X) * G.B(Y, Z) + G.omega(Y) * G.B(X, Z) -
                G.on_perp(G.bracket(brp, Z)) - G.L_perp(Z, brp) - G.omega(Z) * brp;
        }
        rep.add({a, b, c}, max_abs(s, lhs - rhs));
      }
    }
  rep.finish(tol_of(dist));
  return rep;
}

CheckReport verify_ricci_eq(const Distribution& dist, const ConnectionSpec& spec) {
  InducedGeometry G(dist, spec);
  Sampler s(dist.manifold().plan());
  CheckReport rep;
  rep.identity = "ricci";
  rep.label = spec.statistical() ? "Eq 4.12" : spec.kind == ConnectionKind::SSNM ? "Eq 3.8" : "Eq 2.26";
  const auto& idx = dist.indices();
  const auto& perp = dist.complement();

  for (int a : idx)
    for (int b : idx) {
      VectorField X = G.frame(a), Y = G.frame(b);
      VectorField br = G.bracket(X, Y);
      VectorField brp = G.on_perp(br), brd = G.on_D(br);
      for (int r : perp) {
        VectorField xi = G.frame(r);
        VectorField Rxy = G.curvature(X, Y, xi);
        VectorField RL = G.L_perp(X, G.L_perp(Y, xi)) - G.L_perp(Y, G.L_perp(X, xi)) - G.L_perp(brd, xi) -
                         G.on_perp(G.nabla(brp, xi));
        if (spec.statistical()) {
          VectorField asx = G.A_stat_star(xi, X), asy = G.A_stat_star(xi, Y);
          for (int q : perp) {
            VectorField eta = G.frame(q);
            ScalarExpr lhs = G.g(Rxy, eta);
            ScalarExpr rhs = G.g(G.A_stat(eta, Y), asx) - G.g(G.A_stat(eta, X), asy) + G.g(RL, eta);
            rep.add({a, b, r, q}, s.max_abs(lhs - rhs));
          }
        } else {
          VectorField lhs = G.on_perp(Rxy);
          VectorField rhs = -G.B(X, G.A_tilde(xi, Y)) + G.B(Y, G.A_tilde(xi, X)) + RL;
          rep.add({a, b, r}, max_abs(s, lhs - rhs));
        }
      }
    }
  rep.finish(tol_of(dist));
  return rep;
}

ScalarExpr sectional(const Distribution& dist, const ConnectionSpec& spec, int i, int j) {
  if (i == j) throw SamePlane("a plane needs two distinct frame indices");
  if (!dist.contains(i) || !dist.contains(j)) throw NotTangent("plane indices must lie in the distribution");
  InducedGeometry G(dist, spec);
  return sectional_of(G, G.unit(i), G.unit(j));
}

ScalarExpr scalar_tau(const Distribution& dist, const ConnectionSpec& spec) {
  InducedGeometry G(dist, spec);
  ScalarExpr tau;
  for (int i : dist.indices())
    for (int j : dist.indices()) {
      if (i == j) continue;
      VectorField u = G.unit(i), v = G.unit(j);
      tau += rd4(G, u, v, v, u);
    }
  return rational(1, 2) * tau;
}

RicciD ricci_D(const Distribution& dist, const ConnectionSpec& spec) {
  InducedGeometry G(dist, spec);
  RicciD out;
  out.indices = dist.indices();
  const auto& idx = dist.indices();
  for (int a : idx) {
    std::vector<ScalarExpr> row;
    for (int b : idx) {
      ScalarExpr sum;
      for (int k : idx) {
        VectorField uk = G.unit(k);
        sum += G.g(G.curvature_D(G.frame(a), uk, G.frame(b)), uk);
      }
      row.push_back(sum);
    }
    out.ric.push_back(std::move(row));
  }
  for (std::size_t a = 0; a < idx.size(); ++a) out.scalar += out.ric[a][a] / dist.manifold().metric(idx[a]);
  return out;
}

MixedRicciFlat is_mixed_ricci_flat(const Distribution& dist, const ConnectionSpec& spec) {
  RicciD r = ricci_D(dist, spec);
  Sampler s(dist.manifold().plan());
  MixedRicciFlat out;
  const std::size_t n = r.indices.size();
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b) out.max_offdiagonal = std::max(out.max_offdiagonal, s.max_abs(r.ric[a][b]));
  out.flat = out.max_offdiagonal <= tol_of(dist);
  return out;
}

CheckReport tensoriality(const Distribution& dist, const ConnectionSpec& spec) {
  InducedGeometry G(dist, spec);
  Sampler s(dist.manifold().plan());
  CheckReport rep;
  rep.identity = "tensoriality";
  rep.label = "Eq 2.13";
  const ScalarExpr phi = ScalarExpr(1) + pow(ScalarExpr::t(), 2);
  const auto& idx = dist.indices();
  for (int a : idx)
    for (int b : idx)
      for (int c : idx) {
        VectorField X = G.frame(a), Y = G.frame(b), Z = G.frame(c);
        VectorField r1 = G.curvature_D(phi * X, Y, Z) - phi * G.curvature_D(X, Y, Z);
        VectorField r3 = G.curvature_D(X, Y, phi * Z) - phi * G.curvature_D(X, Y, Z);
        rep.add({a, b, c}, std::max(max_abs(s, r1), max_abs(s, r3)));
      }
  rep.finish(tol_of(dist));
  return rep;
}

CheckReport antisymmetry(const Distribution& dist, const ConnectionSpec& spec) {
  InducedGeometry G(dist, spec);
  Sampler s(dist.manifold().plan());
  CheckReport rep;
  rep.identity = "antisymmetry";
  rep.label = "Eq 2.13";
  const auto& idx = dist.indices();
  for (int a : idx)
    for (int b : idx)
      for (int c : idx) {
        VectorField X = G.frame(a), Y = G.frame(b), Z = G.frame(c);
        rep.add({a, b, c}, max_abs(s, G.curvature_D(X, Y, Z) + G.curvature_D(Y, X, Z)));
      }
  rep.finish(tol_of(dist));
  return rep;
}

CheckReport rotation_invariance(const Distribution& dist, const ConnectionSpec& spec, double angle) {
  InducedGeometry G(dist, spec);
  Sampler s(dist.manifold().plan());
  CheckReport rep;
  rep.identity = "rotation";
  rep.label = "Eq 2.35";
  const ScalarExpr cs(std::cos(angle)), sn(std::sin(angle));
  const auto& idx = dist.indices();
  for (std::size_t p = 0; p < idx.size(); ++p)
    for (std::size_t q = p + 1; q < idx.size(); ++q) {
      VectorField u = G.unit(idx[p]), v = G.unit(idx[q]);
      VectorField ru = cs * u + sn * v, rv = -sn * u + cs * v;
      rep.add({idx[p], idx[q]}, s.max_abs(sectional_of(G, ru, rv) - sectional_of(G, u, v)));
    }
  rep.finish(1e-8);
  return rep;
}

CheckReport reduction(const Distribution& dist, const ConnectionSpec& spec, double tol) {
  InducedGeometry G(dist, spec);
  InducedGeometry L(dist, ConnectionSpec::levi_civita());
  Sampler s(dist.manifold().plan());
  CheckReport rep;
  rep.identity = "reduction";
  rep.label = spec.statistical() ? "K = 0" : "U = 0";
  const auto& idx = dist.indices();
  for (int a : idx)
    for (int b : idx) {
      VectorField X = G.frame(a), Y = G.frame(b);
      double r = std::max(max_abs(s, G.nabla_D(X, Y) - L.nabla_D(X, Y)), max_abs(s, G.B(X, Y) - L.B(X, Y)));
      for (int c : idx) {
        VectorField Z = G.frame(c);
        r = std::max(r, max_abs(s, G.curvature_D(X, Y, Z) - L.curvature_D(X, Y, Z)));
      }
      if (a < b) r = std::max(r, s.max_abs(sectional_of(G, G.unit(a), G.unit(b)) - sectional_of(L, L.unit(a), L.unit(b))));
      rep.add({a, b}, r);
    }
  for (int x : dist.complement())
    for (int a : idx) {
      VectorField xi = G.frame(x), X = G.frame(a);
      VectorField A = spec.semi_symmetric() ? G.A_tilde(xi, X) : spec.statistical() ? G.A_stat(xi, X) : G.A_lc(xi, X);
      double r = std::max(max_abs(s, A - L.A_lc(xi, X)), max_abs(s, G.L_perp(X, xi) - L.L_perp(X, xi)));
      if (spec.statistical()) r = std::max(r, max_abs(s, G.A_stat_star(xi, X) - L.A_lc(xi, X)));
      rep.add({x, a}, r);
    }
  rep.add({}, s.max_abs(ricci_D(dist, spec).scalar - ricci_D(dist, ConnectionSpec::levi_civita()).scalar));
  rep.finish(tol);
  return rep;
}

ScalarExpr ambient_sectional(const FrameManifold& M, int i, int j) {
  if (i == j) throw SamePlane("a plane needs two distinct frame indices");
  Calculus calc(M);
  VectorField u = calc.unit(static_cast<std::size_t>(i)), v = calc.unit(static_cast<std::size_t>(j));
  return calc.inner(calc.curvature(M.levi_civita(), u, v, v), u);
}

}  // namespace distgeo
