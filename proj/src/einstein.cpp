#include "distgeo/einstein.hpp"

#include <cmath>
#include <cstdio>

#include "distgeo/catalog.hpp"
#include "distgeo/curvature.hpp"
#include "distgeo/errors.hpp"

namespace distgeo {

namespace {

ScalarCheck finish(double residual, double tol) {
  ScalarCheck c;
  c.residual = residual;
  c.tolerance = tol;
  c.pass = std::isfinite(residual) && residual < tol;
  return c;
}

double max_over(Sampler& s, const ScalarExpr& e) {
  double m = 0.0;
  for (double v : s.values(e)) {
    if (std::isnan(v)) return v;
    m = std::max(m, std::fabs(v));
  }
  return m;
}

// Largest zero-free, sign-constant run of a on the default window.
// Values that fail to evaluate count as zeros.
std::optional<std::pair<double, double>> zero_free_window(const ScalarExpr& a) {
  const double lo = 0.1, hi = 2.1;
  const int n = 2000;
  std::optional<std::pair<double, double>> best;
  double start = 0.0, prev_t = lo, prev_v = 0.0;
  bool in_run = false;
  auto close = [&](double end) {
    if (!best || end - start > best->second - best->first) best = std::make_pair(start, end);
    in_run = false;
  };
  for (int k = 0; k <= n; ++k) {
    double t = lo + (hi - lo) * k / n;
    double v = 0.0;
    try {
      v = eval(a, t);
    } catch (const DomainError&) {
      v = 0.0;
    }
    bool ok = std::isfinite(v) && std::fabs(v) > 1e-6;
    if (in_run && (!ok || (v > 0) != (prev_v > 0))) close(prev_t);
    if (ok && !in_run) {
      in_run = true;
      start = t;
    }
    prev_t = t;
    prev_v = v;
  }
  if (in_run) close(hi);
  return best;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

ScalarCheck is_einstein(const Distribution& dist, const ConnectionSpec& spec, double c0) {
  RicciD r = ricci_D(dist, spec);
  const FrameManifold& M = dist.manifold();
  Calculus calc(M);
  Sampler s(M.plan());
  double worst = 0.0;
  const auto& idx = r.indices;
  for (std::size_t a = 0; a < idx.size(); ++a)
    for (std::size_t b = 0; b < idx.size(); ++b) {
      ScalarExpr e = r.ric[a][b] * calc.inv_sqrt_metric(idx[a]) * calc.inv_sqrt_metric(idx[b]);
      if (a == b) e = e - ScalarExpr(c0);
      double v = max_over(s, e);
      if (std::isnan(v) || v > worst) worst = v;
    }
  return finish(worst, M.plan().abs_tol);
}

double estimate_einstein_constant(const Distribution& dist, const ConnectionSpec& spec) {
  RicciD r = ricci_D(dist, spec);
  const FrameManifold& M = dist.manifold();
  return eval(r.ric[0][0] / M.metric(r.indices[0]), M.plan().points.front());
}

ScalarCheck has_constant_scalar(const Distribution& dist, const ConnectionSpec& spec, double lambda0) {
  RicciD r = ricci_D(dist, spec);
  Sampler s(dist.manifold().plan());
  return finish(max_over(s, r.scalar - ScalarExpr(lambda0)), dist.manifold().plan().abs_tol);
}

std::vector<std::string> family_labels() {
  return {"thm5.1/1", "thm5.1/2", "thm5.1/3", "thm5.3/1", "thm5.3/2", "thm5.4/1", "thm5.4/2", "thm5.4/3",
          "thm5.5/1", "thm5.5/2", "thm5.5/3", "thm5.6/1", "thm5.6/2", "thm5.6/3"};
}

std::string family_display(const std::string& label) {
  const std::string c = "c₀", l = "λ₀";
  static const std::vector<std::pair<std::string, std::string>> shown{
      {"thm5.1/1", c + " = 0"},   {"thm5.1/2", c + " > 0"},       {"thm5.1/3", c + " < 0"},
      {"thm5.3/1", c + " = 0"},   {"thm5.3/2", c + " > 0"},       {"thm5.4/1", l + " = 0"},
      {"thm5.4/2", l + " > 0"},   {"thm5.4/3", l + " < 0"},       {"thm5.5/1", l + " = −2/3"},
      {"thm5.5/2", l + " > −2/3"}, {"thm5.5/3", l + " < −2/3"},    {"thm5.6/1", l + " = 0"},
      {"thm5.6/2", l + " > 0"},   {"thm5.6/3", l + " < 0"}};
  for (const auto& [k, v] : shown)
    if (k == label) return label + " (" + v + ")";
  throw InvalidArgument("unknown family '" + label + "'");
}

SolutionFamily family(const std::string& theorem, int case_index, const FamilyParams& p) {
  return family(theorem + "/" + std::to_string(case_index), p);
}

SolutionFamily family(const std::string& label, const FamilyParams& p) {
  family_display(label);  // validates the label
  SolutionFamily F;
  F.label = label;
  F.theorem = label.substr(0, label.find('/'));
  F.case_index = std::stoi(label.substr(label.find('/') + 1));
  F.c1 = p.c1;
  F.c2 = p.c2;
  const double c1 = p.c1, c2 = p.c2;
  const ScalarExpr t = ScalarExpr::t();
  const int k = F.case_index;
  auto need = [&](bool ok, const std::string& what) {
    if (!ok) throw ConstraintViolated(label + ": " + what);
  };
  auto constant = [&](std::optional<double> fixed) {
    if (fixed) {
      need(!p.constant || std::fabs(*p.constant - *fixed) < 1e-12, "the case fixes the constant");
      return *fixed;
    }
    need(p.constant.has_value(), "the constant must be given");
    return *p.constant;
  };

  if (F.theorem == "thm5.1" || F.theorem == "thm5.3") {
    F.constant_name = "c0";
    F.einstein = true;
    F.preset = F.theorem == "thm5.1" ? "warped-sphere" : "warped-heisenberg";
    const bool sph = F.theorem == "thm5.1";
    if (k == 1) {
      F.constant = constant(0.0);
      if (sph) {
        need(std::fabs(std::fabs(c2) - 2.0) < 1e-12, "slope c2 must be 2 or -2");
        F.f = ScalarExpr(c2) * t + ScalarExpr(c1);
      } else {
        need(c1 != 0.0, "c1 must be nonzero");
        F.f = ScalarExpr(c1);
      }
    } else if (k == 2) {
      F.constant = constant(std::nullopt);
      need(F.constant > 0, "c0 must be positive");
      ScalarExpr a = ScalarExpr(std::sqrt(F.constant / 2)) * t;
      if (sph) {
        need(c2 != 0.0, "c2 must be nonzero");
        F.f = ScalarExpr(-2.0 / (c2 * F.constant)) * exp(a) + ScalarExpr(c2) * exp(-a);
      } else {
        need((c1 == 0.0) != (c2 == 0.0), "exactly one of c1, c2 is nonzero");
        F.f = c1 != 0.0 ? ScalarExpr(c1) * exp(a) : ScalarExpr(c2) * exp(-a);
      }
    } else {
      need(sph && k == 3, "no such case");
      F.constant = constant(std::nullopt);
      need(F.constant < 0, "c0 must be negative");
      need(std::fabs(c1 * c1 + c2 * c2 + 8.0 / F.constant) < 1e-9, "c1^2 + c2^2 must equal -8/c0");
      ScalarExpr a = ScalarExpr(std::sqrt(-F.constant / 2)) * t;
      F.f = ScalarExpr(c1) * cos(a) + ScalarExpr(c2) * sin(a);
    }
  } else {
    F.constant_name = "lambda0";
    F.preset = "warped-heisenberg";
    F.kind = F.theorem == "thm5.5" ? ConnectionKind::SSM
             : F.theorem == "thm5.6" ? ConnectionKind::SSNM
                                     : ConnectionKind::LC;
    need(c1 != 0.0 || c2 != 0.0, "c1 and c2 cannot both vanish");
    if (F.theorem == "thm5.5") {
      const ScalarExpr decay = exp(ScalarExpr(-0.5) * t);
      if (k == 1) {
        F.constant = constant(-2.0 / 3.0);
        F.w = (ScalarExpr(c1) + ScalarExpr(c2) * t) * decay;
      } else if (k == 2) {
        F.constant = constant(std::nullopt);
        need(F.constant > -2.0 / 3.0, "lambda0 must exceed -2/3");
        double r = std::sqrt(1 + 1.5 * F.constant);
        F.w = ScalarExpr(c1) * exp(ScalarExpr((-1 + r) / 2) * t) + ScalarExpr(c2) * exp(ScalarExpr((-1 - r) / 2) * t);
      } else {
        F.constant = constant(std::nullopt);
        need(F.constant < -2.0 / 3.0, "lambda0 must be below -2/3");
        ScalarExpr b = ScalarExpr(std::sqrt(-(1 + 1.5 * F.constant)) / 2) * t;
        F.w = decay * (ScalarExpr(c1) * cos(b) + ScalarExpr(c2) * sin(b));
      }
    } else {
      if (k == 1) {
        F.constant = constant(0.0);
        F.w = ScalarExpr(c2) * t + ScalarExpr(c1);
      } else if (k == 2) {
        F.constant = constant(std::nullopt);
        need(F.constant > 0, "lambda0 must be positive");
        ScalarExpr a = ScalarExpr(std::sqrt(3 * F.constant / 8)) * t;
        F.w = ScalarExpr(c1) * exp(a) + ScalarExpr(c2) * exp(-a);
      } else {
        F.constant = constant(std::nullopt);
        need(F.constant < 0, "lambda0 must be negative");
        ScalarExpr a = ScalarExpr(std::sqrt(-3 * F.constant / 8)) * t;
        F.w = ScalarExpr(c1) * cos(a) + ScalarExpr(c2) * sin(a);
      }
    }
    F.f = pow(F.w, Rational{2, 3});
  }

  // f = w^(2/3) needs w > 0 for the real branch used by the substitution.
  const ScalarExpr& probe = F.w.is_zero() ? F.f : F.w;
  auto win = zero_free_window(probe);
  if (!win) throw ZeroWarp(label + ": f vanishes on the whole default window");
  if (!F.w.is_zero() && eval(F.w, (win->first + win->second) / 2) < 0)
    throw ConstraintViolated(label + ": w = f^(3/2) must be positive");
  const SamplePlan def = SamplePlan::standard();
  if (win->first <= def.points.front() + 1e-12 && win->second >= def.points.back() - 1e-12) {
    F.plan = SamplePlan::uniform(def.points.front(), def.points.back(), 17, 1e-8, 1e-8);
  } else {
    const double margin = 0.05;
    double a = win->first + (win->first > def.points.front() ? margin : 0.0);
    double b = win->second - (win->second < def.points.back() ? margin : 0.0);
    a = std::round(a * 100) / 100;
    b = std::round(b * 100) / 100;
    F.plan = SamplePlan::uniform(a, b, 17, 1e-8, 1e-8);
    F.window_note = "window moved to [" + fmt(a) + ", " + fmt(b) + "] to avoid a zero of f";
  }
  return F;
}

std::vector<OdeResidual> ode_residuals(const SolutionFamily& F) {
  Sampler s(F.plan);
  Differentiator d;
  const ScalarExpr& f = F.f;
  ScalarExpr fp = d(f), fpp = d(fp);
  const ScalarExpr c(F.constant);
  std::vector<OdeResidual> out;
  auto add = [&](const std::string& name, const ScalarExpr& e) { out.push_back({name, max_over(s, e)}); };
  if (F.theorem == "thm5.1") {
    add("Eq 5.22", fpp - c / ScalarExpr(2) * f);
    add("Eq 5.23", f * fpp + fp * fp - ScalarExpr(4) - c * f * f);
  } else if (F.theorem == "thm5.3") {
    add("Eq 5.52", fpp - c / ScalarExpr(2) * f);
    add("Eq 5.53", f * fpp + fp * fp - c * f * f);
  } else {
    ScalarExpr w = pow(f, Rational{3, 2});
    ScalarExpr wp = d(w), wpp = d(wp);
    const ScalarExpr k = ScalarExpr(3.0 / 8.0) * c;
    if (F.theorem == "thm5.5") {
      add("Eq 5.58", ScalarExpr(4) * fpp / f + ScalarExpr(4) * fp / f + ScalarExpr(2) * fp * fp / (f * f) - c);
      add("w'' + w' - 3/8 lambda0 w", wpp + wp - k * w);
    } else {
      add("Eq 5.54", ScalarExpr(4) * fpp / f + ScalarExpr(2) * fp * fp / (f * f) - c);
      add("w'' - 3/8 lambda0 w", wpp - k * w);
    }
  }
  return out;
}

Distribution family_distribution(const SolutionFamily& F, const ScalarExpr& f) {
  ManifoldPtr M = F.preset == "warped-sphere" ? warped_sphere(f, F.plan) : warped_heisenberg(f, F.plan);
  return Distribution(M, {0, 1, 2});
}

ConnectionSpec family_connection(const SolutionFamily& F) {
  VectorField U = VectorField::basis(4, 0);
  switch (F.kind) {
    case ConnectionKind::SSM: return ConnectionSpec::ssm(U);
    case ConnectionKind::SSNM: return ConnectionSpec::ssnm(U);
    default: return ConnectionSpec::levi_civita();
  }
}

FamilyCheck verify_family(const SolutionFamily& F) {
  FamilyCheck out;
  out.fam = F;
  out.odes = ode_residuals(F);
  for (const auto& o : out.odes)
    if (std::isnan(o.residual) || o.residual > out.ode_max) out.ode_max = o.residual;
  ConnectionSpec spec = family_connection(F);
  auto run = [&](const ScalarExpr& f) {
    Distribution D = family_distribution(F, f);
    return F.einstein ? is_einstein(D, spec, F.constant) : has_constant_scalar(D, spec, F.constant);
  };
  out.check = run(F.f);
  out.perturbed = run(F.f + ScalarExpr(0.1));
  out.pass = out.ode_max < 1e-8 && out.check.pass && out.perturbed.residual > 1e-3;
  return out;
}

std::vector<SolutionFamily> default_family_draws() {
  struct Draw {
    const char* label;
    FamilyParams p;
  };
  const std::vector<Draw> draws{
      {"thm5.1/1", {std::nullopt, 1, 2}},        {"thm5.1/1", {std::nullopt, 5, -2}},
      {"thm5.1/2", {2.0, 0, -1}},                {"thm5.1/2", {1.0, 0, -0.5}},
      {"thm5.1/3", {-0.5, 4, 0}},                {"thm5.1/3", {-2.0, 0, 2}},
      {"thm5.1/3", {-8.0, 0.6, 0.8}},            {"thm5.3/1", {std::nullopt, 1, 0}},
      {"thm5.3/1", {std::nullopt, -3, 0}},       {"thm5.3/2", {2.0, 1, 0}},
      {"thm5.3/2", {0.5, 0, 2}},                 {"thm5.4/1", {std::nullopt, 1, 2}},
      {"thm5.4/1", {std::nullopt, 3, -1}},       {"thm5.4/2", {8.0 / 3.0, 1, 0}},
      {"thm5.4/2", {2.0 / 3.0, 1, 1}},           {"thm5.4/3", {-8.0 / 3.0, 1, 1}},
      {"thm5.4/3", {-2.0 / 3.0, 0, 1}},          {"thm5.5/1", {std::nullopt, 1, 1}},
      {"thm5.5/1", {std::nullopt, 2, -0.5}},     {"thm5.5/2", {0.0, 1, 1}},
      {"thm5.5/2", {2.0, 1, 2}},                 {"thm5.5/3", {-2.0, 0, 1}},
      {"thm5.5/3", {-4.0 / 3.0, 1, 1}},          {"thm5.6/1", {std::nullopt, 1, 2}},
      {"thm5.6/1", {std::nullopt, 3, -1}},       {"thm5.6/2", {8.0 / 3.0, 1, 0}},
      {"thm5.6/2", {2.0 / 3.0, 1, 1}},           {"thm5.6/3", {-8.0 / 3.0, 1, 1}},
      {"thm5.6/3", {-2.0 / 3.0, 0, 1}},
  };
  std::vector<SolutionFamily> out;
  for (const auto& d : draws) out.push_back(family(d.label, d.p));
  return out;
}

}  // namespace distgeo
