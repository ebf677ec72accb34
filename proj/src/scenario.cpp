#include "distgeo/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "distgeo/catalog.hpp"
#include "distgeo/chen.hpp"
#include "distgeo/connections.hpp"
#include "distgeo/curvature.hpp"
#include "distgeo/einstein.hpp"
#include "json.hpp"

namespace distgeo {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{
      "gauss",     "codazzi",          "ricci",         "characterization", "induced", "weingarten",
      "tensoriality", "antisymmetry",  "rotation",      "reduction",        "predicates", "integrability",
      "mixed_ricci_flat", "einstein",  "csc",           "golden",           "chen_first", "chen_ricci",
      "family",    "random"};
  return names;
}

[[noreturn]] void fail(const std::string& where, const std::string& what) { throw ScenarioError(where + ": " + what); }

struct Scenario {
  json echo;
  std::string name;
  std::string preset;  // empty for inline manifolds
  std::string f_text;
  ManifoldPtr M;
  Bindings bindings;
  std::vector<GoldenBlock> golden;
  std::vector<int> distribution;  // 0-based
  ConnectionSpec spec;
  std::optional<double> declared_c, c0, lambda0;
  std::vector<int> plane;  // 0-based
  std::vector<double> X;
  std::optional<SolutionFamily> fam;
  std::map<std::string, bool> expect;
  std::vector<std::string> checks;
  double angle = 0.7;
  int random_draws = 5;
};

ScalarExpr expr_at(const json& v, const std::string& where, const Bindings& b) {
  if (v.is_number()) return ScalarExpr(v.get<double>());
  if (!v.is_string()) fail(where, "expected an expression string or a number");
  const std::string text = v.get<std::string>();
  try {
    return parse_expr(text, b);
  } catch (const ParseError& e) {
    fail(where, std::string(e.what()) + " in \"" + text + "\"");
  }
}

double number_at(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  return v.get<double>();
}

int index_at(const json& v, const std::string& where, std::size_t m) {
  if (!v.is_number_integer()) fail(where, "expected a 1-based integer index");
  const long long i = v.get<long long>();
  if (i < 1 || i > static_cast<long long>(m)) fail(where, "index " + std::to_string(i) + " outside 1.." + std::to_string(m));
  return static_cast<int>(i - 1);
}

const json& array_at(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_array()) fail(key, "expected an array");
  return v;
}

SamplePlan parse_plan(const json& p) {
  if (!p.is_object()) fail("sample_plan", "expected an object");
  SamplePlan plan = SamplePlan::standard();
  if (p.contains("points")) {
    plan.points.clear();
    for (std::size_t k = 0; k < array_at(p, "points").size(); ++k)
      plan.points.push_back(number_at(p["points"][k], "sample_plan.points[" + std::to_string(k) + "]"));
  } else if (p.contains("first") || p.contains("last") || p.contains("count")) {
    if (!p.contains("first") || !p.contains("last") || !p.contains("count"))
      fail("sample_plan", "uniform plans need first, last and count");
    if (!p["count"].is_number_integer()) fail("sample_plan.count", "expected an integer");
    plan = SamplePlan::uniform(number_at(p["first"], "sample_plan.first"), number_at(p["last"], "sample_plan.last"),
                               p["count"].get<int>());
  }
  if (p.contains("abs_tol")) plan.abs_tol = number_at(p["abs_tol"], "sample_plan.abs_tol");
  if (p.contains("rel_tol")) plan.rel_tol = number_at(p["rel_tol"], "sample_plan.rel_tol");
  plan.validate();
  return plan;
}

ManifoldPtr inline_manifold(const json& j, const SamplePlan& plan) {
  for (const char* key : {"metric", "structure"})
    if (!j.contains(key)) fail("manifold", std::string("inline manifolds need '") + key + "'");
  const json& metric = array_at(j, "metric");
  const std::size_t m = metric.size();
  if (m < 2) fail("manifold.metric", "need at least two frame fields");
  std::vector<ScalarExpr> g, w;
  for (std::size_t i = 0; i < m; ++i) g.push_back(expr_at(metric[i], "manifold.metric[" + std::to_string(i) + "]", {}));
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : array_at(j, "labels")) labels.push_back(l.get<std::string>());
    if (labels.size() != m) fail("manifold.labels", "need one label per frame field");
  } else {
    for (std::size_t i = 0; i < m; ++i) labels.push_back("E" + std::to_string(i + 1));
  }
  if (j.contains("weights")) {
    const json& ws = array_at(j, "weights");
    if (ws.size() != m) fail("manifold.weights", "need one weight per frame field");
    for (std::size_t i = 0; i < m; ++i) w.push_back(expr_at(ws[i], "manifold.weights[" + std::to_string(i) + "]", {}));
  } else {
    w.assign(m, ScalarExpr(0));
  }
  Tensor3 c(m);
  const json& st = array_at(j, "structure");
  for (std::size_t k = 0; k < st.size(); ++k) {
    const std::string where = "manifold.structure[" + std::to_string(k) + "]";
    const json& e = st[k];
    if (!e.is_array() || e.size() != 4) fail(where, "expected [i, j, k, expr]");
    int a = index_at(e[0], where, m), b = index_at(e[1], where, m), r = index_at(e[2], where, m);
    if (a == b) fail(where, "[E_i, E_i] is zero");
    ScalarExpr v = expr_at(e[3], where, {});
    c(a, b, r) = v;
    c(b, a, r) = -v;
  }
  std::string name = j.contains("name") ? j["name"].get<std::string>() : "inline";
  return std::make_shared<const FrameManifold>(name, labels, g, c, w, plan);
}

ConnectionSpec parse_connection(const json& c, const FrameManifold& M, const Bindings& b) {
  if (!c.is_object() || !c.contains("kind")) fail("connection", "expected an object with 'kind'");
  ConnectionKind kind;
  try {
    kind = connection_kind_from_string(c["kind"].get<std::string>());
  } catch (const Error& e) {
    fail("connection.kind", e.what());
  }
  const std::size_t m = M.dim();
  ConnectionSpec spec;
  spec.kind = kind;
  if (spec.semi_symmetric()) {
    if (!c.contains("U")) fail("connection", "ssm and ssnm need U");
    const json& u = array_at(c, "U");
    if (u.size() != m) fail("connection.U", "need " + std::to_string(m) + " coefficients");
    spec.U = VectorField(m);
    for (std::size_t i = 0; i < m; ++i) spec.U[i] = expr_at(u[i], "connection.U[" + std::to_string(i) + "]", b);
  }
  if (spec.statistical()) {
    const bool hasK = c.contains("K"), hasC = c.contains("C");
    if (hasK == hasC) fail("connection", "statistical kinds need exactly one of K or C");
    const char* key = hasK ? "K" : "C";
    Tensor3 t(m);
    const json& es = array_at(c, key);
    for (std::size_t k = 0; k < es.size(); ++k) {
      const std::string where = std::string("connection.") + key + "[" + std::to_string(k) + "]";
      const json& e = es[k];
      if (!e.is_array() || e.size() != 4) fail(where, "expected [a, b, c, expr]");
      int i = index_at(e[0], where, m), j = index_at(e[1], where, m), l = index_at(e[2], where, m);
      ScalarExpr v = expr_at(e[3], where, b);
      if (hasK) {
        t(i, j, l) = v;
      } else {
        int p[3] = {i, j, l};
        std::sort(p, p + 3);
        do t(p[0], p[1], p[2]) = v;
        while (std::next_permutation(p, p + 3));
      }
    }
    spec.K = hasK ? t : cubic_form_to_K(M, t);
  }
  for (const auto& [key, v] : c.items())
    if (key != "kind" && key != "U" && key != "K" && key != "C") fail("connection", "unknown key '" + key + "'");
  validate_spec(M, spec);
  return spec;
}

Scenario load(const std::string& text, const std::string& default_name) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ScenarioError("scenario JSON: byte " + std::to_string(e.byte) + ": " + e.what());
  }
  if (!j.is_object()) fail("scenario", "expected a JSON object");
  static const std::set<std::string> allowed{"name",       "description", "manifold", "f",      "dim",    "twist",
                                             "sample_plan", "distribution", "connection", "declared_c", "c0",
                                             "lambda0",    "plane",       "X",        "family", "expect", "checks",
                                             "angle",      "random_draws"};
  for (const auto& [key, v] : j.items())
    if (!allowed.count(key)) fail("scenario", "unknown key '" + key + "'");

  Scenario s;
  s.echo = j;
  s.name = j.contains("name") ? j["name"].get<std::string>() : default_name;

  if (!j.contains("checks")) fail("scenario", "missing 'checks'");
  const auto& names = known_checks();
  for (const auto& c : array_at(j, "checks")) {
    if (!c.is_string()) fail("checks", "expected check names");
    std::string n = c.get<std::string>();
    if (std::find(names.begin(), names.end(), n) == names.end()) fail("checks", "unknown check '" + n + "'");
    s.checks.push_back(n);
  }
  if (s.checks.empty()) fail("checks", "no checks requested");

  try {
    SamplePlan plan = j.contains("sample_plan") ? parse_plan(j["sample_plan"]) : SamplePlan::standard();

    if (j.contains("family")) {
      const json& fj = j["family"];
      if (!fj.is_object() || !fj.contains("label")) fail("family", "expected an object with 'label'");
      FamilyParams p;
      if (fj.contains("constant")) p.constant = number_at(fj["constant"], "family.constant");
      if (fj.contains("c1")) p.c1 = number_at(fj["c1"], "family.c1");
      if (fj.contains("c2")) p.c2 = number_at(fj["c2"], "family.c2");
      s.fam = family(fj["label"].get<std::string>(), p);
    }
    const bool only_family = std::all_of(s.checks.begin(), s.checks.end(), [](const auto& c) { return c == "family"; });
    if (std::find(s.checks.begin(), s.checks.end(), "family") != s.checks.end() && !s.fam)
      fail("checks", "'family' needs a family block");
    if (!j.contains("manifold")) {
      if (only_family) return s;
      fail("scenario", "missing 'manifold'");
    }

    const json& mj = j["manifold"];
    if (mj.is_string()) {
      s.preset = mj.get<std::string>();
      const auto ps = preset_names();
      if (std::find(ps.begin(), ps.end(), s.preset) == ps.end()) fail("manifold", "unknown preset '" + s.preset + "'");
      const bool warped = s.preset.rfind("warped-", 0) == 0;
      std::optional<ScalarExpr> f;
      if (j.contains("f")) {
        if (!warped) fail("f", "only the warped presets take a warping function");
        f = expr_at(j["f"], "f", {});
        s.f_text = j["f"].is_string() ? j["f"].get<std::string>() : j["f"].dump();
      } else if (warped) {
        s.f_text = "2*t+1";
      }
      std::size_t dim = 5;
      if (j.contains("dim")) {
        if (s.preset != "flat" || !j["dim"].is_number_integer()) fail("dim", "only the flat preset takes an integer dim");
        dim = j["dim"].get<std::size_t>();
      }
      ScenarioPreset p = make_preset(s.preset, f, plan, dim);
      if (j.contains("twist")) {
        if (s.preset != "flat") fail("twist", "only the flat preset takes a twist");
        p.manifold = flat_frame(dim, number_at(j["twist"], "twist"), plan);
      }
      s.M = p.manifold;
      s.bindings = p.bindings;
      s.golden = p.golden;
      s.distribution = p.distribution;
      s.spec = p.connection;
      s.declared_c = p.declared_c;
    } else if (mj.is_object()) {
      for (const char* key : {"f", "dim", "twist"})
        if (j.contains(key)) fail(key, "only presets take this key");
      s.M = inline_manifold(mj, plan);
      if (!j.contains("distribution")) fail("scenario", "inline manifolds need 'distribution'");
    } else {
      fail("manifold", "expected a preset name or an inline manifold object");
    }
    const std::size_t m = s.M->dim();

    if (j.contains("distribution")) {
      s.distribution.clear();
      const json& d = array_at(j, "distribution");
      for (std::size_t k = 0; k < d.size(); ++k)
        s.distribution.push_back(index_at(d[k], "distribution[" + std::to_string(k) + "]", m));
      std::set<int> uniq(s.distribution.begin(), s.distribution.end());
      if (uniq.size() != s.distribution.size()) fail("distribution", "repeated index");
      if (uniq.empty() || uniq.size() >= m) fail("distribution", "need a proper nonempty set of frame indices");
    }
    if (j.contains("connection")) s.spec = parse_connection(j["connection"], *s.M, s.bindings);
    if (j.contains("declared_c")) s.declared_c = number_at(j["declared_c"], "declared_c");
    if (j.contains("c0")) s.c0 = number_at(j["c0"], "c0");
    if (j.contains("lambda0")) s.lambda0 = number_at(j["lambda0"], "lambda0");
    if (j.contains("angle")) s.angle = number_at(j["angle"], "angle");
    if (j.contains("random_draws")) {
      if (!j["random_draws"].is_number_integer() || j["random_draws"].get<int>() < 1)
        fail("random_draws", "expected a positive integer");
      s.random_draws = j["random_draws"].get<int>();
    }
    if (j.contains("plane")) {
      const json& pl = array_at(j, "plane");
      if (pl.size() != 2) fail("plane", "expected two indices");
      for (std::size_t k = 0; k < 2; ++k) s.plane.push_back(index_at(pl[k], "plane[" + std::to_string(k) + "]", m));
    }
    if (j.contains("X")) {
      const json& x = array_at(j, "X");
      for (std::size_t k = 0; k < x.size(); ++k) s.X.push_back(number_at(x[k], "X[" + std::to_string(k) + "]"));
      if (s.X.size() != s.distribution.size()) fail("X", "need one coefficient per distribution index");
    }
    if (j.contains("expect")) {
      if (!j["expect"].is_object()) fail("expect", "expected an object of check name to boolean");
      for (const auto& [key, v] : j["expect"].items()) {
        if (std::find(s.checks.begin(), s.checks.end(), key) == s.checks.end())
          fail("expect", "'" + key + "' is not among the requested checks");
        if (!v.is_boolean()) fail("expect." + key, "expected a boolean");
        s.expect[key] = v.get<bool>();
      }
    }

    for (const auto& c : s.checks) {
      if (c == "characterization" && !s.spec.semi_symmetric()) fail("checks", "characterization needs ssm or ssnm");
      if (c == "csc" && !s.lambda0) fail("checks", "csc needs lambda0");
      if ((c == "chen_first" || c == "chen_ricci") && !s.declared_c) fail("checks", c + " needs declared_c");
      if (c == "chen_first" && s.plane.empty()) fail("checks", "chen_first needs plane");
      if (c == "chen_ricci" && s.X.empty()) fail("checks", "chen_ricci needs X");
    }
  } catch (const ScenarioError&) {
    throw;
  } catch (const Error& e) {
    throw ScenarioError(std::string("scenario: ") + e.what());
  }
  return s;
}

// One check outcome before the expectation is applied.
struct CheckOut {
  std::string name;
  std::string label;
  std::string target;
  bool outcome = true;
  double max_residual = 0.0;
  double mean_residual = 0.0;
  double tolerance = 0.0;
  std::size_t tuples = 0;
  json details = json::object();
};

CheckOut from_report(const std::string& name, const std::string& target, const CheckReport& r) {
  CheckOut o;
  o.name = name;
  o.label = r.label;
  o.target = target;
  o.outcome = r.pass;
  o.max_residual = r.max_residual;
  o.mean_residual = r.mean_residual;
  o.tolerance = r.tolerance;
  o.tuples = r.grid.size();
  for (const auto& [k, v] : r.extras) o.details[k] = v;
  // Worst tuple, 1-based.
  const TupleResidual* worst = nullptr;
  for (const auto& g : r.grid)
    if (!worst || !(g.residual <= worst->residual)) worst = &g;
  if (worst) {
    json t = json::array();
    for (int i : worst->tuple) t.push_back(i + 1);
    o.details["worst_tuple"] = t;
  }
  return o;
}

CheckOut from_scalar(const std::string& name, const std::string& label, const std::string& target, const ScalarCheck& c) {
  CheckOut o;
  o.name = name;
  o.label = label;
  o.target = target;
  o.outcome = c.pass;
  o.max_residual = c.residual;
  o.mean_residual = c.residual;
  o.tolerance = c.tolerance;
  o.tuples = 1;
  return o;
}

json to_json(const CheckOut& o, std::optional<bool> expected) {
  json j;
  j["name"] = o.name;
  j["label"] = o.label;
  j["target"] = o.target;
  const bool want = expected.value_or(true);
  j["pass"] = o.outcome == want;
  if (expected) {
    j["outcome"] = o.outcome;
    j["expected"] = want;
  }
  j["max_residual"] = o.max_residual;
  j["mean_residual"] = o.mean_residual;
  j["tolerance"] = o.tolerance;
  j["tuples"] = o.tuples;
  if (!o.details.empty()) j["details"] = o.details;
  return j;
}

std::string kind_name(const ConnectionSpec& s) { return to_string(s.kind); }

std::string describe(const Distribution& d, const ConnectionSpec& s) {
  std::string out = d.manifold().name() + " D=[";
  for (std::size_t k = 0; k < d.indices().size(); ++k) out += (k ? "," : "") + std::to_string(d.indices()[k] + 1);
  return out + "] " + kind_name(s);
}

json golden_json(const GoldenResult& g, const std::string& f_text) {
  json j;
  j["block"] = g.block;
  if (!f_text.empty()) j["f"] = f_text;
  j["key"] = g.key;
  j["eq"] = g.eq;
  j["expected"] = g.expected;
  j["expected_sample"] = g.expected_sample;
  j["engine_sample"] = g.engine_sample;
  j["residual"] = g.residual;
  j["match"] = g.match;
  if (!g.finding.empty()) j["finding"] = g.finding;
  return j;
}

CheckOut golden_check(const std::vector<GoldenResult>& rs, const std::string& target, bool strict) {
  CheckOut o;
  o.name = "golden";
  o.label = "golden ledger";
  o.target = target;
  std::size_t mismatches = 0, explained = 0;
  double sum = 0.0;
  std::size_t matched = 0;
  for (const auto& r : rs) {
    if (r.match) {
      o.max_residual = std::max(o.max_residual, r.residual);
      sum += r.residual;
      ++matched;
    } else {
      ++mismatches;
      if (!r.finding.empty()) ++explained;
    }
  }
  o.mean_residual = matched ? sum / static_cast<double>(matched) : 0.0;
  o.tuples = rs.size();
  o.outcome = !strict || mismatches == 0;
  o.details["entries"] = rs.size();
  o.details["mismatches"] = mismatches;
  o.details["mismatches_with_finding"] = explained;
  o.details["mismatches_without_finding"] = mismatches - explained;
  return o;
}

CheckOut chen_check(const std::string& name, const std::string& target, const InequalityReport& r) {
  CheckOut o;
  o.name = name;
  o.label = r.label;
  o.target = target;
  o.outcome = r.pass && r.two_path_residual < 1e-9;
  o.max_residual = r.two_path_residual;
  o.mean_residual = r.two_path_residual;
  o.tolerance = 1e-9;
  o.tuples = r.slack.size();
  o.details["min_slack"] = r.min_slack;
  o.details["two_path_residual"] = r.two_path_residual;
  o.details["expansion_residual"] = r.expansion_residual;
  if (!r.printed_slack.empty())
    o.details["printed_min_slack"] = *std::min_element(r.printed_slack.begin(), r.printed_slack.end());
  return o;
}

CheckOut family_check(const FamilyCheck& fc) {
  CheckOut o;
  o.name = "family";
  o.label = fc.fam.theorem;
  o.target = family_display(fc.fam.label) + " " + fc.fam.constant_name + "=" + json(fc.fam.constant).dump() +
             " c1=" + json(fc.fam.c1).dump() + " c2=" + json(fc.fam.c2).dump();
  o.outcome = fc.pass;
  o.max_residual = std::max(fc.ode_max, fc.check.residual);
  o.mean_residual = o.max_residual;
  o.tolerance = 1e-8;
  o.tuples = fc.odes.size() + 2;
  o.details["f"] = render(fc.fam.f);
  json odes = json::object();
  for (const auto& r : fc.odes) odes[r.name] = r.residual;
  o.details["ode_residuals"] = odes;
  o.details["check"] = fc.fam.einstein ? "einstein" : "csc";
  o.details["check_residual"] = fc.check.residual;
  o.details["perturbed_residual"] = fc.perturbed.residual;
  if (!fc.fam.window_note.empty()) o.details["window"] = fc.fam.window_note;
  return o;
}

// Seeded U or K for a manifold; coefficients a + b t rounded to three decimals.
class Draws {
 public:
  explicit Draws(std::uint64_t seed) : rng_(seed) {}

  double real(double lo, double hi) {
    return std::round(std::uniform_real_distribution<double>(lo, hi)(rng_) * 1000.0) / 1000.0;
  }
  int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

  ScalarExpr coeff() { return ScalarExpr(real(-2, 2)) + ScalarExpr(real(-1, 1)) * ScalarExpr::t(); }

  VectorField U(std::size_t m) {
    VectorField u(m);
    for (std::size_t i = 0; i < m; ++i) u[i] = coeff();
    return u;
  }

  Tensor3 C(std::size_t m) {
    Tensor3 c(m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a; b < m; ++b)
        for (std::size_t d = b; d < m; ++d) {
          ScalarExpr v = ScalarExpr(real(-1, 1)) + ScalarExpr(real(-0.5, 0.5)) * ScalarExpr::t();
          std::size_t p[3] = {a, b, d};
          do c(p[0], p[1], p[2]) = v;
          while (std::next_permutation(p, p + 3));
        }
    return c;
  }

  ConnectionSpec spec(const FrameManifold& M, ConnectionKind kind) {
    switch (kind) {
      case ConnectionKind::SSM: return ConnectionSpec::ssm(U(M.dim()));
      case ConnectionKind::SSNM: return ConnectionSpec::ssnm(U(M.dim()));
      case ConnectionKind::STAT: return ConnectionSpec::stat(cubic_form_to_K(M, C(M.dim())));
      case ConnectionKind::STAT_DUAL: return ConnectionSpec::stat_dual(cubic_form_to_K(M, C(M.dim())));
      default: return ConnectionSpec::levi_civita();
    }
  }

  std::vector<int> subset(std::size_t m) {
    for (;;) {
      std::vector<int> out;
      for (std::size_t i = 0; i < m; ++i)
        if (integer(0, 1)) out.push_back(static_cast<int>(i));
      if (!out.empty() && out.size() < m) return out;
    }
  }

 private:
  std::mt19937_64 rng_;
};

json spec_json(const ConnectionSpec& s) {
  json j;
  j["kind"] = to_string(s.kind);
  if (s.semi_symmetric()) {
    json u = json::array();
    for (const auto& c : s.U.coeffs()) u.push_back(render(c));
    j["U"] = u;
  }
  return j;
}

std::vector<CheckOut> identity_triple(const Distribution& d, const ConnectionSpec& s, const std::string& target) {
  return {from_report("gauss", target, verify_gauss(d, s)), from_report("codazzi", target, verify_codazzi(d, s)),
          from_report("ricci", target, verify_ricci_eq(d, s))};
}

std::vector<CheckOut> random_identities(const ManifoldPtr& M, const std::vector<int>* fixed, Draws& rng, int count) {
  static const ConnectionKind kinds[] = {ConnectionKind::SSM, ConnectionKind::SSNM, ConnectionKind::STAT,
                                         ConnectionKind::STAT_DUAL};
  std::vector<CheckOut> out;
  for (int k = 0; k < count; ++k) {
    Distribution d(M, fixed ? *fixed : rng.subset(M->dim()));
    ConnectionSpec s = rng.spec(*M, kinds[rng.integer(0, 3)]);
    std::string target = "draw " + std::to_string(k + 1) + ": " + describe(d, s);
    for (auto& o : identity_triple(d, s, target)) {
      o.details["connection"] = spec_json(s);
      out.push_back(std::move(o));
    }
  }
  return out;
}

CheckOut run_check(const std::string& name, const Scenario& sc, const RunOptions& opts, json& golden) {
  // A family scenario may omit the manifold; the family carries its own.
  if (name == "family") return family_check(verify_family(*sc.fam));
  const Distribution d(sc.M, sc.distribution);
  const ConnectionSpec& s = sc.spec;
  const std::string target = describe(d, s);
  if (name == "gauss") return from_report(name, target, verify_gauss(d, s));
  if (name == "codazzi") return from_report(name, target, verify_codazzi(d, s));
  if (name == "ricci") return from_report(name, target, verify_ricci_eq(d, s));
  if (name == "characterization") return from_report(name, target, verify_characterization(d, s));
  if (name == "tensoriality") return from_report(name, target, tensoriality(d, s));
  if (name == "antisymmetry") return from_report(name, target, antisymmetry(d, s));
  if (name == "rotation") return from_report(name, target, rotation_invariance(d, s, sc.angle));
  if (name == "reduction") {
    ConnectionSpec z = s;
    z.U = VectorField(sc.M->dim());
    for (std::size_t i = 0; i < sc.M->dim(); ++i) z.U[i] = ScalarExpr(0);
    z.K = Tensor3(sc.M->dim());
    return from_report(name, describe(d, z) + " with U = 0, K = 0", reduction(d, z));
  }
  if (name == "induced") {
    InducedPair p = induced_pair(d, s);
    CheckOut o;
    o.name = name;
    o.label = "closed form";
    o.target = target;
    o.max_residual = o.mean_residual = p.closed_form_residual;
    o.tolerance = sc.M->plan().abs_tol;
    o.outcome = p.closed_form_residual < o.tolerance;
    o.tuples = p.indices.size() * p.indices.size();
    return o;
  }
  if (name == "weingarten") {
    CheckOut o;
    o.name = name;
    o.label = "closed form";
    o.target = target;
    o.tolerance = sc.M->plan().abs_tol;
    double worst = 0.0, sum = 0.0;
    for (int x : d.complement()) {
      Weingarten w = weingarten(d, s, VectorField::basis(sc.M->dim(), static_cast<std::size_t>(x)));
      double r = std::max(w.closed_form_residual, w.duality_residual);
      worst = std::max(worst, r);
      sum += r;
      ++o.tuples;
    }
    o.max_residual = worst;
    o.mean_residual = o.tuples ? sum / static_cast<double>(o.tuples) : 0.0;
    o.outcome = worst < o.tolerance;
    return o;
  }
  if (name == "predicates") {
    Predicates a = predicates(d, sc.M->levi_civita());
    Predicates b = predicates(d, ambient_connection(*sc.M, s));
    CheckOut o;
    o.name = name;
    o.label = "umbilical agreement";
    o.target = target;
    o.tuples = 1;
    auto pj = [](const Predicates& p) {
      json j;
      j["minimal"] = p.minimal;
      j["totally_geodesic"] = p.totally_geodesic;
      j["umbilical"] = p.umbilical;
      j["minimal_residual"] = p.minimal_residual;
      j["totally_geodesic_residual"] = p.totally_geodesic_residual;
      j["umbilical_residual"] = p.umbilical_residual;
      return j;
    };
    o.details["levi_civita"] = pj(a);
    o.details[to_string(s.kind)] = pj(b);
    o.outcome = a.umbilical == b.umbilical;
    return o;
  }
  if (name == "integrability") {
    Integrability in = is_integrable(d);
    CheckOut o;
    o.name = name;
    o.label = "integrability";
    o.target = target;
    o.tuples = 1;
    o.outcome = in.integrable;
    if (in.witness) o.details["witness"] = json::array({in.witness->first + 1, in.witness->second + 1});
    o.max_residual = o.mean_residual = in.integrable ? 0.0 : max_abs(*sc.M, in.witness_normal);
    o.tolerance = sc.M->plan().abs_tol;
    return o;
  }
  if (name == "mixed_ricci_flat") {
    MixedRicciFlat r = is_mixed_ricci_flat(d, s);
    CheckOut o;
    o.name = name;
    o.label = "mixed Ricci flat";
    o.target = target;
    o.tuples = 1;
    o.outcome = r.flat;
    o.max_residual = o.mean_residual = r.max_offdiagonal;
    o.tolerance = sc.M->plan().abs_tol;
    return o;
  }
  if (name == "einstein") {
    const double c0 = sc.c0 ? *sc.c0 : estimate_einstein_constant(d, s);
    CheckOut o = from_scalar(name, "Ric^D = c0 g", target, is_einstein(d, s, c0));
    o.details["c0"] = c0;
    if (!sc.c0) o.details["c0_estimated"] = true;
    return o;
  }
  if (name == "csc") return from_scalar(name, "s^D = lambda0", target, has_constant_scalar(d, s, *sc.lambda0));
  if (name == "golden") {
    std::vector<GoldenResult> all;
    for (const auto& block : sc.golden)
      for (auto& g : evaluate_golden(sc.M, block, sc.bindings)) {
        golden.push_back(golden_json(g, sc.f_text));
        all.push_back(std::move(g));
      }
    return golden_check(all, sc.M->name() + (sc.f_text.empty() ? "" : " f=" + sc.f_text), opts.strict_golden);
  }
  if (name == "chen_first") return chen_check(name, target, chen_first(d, s, sc.plane[0], sc.plane[1], sc.declared_c));
  if (name == "chen_ricci")
    return chen_check(name, target, chen_ricci(d, s, unit_combination(d, sc.X), sc.declared_c));
  if (name == "random") {
    Draws rng(opts.seed);
    CheckOut o;
    o.name = name;
    o.label = "seeded identity draws";
    o.target = sc.M->name();
    for (const auto& r : random_identities(sc.M, &sc.distribution, rng, sc.random_draws)) {
      o.outcome = o.outcome && r.outcome;
      o.max_residual = std::max(o.max_residual, r.max_residual);
      o.mean_residual += r.mean_residual;
      o.tolerance = r.tolerance;
      ++o.tuples;
    }
    if (o.tuples) o.mean_residual /= static_cast<double>(o.tuples);
    o.details["draws"] = sc.random_draws;
    return o;
  }
  throw ScenarioError("unknown check '" + name + "'");
}

class ReportBuilder {
 public:
  explicit ReportBuilder(json echo) : start_(std::chrono::steady_clock::now()) { report_["scenario"] = std::move(echo); }

  void add(const CheckOut& o, std::optional<bool> expected = std::nullopt) {
    json j = to_json(o, expected);
    pass_ = pass_ && j["pass"].get<bool>();
    if (!j["pass"].get<bool>()) ++failures_;
    if (!(o.max_residual <= max_residual_)) max_residual_ = o.max_residual;
    checks_.push_back(std::move(j));
  }
  json& golden() { return golden_; }

  RunOutcome finish() {
    report_["checks"] = std::move(checks_);
    std::size_t mismatches = 0, explained = 0;
    for (const auto& g : golden_)
      if (!g["match"].get<bool>()) {
        ++mismatches;
        if (g.contains("finding")) ++explained;
      }
    report_["golden"] = std::move(golden_);
    json sum;
    sum["pass"] = pass_;
    sum["max_residual"] = max_residual_;
    sum["checks"] = report_["checks"].size();
    sum["failures"] = failures_;
    sum["golden_entries"] = report_["golden"].size();
    sum["golden_mismatches"] = mismatches;
    sum["golden_mismatches_with_finding"] = explained;
    report_["summary"] = std::move(sum);
    report_["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
    return {pass_ ? 0 : 1, report_.dump(2) + "\n"};
  }

 private:
  std::chrono::steady_clock::time_point start_;
  json report_;
  json checks_ = json::array();
  json golden_ = json::array();
  bool pass_ = true;
  std::size_t failures_ = 0;
  double max_residual_ = 0.0;
};

RunOutcome run_loaded(const Scenario& sc, const RunOptions& opts) {
  json echo = sc.echo;
  echo["name"] = sc.name;
  echo["seed"] = opts.seed;
  echo["strict_golden"] = opts.strict_golden;
  ReportBuilder rb(std::move(echo));
  for (std::size_t k = 0; k < sc.checks.size(); ++k) {
    const std::string& name = sc.checks[k];
    const std::string where = "check '" + name + "' (#" + std::to_string(k + 1) + " of scenario '" + sc.name + "')";
    std::optional<bool> expected;
    if (auto it = sc.expect.find(name); it != sc.expect.end()) expected = it->second;
    try {
      rb.add(run_check(name, sc, opts, rb.golden()), expected);
    } catch (const ScenarioError&) {
      throw;
    } catch (const Error& e) {
      throw ScenarioError(where + ": " + e.what());
    }
  }
  return rb.finish();
}

std::string file_stem(const std::string& path) {
  std::string base = path.substr(path.find_last_of('/') + 1);
  return base.substr(0, base.rfind('.'));
}

}  // namespace

std::vector<std::string> check_names() { return known_checks(); }

RunOutcome run_scenario(const std::string& json_text, const RunOptions& opts) {
  return run_loaded(load(json_text, "scenario"), opts);
}

RunOutcome run_scenario_file(const std::string& path, const RunOptions& opts) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ScenarioError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return run_loaded(load(buf.str(), file_stem(path)), opts);
}

RunOutcome verify_all(const RunOptions& opts) {
  json echo;
  echo["name"] = "verify-all";
  echo["seed"] = opts.seed;
  echo["strict_golden"] = opts.strict_golden;
  ReportBuilder rb(std::move(echo));
  const std::vector<std::string> identity_presets{"sphere3", "heisenberg3", "warped-sphere", "warped-heisenberg"};
  static const ConnectionKind kinds[] = {ConnectionKind::LC, ConnectionKind::SSM, ConnectionKind::SSNM,
                                         ConnectionKind::STAT, ConnectionKind::STAT_DUAL};

  // Identities and reductions over every proper frame-aligned distribution.
  for (const auto& name : identity_presets) {
    ManifoldPtr M = make_preset(name).manifold;
    const std::size_t m = M->dim();
    VectorField U(m);
    Tensor3 C(m);
    for (std::size_t i = 0; i < m; ++i) U[i] = ScalarExpr(1.0 + 0.5 * i) + ScalarExpr(0.25 * i) * ScalarExpr::t();
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c) C(a, b, c) = ScalarExpr(0.1 * (a + b + c + 1)) + ScalarExpr(0.05) * ScalarExpr::t();
    const Tensor3 K = cubic_form_to_K(*M, C);
    for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
      std::vector<int> idx;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1u) idx.push_back(static_cast<int>(i));
      Distribution d(M, idx);
      for (ConnectionKind kind : kinds) {
        ConnectionSpec s;
        s.kind = kind;
        if (s.semi_symmetric()) s.U = U;
        if (s.statistical()) s.K = K;
        for (auto& o : identity_triple(d, s, describe(d, s))) rb.add(o);
        if (kind != ConnectionKind::LC) {
          ConnectionSpec z = s;
          z.U = VectorField(m);
          for (std::size_t i = 0; i < m; ++i) z.U[i] = ScalarExpr(0);
          z.K = Tensor3(m);
          rb.add(from_report("reduction", describe(d, z) + " with U = 0, K = 0", reduction(d, z)));
        }
      }
    }
  }

  // Seeded draws across the presets.
  Draws rng(opts.seed);
  for (int k = 0; k < 50; ++k) {
    ManifoldPtr M = make_preset(identity_presets[rng.integer(0, 3)]).manifold;
    for (auto& o : random_identities(M, nullptr, rng, 1)) {
      o.target = "seeded " + std::to_string(k + 1) + ": " + o.target.substr(o.target.find(": ") + 2);
      rb.add(o);
    }
  }

  // Golden ledger.
  for (const auto& name : identity_presets) {
    const bool warped = name.rfind("warped-", 0) == 0;
    const std::vector<std::string> fs = warped ? std::vector<std::string>{"2*t+1", "exp(t)", "(2*t+1)^(2/3)"}
                                               : std::vector<std::string>{""};
    for (const auto& ft : fs) {
      std::optional<ScalarExpr> f;
      if (warped) f = parse_expr(ft);
      ScenarioPreset p = make_preset(name, f);
      std::vector<GoldenResult> all;
      for (auto& g : evaluate_golden(p)) {
        rb.golden().push_back(golden_json(g, ft));
        all.push_back(std::move(g));
      }
      rb.add(golden_check(all, name + (warped ? " f=" + ft : ""), opts.strict_golden));
    }
  }

  // Chen inequalities on the constant-curvature presets.
  {
    ScenarioPreset p = make_preset("sphere3");
    Distribution d(p.manifold, p.distribution);
    for (ConnectionKind kind : {ConnectionKind::SSM, ConnectionKind::SSNM}) {
      ConnectionSpec s = p.connection;
      s.kind = kind;
      for (const auto& x : {std::vector<double>{1, 0}, std::vector<double>{0.6, 0.8}})
        rb.add(chen_check("chen_ricci", describe(d, s), chen_ricci(d, s, unit_combination(d, x), p.declared_c)));
    }
    ManifoldPtr F = flat_frame(6);
    Distribution fd(F, {0, 1, 2, 3});
    for (int k = 0; k < 10; ++k) {
      ConnectionSpec s = rng.spec(*F, k % 2 ? ConnectionKind::SSNM : ConnectionKind::SSM);
      int i = rng.integer(0, 3), j = rng.integer(0, 2);
      if (j >= i) ++j;
      std::vector<double> x{rng.real(-1, 1), rng.real(-1, 1), rng.real(-1, 1), rng.real(0.1, 1)};
      const std::string target = "seeded " + std::to_string(k + 1) + ": " + describe(fd, s);
      CheckOut a = chen_check("chen_first", target, chen_first(fd, s, i, j, 0.0));
      a.details["plane"] = json::array({i + 1, j + 1});
      a.details["connection"] = spec_json(s);
      rb.add(a);
      CheckOut b = chen_check("chen_ricci", target, chen_ricci(fd, s, unit_combination(fd, x), 0.0));
      b.details["X"] = x;
      b.details["connection"] = spec_json(s);
      rb.add(b);
    }
  }

  // Mixed Ricci flatness of the warped sphere along U = dt.
  for (const auto& [ft, expected] : {std::pair<std::string, bool>{"2", true}, {"exp(t)", false}}) {
    ScenarioPreset p = make_preset("warped-sphere", parse_expr(ft));
    Distribution d(p.manifold, p.distribution);
    ConnectionSpec s = ConnectionSpec::ssm(VectorField::basis(p.manifold->dim(), 0));
    MixedRicciFlat r = is_mixed_ricci_flat(d, s);
    CheckOut o;
    o.name = "mixed_ricci_flat";
    o.label = "mixed Ricci flat";
    o.target = describe(d, s) + " f=" + ft;
    o.outcome = r.flat;
    o.max_residual = o.mean_residual = r.max_offdiagonal;
    o.tolerance = p.manifold->plan().abs_tol;
    o.tuples = 1;
    rb.add(o, expected);
  }

  // Solution families.
  for (const auto& fam : default_family_draws()) rb.add(family_check(verify_family(fam)));

  return rb.finish();
}

std::string catalog_list() {
  std::string out = "presets:\n";
  for (const auto& p : preset_names()) out += "  " + p + " (" + preset_anchor(p) + ")\n";
  out += "families:\n";
  for (const auto& f : family_labels()) out += "  " + family_display(f) + "\n";
  out += "checks:\n";
  for (const auto& c : known_checks()) out += "  " + c + "\n";
  return out;
}

std::string strip_timing(const std::string& report) {
  json j = json::parse(report);
  j.erase("timing_ms");
  return j.dump(2);
}

}  // namespace distgeo
