#include "distgeo/catalog.hpp"

#include <cmath>
#include <cstdio>
#include <functional>

#include "distgeo/curvature.hpp"
#include "distgeo/errors.hpp"

namespace distgeo {

namespace {

ScalarExpr C(double v) { return ScalarExpr(v); }

// Antisymmetric structure table from [E_i,E_j] = s E_k entries.
void set_bracket(Tensor3& c, int i, int j, int k, const ScalarExpr& s) {
  c(i, j, k) = s;
  c(j, i, k) = -s;
}

void require_nonzero_warp(const ScalarExpr& f, const SamplePlan& plan) {
  for (double t : plan.points) {
    double v = eval(f, t);
    if (!std::isfinite(v) || std::fabs(v) < 1e-12)
      throw ZeroWarp("warp function vanishes at t = " + std::to_string(t));
  }
}

ManifoldPtr warped(const std::string& name, const std::vector<std::string>& fiber, const Tensor3& fiber_c,
                   const ScalarExpr& f, const SamplePlan& plan) {
  require_nonzero_warp(f, plan);
  std::vector<std::string> labels{"dt"};
  labels.insert(labels.end(), fiber.begin(), fiber.end());
  Tensor3 c(4);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c(i + 1, j + 1, k + 1) = fiber_c(i, j, k);
  ScalarExpr f2 = pow(f, 2);
  return std::make_shared<const FrameManifold>(name, labels, std::vector<ScalarExpr>{C(1), f2, f2, C(1)}, c,
                                               std::vector<ScalarExpr>{C(1), C(0), C(0), C(0)}, plan);
}

Tensor3 sphere_structure() {
  Tensor3 c(3);
  set_bracket(c, 0, 1, 2, C(2));
  set_bracket(c, 0, 2, 1, C(-2));
  set_bracket(c, 1, 2, 0, C(2));
  return c;
}

Tensor3 heisenberg_structure() {
  Tensor3 c(3);
  set_bracket(c, 0, 1, 2, C(1));
  return c;
}

using Terms = std::vector<std::pair<std::string, std::string>>;

// Collects golden entries by frame label.
class Table {
 public:
  Table(const FrameManifold& M, std::string name, std::vector<int> dist, ConnectionSpec spec, double tol)
      : labels_(M.labels()) {
    block_.name = std::move(name);
    block_.distribution = std::move(dist);
    block_.connection = std::move(spec);
    block_.tolerance = tol;
  }

  Table& vec(GoldenQuantity q, const std::vector<std::string>& args, Terms terms, const std::string& eq,
             const std::string& finding = "") {
    block_.entries.push_back({q, indices(args), std::move(terms), eq, finding});
    return *this;
  }
  Table& sca(GoldenQuantity q, const std::vector<std::string>& args, const std::string& expr, const std::string& eq,
             const std::string& finding = "") {
    block_.entries.push_back({q, indices(args), {{"", expr}}, eq, finding});
    return *this;
  }
  // Attaches a finding to every entry accepted by pred.
  Table& mark(const std::function<bool(const GoldenEntry&)>& pred, const std::string& finding) {
    for (auto& e : block_.entries)
      if (pred(e)) e.finding = finding;
    return *this;
  }
  GoldenBlock done() { return std::move(block_); }

 private:
  std::vector<int> indices(const std::vector<std::string>& args) const {
    std::vector<int> out;
    for (const auto& a : args) {
      int k = -1;
      for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == a) k = static_cast<int>(i);
      if (k < 0) throw InvalidArgument("unknown frame label " + a);
      out.push_back(k);
    }
    return out;
  }
  std::vector<std::string> labels_;
  GoldenBlock block_;
};

using Q = GoldenQuantity;

VectorField u_of(std::size_t m, const std::vector<std::pair<int, double>>& parts) {
  VectorField u(m);
  for (auto [i, v] : parts) u[static_cast<std::size_t>(i)] = C(v);
  return u;
}

std::vector<GoldenBlock> sphere_blocks(const FrameManifold& M) {
  const std::string x1 = "X1", x2 = "X2", x3 = "X3";
  std::vector<GoldenBlock> out;
  const double tol = 1e-9;
  {
    Table t(M, "sphere3/lc/D1", {0, 1}, ConnectionSpec::levi_civita(), tol);
    t.vec(Q::Bracket, {x1, x2}, {{x3, "2"}}, "Eq 5.1")
        .vec(Q::Bracket, {x1, x3}, {{x2, "-2"}}, "Eq 5.1")
        .vec(Q::Bracket, {x2, x3}, {{x1, "2"}}, "Eq 5.1")
        .vec(Q::Nabla, {x1, x2}, {{x3, "1"}}, "Eq 5.2")
        .vec(Q::Nabla, {x2, x1}, {{x3, "-1"}}, "Eq 5.2")
        .vec(Q::Nabla, {x1, x1}, {}, "Eq 5.2")
        .vec(Q::Nabla, {x2, x2}, {}, "Eq 5.2")
        .vec(Q::Nabla, {x3, x3}, {}, "Eq 5.2")
        .vec(Q::Nabla, {x1, x3}, {{x2, "-1"}}, "Eq 5.2")
        .vec(Q::Nabla, {x3, x1}, {{x2, "1"}}, "Eq 5.2")
        .vec(Q::Nabla, {x2, x3}, {{x1, "1"}}, "Eq 5.2")
        .vec(Q::Nabla, {x3, x2}, {{x1, "-1"}}, "Eq 5.2");
    for (auto a : {x1, x2})
      for (auto b : {x1, x2}) t.vec(Q::NablaD, {a, b}, {}, "Eq 5.3");
    t.vec(Q::B, {x1, x1}, {}, "Eq 5.3")
        .vec(Q::B, {x2, x2}, {}, "Eq 5.3")
        .vec(Q::B, {x1, x2}, {{x3, "1"}}, "Eq 5.3")
        .vec(Q::B, {x2, x1}, {{x3, "-1"}}, "Eq 5.3")
        .vec(Q::Shape, {x3, x1}, {{x2, "1"}}, "Eq 5.6")
        .vec(Q::Shape, {x3, x2}, {{x1, "-1"}}, "Eq 5.6")
        .vec(Q::NormalConn, {x1, x3}, {}, "Eq 5.6")
        .vec(Q::NormalConn, {x2, x3}, {}, "Eq 5.6");
    out.push_back(t.done());
  }
  {
    Table t(M, "sphere3/ssm/D1", {0, 1}, ConnectionSpec::ssm(u_of(3, {{0, 1}, {2, 1}})), tol);
    t.vec(Q::NablaD, {x1, x1}, {}, "Eq 5.5")
        .vec(Q::NablaD, {x1, x2}, {}, "Eq 5.5")
        .vec(Q::NablaD, {x2, x1}, {{x1, "1"}}, "Eq 5.5",
             "stated X1; the induced formula gives omega(X1) X2 - g(X2,X1) U = X2")
        .vec(Q::NablaD, {x2, x2}, {{x1, "-1"}}, "Eq 5.5")
        .vec(Q::B, {x1, x1}, {{x3, "-1"}}, "Eq 5.5")
        .vec(Q::B, {x1, x2}, {{x3, "1"}}, "Eq 5.5")
        .vec(Q::B, {x2, x1}, {{x3, "-1"}}, "Eq 5.5")
        .vec(Q::B, {x2, x2}, {{x3, "-1"}}, "Eq 5.5")
        .vec(Q::H, {}, {{x3, "-1"}}, "Eq 5.5")
        .vec(Q::ShapeSpec, {x3, x1}, {{x2, "1"}, {x1, "-1"}}, "Eq 5.6")
        .vec(Q::ShapeSpec, {x3, x2}, {{x1, "-1"}, {x2, "-1"}}, "Eq 5.6")
        .vec(Q::RD, {x1, x2, x1}, {{x2, "-4"}}, "Eq 5.7")
        .vec(Q::RD, {x1, x2, x2}, {{x1, "4"}}, "Eq 5.7")
        .sca(Q::Sectional, {x1, x2}, "4", "Eq 5.7")
        .sca(Q::Tau, {}, "4", "Eq 5.7");
    out.push_back(t.done());
  }
  {
    Table t(M, "sphere3/ssnm/D1", {0, 1}, ConnectionSpec::ssnm(u_of(3, {{0, 1}, {2, 1}})), tol);
    t.vec(Q::NablaD, {x1, x1}, {{x1, "1"}}, "Eq 5.9")
        .vec(Q::NablaD, {x1, x2}, {}, "Eq 5.9")
        .vec(Q::NablaD, {x2, x1}, {{x2, "1"}}, "Eq 5.9")
        .vec(Q::NablaD, {x2, x2}, {}, "Eq 5.9")
        .vec(Q::B, {x1, x1}, {}, "Eq 5.9")
        .vec(Q::B, {x1, x2}, {{x3, "1"}}, "Eq 5.9")
        .vec(Q::B, {x2, x1}, {{x3, "-1"}}, "Eq 5.9")
        .vec(Q::B, {x2, x2}, {}, "Eq 5.9")
        .vec(Q::RD, {x1, x2, x1}, {{x2, "-5"}}, "Eq 5.9")
        .vec(Q::RD, {x1, x2, x2}, {{x1, "4"}}, "Eq 5.9");
    out.push_back(t.done());
  }
  const std::string d2_note =
      "stated +4X3; the bracket term -pi^D[[X1,X3]^perp, X1] contributes -8X3, giving -4X3";
  {
    Table t(M, "sphere3/ssm/D2", {0, 2}, ConnectionSpec::ssm(u_of(3, {{1, 1}, {2, 1}})), tol);
    t.vec(Q::NablaD, {x1, x1}, {{x3, "-1"}}, "Eq 5.10")
        .vec(Q::NablaD, {x1, x3}, {{x1, "1"}}, "Eq 5.10")
        .vec(Q::NablaD, {x3, x1}, {}, "Eq 5.10")
        .vec(Q::NablaD, {x3, x3}, {}, "Eq 5.10")
        .vec(Q::RD, {x1, x3, x1}, {{x3, "4"}}, "Eq 5.10", d2_note)
        .vec(Q::RD, {x1, x3, x3}, {{x1, "4"}}, "Eq 5.10")
        .sca(Q::Sectional, {x1, x3}, "0", "Eq 5.10", "inherits the sign of R(X1,X3)X1; the engine value is 4")
        .sca(Q::Tau, {}, "0", "Eq 5.10", "inherits the sign of R(X1,X3)X1; the engine value is 4");
    out.push_back(t.done());
  }
  {
    Table t(M, "sphere3/ssnm/D2", {0, 2}, ConnectionSpec::ssnm(u_of(3, {{1, 1}, {2, 1}})), tol);
    t.vec(Q::NablaD, {x1, x1}, {}, "Eq 5.11")
        .vec(Q::NablaD, {x1, x3}, {{x1, "1"}}, "Eq 5.11")
        .vec(Q::NablaD, {x3, x1}, {}, "Eq 5.11")
        .vec(Q::NablaD, {x3, x3}, {{x3, "1"}}, "Eq 5.11")
        .vec(Q::RD, {x1, x3, x1}, {{x3, "4"}}, "Eq 5.11", d2_note)
        .vec(Q::RD, {x1, x3, x3}, {{x1, "5"}}, "Eq 5.11")
        .sca(Q::Sectional, {x1, x3}, "1/2", "Eq 5.11",
             "inherits the sign of R(X1,X3)X1; the engine value is 9/2")
        .sca(Q::Tau, {}, "1/2", "Eq 5.11", "inherits the sign of R(X1,X3)X1; the engine value is 9/2");
    out.push_back(t.done());
  }
  return out;
}

std::vector<GoldenBlock> heisenberg_blocks(const FrameManifold& M) {
  const std::string e1 = "e1", e2 = "e2", e3 = "e3";
  const double tol = 1e-9;
  std::vector<GoldenBlock> out;
  {
    Table t(M, "heisenberg3/lc/D", {0, 1}, ConnectionSpec::levi_civita(), tol);
    t.vec(Q::Bracket, {e1, e2}, {{e3, "1"}}, "Eq 5.39")
        .vec(Q::Bracket, {e1, e3}, {}, "Eq 5.39")
        .vec(Q::Bracket, {e2, e3}, {}, "Eq 5.39")
        .vec(Q::Nabla, {e1, e1}, {}, "Eq 5.40")
        .vec(Q::Nabla, {e2, e2}, {}, "Eq 5.40")
        .vec(Q::Nabla, {e3, e3}, {}, "Eq 5.40")
        .vec(Q::Nabla, {e1, e2}, {{e3, "1/2"}}, "Eq 5.40")
        .vec(Q::Nabla, {e2, e1}, {{e3, "-1/2"}}, "Eq 5.40")
        .vec(Q::Nabla, {e1, e3}, {{e2, "-1/2"}}, "Eq 5.40")
        .vec(Q::Nabla, {e3, e1}, {{e2, "-1/2"}}, "Eq 5.40")
        .vec(Q::Nabla, {e2, e3}, {{e1, "1/2"}}, "Eq 5.40")
        .vec(Q::Nabla, {e3, e2}, {{e1, "1/2"}}, "Eq 5.40");
    for (auto a : {e1, e2})
      for (auto b : {e1, e2}) t.vec(Q::NablaD, {a, b}, {}, "Eq 5.40");
    out.push_back(t.done());
  }
  const VectorField U = u_of(3, {{0, 1}, {1, 1}, {2, 1}});
  {
    Table t(M, "heisenberg3/ssm/D", {0, 1}, ConnectionSpec::ssm(U), tol);
    t.vec(Q::NablaD, {e1, e1}, {{e2, "-1"}}, "Eq 5.41")
        .vec(Q::NablaD, {e1, e2}, {{e1, "1"}}, "Eq 5.41")
        .vec(Q::NablaD, {e2, e1}, {{e2, "1"}}, "Eq 5.41")
        .vec(Q::NablaD, {e2, e2}, {{e1, "-1"}}, "Eq 5.41")
        .vec(Q::B, {e1, e1}, {{e3, "-1"}}, "Eq 5.41")
        .vec(Q::B, {e2, e2}, {{e3, "-1"}}, "Eq 5.41")
        .vec(Q::B, {e1, e2}, {{e3, "1/2"}}, "Eq 5.41")
        .vec(Q::B, {e2, e1}, {{e3, "-1/2"}}, "Eq 5.41")
        .vec(Q::RD, {e1, e2, e1}, {}, "Eq 5.41")
        .vec(Q::RD, {e1, e2, e2}, {}, "Eq 5.41");
    out.push_back(t.done());
  }
  {
    Table t(M, "heisenberg3/ssnm/D", {0, 1}, ConnectionSpec::ssnm(U), tol);
    t.vec(Q::NablaD, {e1, e1}, {{e1, "1"}}, "Eq 5.42")
        .vec(Q::NablaD, {e1, e2}, {{e1, "1"}}, "Eq 5.42")
        .vec(Q::NablaD, {e2, e1}, {{e2, "1"}}, "Eq 5.42")
        .vec(Q::NablaD, {e2, e2}, {{e2, "1"}}, "Eq 5.42")
        .vec(Q::RD, {e1, e2, e1}, {{e1, "1"}, {e2, "-1"}}, "Eq 5.42")
        .vec(Q::RD, {e1, e2, e2}, {{e1, "1"}, {e2, "-1"}}, "Eq 5.42");
    out.push_back(t.done());
  }
  return out;
}

// Equation labels of one warped example, in table order.
struct WarpedEqs {
  std::string nabla_f, R_f, Ric_f, s_f, nabla_D, B, R_D, K_D, Ric_D, s_D;
  std::string ssm_nabla, ssm_B, ssm_R, ssm_K, ssm_Ric, ssm_s;
  std::string ssnm_nabla, ssnm_R, ssnm_Ric, ssnm_K, ssnm_s;
};

const char* kSlip = "stated table uses nabla_{X_i} dt = (f'/f) X_i + dt; the definition gives (f'/f) X_i + X_i";
const char* kInherited = "computed from the nabla_{X_i} dt = (f'/f) X_i + dt slip; the recomputed value differs";

// Curvature entries of the U = dt tables that inherit the slip. The ones left
// out agree with the recomputed values for every f.
bool inherits_slip(const GoldenEntry& e) {
  if (e.quantity == Q::Sectional || e.quantity == Q::ScalarD) return true;
  const auto& a = e.args;
  if (e.quantity == Q::RD) return a[0] != 0 || a[2] == 0;
  if (e.quantity == Q::RicD) return a[0] == a[1] || a[1] == 0;
  return false;
}

// Shared D-level tables of the two warped examples. `sph` selects the sphere
// fiber, whose R^D carries the extra -4 from [X1,X2] = 2X3.
void warped_d_tables(Table& lc, Table& ssm, Table& ssnm, bool sph, const WarpedEqs& q, const std::string& a,
                     const std::string& b) {
  const std::string dt = "dt";
  const std::string four = sph ? " - 4" : "";
  const std::string mfour = sph ? " + 4" : "";
  // Levi-Civita on D
  lc.vec(Q::NablaD, {dt, dt}, {}, q.nabla_D)
      .vec(Q::NablaD, {dt, a}, {{a, "fp/f"}}, q.nabla_D)
      .vec(Q::NablaD, {a, dt}, {{a, "fp/f"}}, q.nabla_D)
      .vec(Q::NablaD, {dt, b}, {{b, "fp/f"}}, q.nabla_D)
      .vec(Q::NablaD, {b, dt}, {{b, "fp/f"}}, q.nabla_D)
      .vec(Q::NablaD, {a, a}, {{dt, "-f*fp"}}, q.nabla_D)
      .vec(Q::NablaD, {b, b}, {{dt, "-f*fp"}}, q.nabla_D)
      .vec(Q::NablaD, {a, b}, {}, q.nabla_D)
      .vec(Q::NablaD, {b, a}, {}, q.nabla_D);
  lc.vec(Q::RD, {dt, a, dt}, {{a, "fpp/f"}}, q.R_D)
      .vec(Q::RD, {dt, b, dt}, {{b, "fpp/f"}}, q.R_D)
      .vec(Q::RD, {dt, a, a}, {{dt, "-f*fpp"}}, q.R_D)
      .vec(Q::RD, {dt, a, b}, {}, q.R_D)
      .vec(Q::RD, {dt, b, a}, {}, q.R_D)
      .vec(Q::RD, {dt, b, b}, {{dt, "-f*fpp"}}, q.R_D)
      .vec(Q::RD, {a, b, dt}, {}, q.R_D)
      .vec(Q::RD, {a, b, a}, {{b, "fp^2" + four}}, q.R_D)
      .vec(Q::RD, {a, b, b}, {{a, "0 - fp^2" + mfour}}, q.R_D);
  lc.sca(Q::Sectional, {dt, a}, "-fpp/f", q.K_D)
      .sca(Q::Sectional, {dt, b}, "-fpp/f", q.K_D)
      .sca(Q::Sectional, {a, b}, sph ? "(4 - fp^2)/f^2" : "fp^2/f^2", q.K_D,
           sph ? "" : "sign slip: R^D(e1,e2)e2 = -f'^2 e1 gives K = -f'^2/f^2");
  lc.sca(Q::RicD, {dt, dt}, "2*fpp/f", q.Ric_D)
      .sca(Q::RicD, {a, a}, "f*fpp + fp^2" + four, q.Ric_D)
      .sca(Q::RicD, {b, b}, "f*fpp + fp^2" + four, q.Ric_D);
  for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{{dt, a}, {dt, b}, {a, dt}, {b, dt}, {a, b}, {b, a}})
    lc.sca(Q::RicD, {x, y}, "0", q.Ric_D);
  lc.sca(Q::ScalarD, {}, sph ? "4*fpp/f + 2*fp^2/f^2 - 8/f^2" : "4*fpp/f + 2*fp^2/f^2", q.s_D);

  // semi-symmetric metric, U = dt
  ssm.vec(Q::NablaD, {dt, dt}, {}, q.ssm_nabla)
      .vec(Q::NablaD, {dt, a}, {{a, "fp/f"}}, q.ssm_nabla)
      .vec(Q::NablaD, {a, dt}, {{a, "fp/f"}, {dt, "1"}}, q.ssm_nabla, kSlip)
      .vec(Q::NablaD, {dt, b}, {{b, "fp/f"}}, q.ssm_nabla)
      .vec(Q::NablaD, {b, dt}, {{b, "fp/f"}, {dt, "1"}}, q.ssm_nabla, kSlip)
      .vec(Q::NablaD, {a, a}, {{dt, "-f*fp - f^2"}}, q.ssm_nabla)
      .vec(Q::NablaD, {b, b}, {{dt, "-f*fp - f^2"}}, q.ssm_nabla)
      .vec(Q::NablaD, {a, b}, {}, q.ssm_nabla)
      .vec(Q::NablaD, {b, a}, {}, q.ssm_nabla);
  if (sph) ssm.vec(Q::B, {a, b}, {{"X3", "1"}}, q.ssm_B).vec(Q::B, {b, a}, {{"X3", "-1"}}, q.ssm_B);
  ssm.vec(Q::RD, {dt, a, dt}, {{a, "fpp/f"}}, q.ssm_R)
      .vec(Q::RD, {dt, b, dt}, {{b, "fpp/f"}}, q.ssm_R)
      .vec(Q::RD, {dt, a, a}, {{dt, "-(f*fpp + f*fp)"}}, q.ssm_R)
      .vec(Q::RD, {dt, a, b}, {}, q.ssm_R)
      .vec(Q::RD, {dt, b, a}, {}, q.ssm_R)
      .vec(Q::RD, {dt, b, b}, {{dt, "-(f*fpp + f*fp)"}}, q.ssm_R)
      .vec(Q::RD, {a, b, dt}, {{a, "fp/f"}, {b, "-fp/f"}}, q.ssm_R)
      .vec(Q::RD, {a, b, a}, {{b, "fp^2 + f*fp" + four}, {dt, "f*fp + f^2"}}, q.ssm_R)
      .vec(Q::RD, {a, b, b}, {{a, "0 - (fp^2 + f*fp" + four + ")"}, {dt, "-(f*fp + f^2)"}}, q.ssm_R);
  if (sph)
    ssm.sca(Q::Sectional, {dt, a}, "-(2*fpp + fp)/(2*f)", q.ssm_K)
        .sca(Q::Sectional, {dt, b}, "-(2*fpp + fp)/(2*f)", q.ssm_K)
        .sca(Q::Sectional, {a, b}, "(4 - f*fp - fp^2)/f^2", q.ssm_K);
  ssm.sca(Q::RicD, {dt, dt}, "2*fpp/f", q.ssm_Ric)
      .sca(Q::RicD, {a, a}, "f*fpp + 2*f*fp + fp^2" + four, q.ssm_Ric)
      .sca(Q::RicD, {b, b}, "f*fpp + 2*f*fp + fp^2" + four, q.ssm_Ric)
      .sca(Q::RicD, {dt, a}, "0", q.ssm_Ric)
      .sca(Q::RicD, {dt, b}, "0", q.ssm_Ric)
      .sca(Q::RicD, {a, dt}, "-fp/f", q.ssm_Ric)
      .sca(Q::RicD, {b, dt}, "-fp/f", q.ssm_Ric)
      .sca(Q::RicD, {a, b}, "0", q.ssm_Ric)
      .sca(Q::RicD, {b, a}, "0", q.ssm_Ric);
  ssm.sca(Q::ScalarD, {}, sph ? "4*fpp/f + 4*fp/f + 2*fp^2/f^2 - 8/f^2" : "4*fpp/f + 4*fp/f + 2*fp^2/f^2", q.ssm_s);

  // semi-symmetric non-metric, U = dt
  ssnm.vec(Q::NablaD, {dt, dt}, {{dt, "1"}}, q.ssnm_nabla)
      .vec(Q::NablaD, {dt, a}, {{a, "fp/f"}}, q.ssnm_nabla)
      .vec(Q::NablaD, {a, dt}, {{a, "fp/f"}, {dt, "1"}}, q.ssnm_nabla, kSlip)
      .vec(Q::NablaD, {dt, b}, {{b, "fp/f"}}, q.ssnm_nabla)
      .vec(Q::NablaD, {b, dt}, {{b, "fp/f"}, {dt, "1"}}, q.ssnm_nabla, kSlip)
      .vec(Q::NablaD, {a, a}, {{dt, "-f*fp"}}, q.ssnm_nabla)
      .vec(Q::NablaD, {b, b}, {{dt, "-f*fp"}}, q.ssnm_nabla)
      .vec(Q::NablaD, {a, b}, {}, q.ssnm_nabla)
      .vec(Q::NablaD, {b, a}, {}, q.ssnm_nabla);
  ssnm.vec(Q::RD, {dt, a, dt}, {{a, "(fpp - fp)/f"}}, q.ssnm_R)
      .vec(Q::RD, {dt, b, dt}, {{b, "(fpp - fp)/f"}}, q.ssnm_R)
      .vec(Q::RD, {dt, a, a}, {{dt, "-(f*fpp + f*fp)"}}, q.ssnm_R)
      .vec(Q::RD, {dt, a, b}, {}, q.ssnm_R)
      .vec(Q::RD, {dt, b, a}, {}, q.ssnm_R)
      .vec(Q::RD, {dt, b, b}, {{dt, "-(f*fpp + f*fp)"}}, q.ssnm_R)
      .vec(Q::RD, {a, b, dt}, {{a, "fp/f"}, {b, "-fp/f"}}, q.ssnm_R)
      .vec(Q::RD, {a, b, a}, {{b, "fp^2" + four}, {dt, "f*fp"}}, q.ssnm_R)
      .vec(Q::RD, {a, b, b}, {{a, "0 - fp^2" + mfour}, {dt, "-f*fp"}}, q.ssnm_R);
  ssnm.sca(Q::RicD, {dt, dt}, "2*(fpp - fp)/f", q.ssnm_Ric)
      .sca(Q::RicD, {a, a}, "f*fpp + f*fp + fp^2" + four, q.ssnm_Ric)
      .sca(Q::RicD, {b, b}, "f*fpp + f*fp + fp^2" + four, q.ssnm_Ric)
      .sca(Q::RicD, {dt, a}, "0", q.ssnm_Ric)
      .sca(Q::RicD, {dt, b}, "0", q.ssnm_Ric)
      .sca(Q::RicD, {a, dt}, "-fp/f", q.ssnm_Ric)
      .sca(Q::RicD, {b, dt}, "-fp/f", q.ssnm_Ric)
      .sca(Q::RicD, {a, b}, "0", q.ssnm_Ric)
      .sca(Q::RicD, {b, a}, "0", q.ssnm_Ric);
  if (sph)
    ssnm.sca(Q::Sectional, {dt, a}, "-fpp/f", q.ssnm_K)
        .sca(Q::Sectional, {dt, b}, "-fpp/f", q.ssnm_K)
        .sca(Q::Sectional, {a, b}, "(4 - fp^2)/f^2", q.ssnm_K);
  ssnm.sca(Q::ScalarD, {}, sph ? "4*fpp/f + 2*fp^2/f^2 - 8/f^2" : "4*fpp/f + 2*fp^2/f^2", q.ssnm_s);
  ssm.mark(inherits_slip, kInherited);
  ssnm.mark(inherits_slip, kInherited);
}

std::vector<GoldenBlock> warped_sphere_blocks(const FrameManifold& M) {
  const std::string dt = "dt", x1 = "X1", x2 = "X2", x3 = "X3";
  const double tol = 1e-8;
  const std::vector<int> D{0, 1, 2};
  VectorField U = u_of(4, {{0, 1}});
  Table lc(M, "warped-sphere/lc/D", D, ConnectionSpec::levi_civita(), tol);
  Table ssm(M, "warped-sphere/ssm/D", D, ConnectionSpec::ssm(U), tol);
  Table ssnm(M, "warped-sphere/ssnm/D", D, ConnectionSpec::ssnm(U), tol);

  const std::string e13 = "Eq 5.13";
  lc.vec(Q::Nabla, {dt, dt}, {}, e13)
      .vec(Q::Nabla, {dt, x1}, {{x1, "fp/f"}}, e13)
      .vec(Q::Nabla, {x1, dt}, {{x1, "fp/f"}}, e13)
      .vec(Q::Nabla, {dt, x2}, {{x2, "fp/f"}}, e13)
      .vec(Q::Nabla, {x2, dt}, {{x2, "fp/f"}}, e13)
      .vec(Q::Nabla, {dt, x3}, {}, e13)
      .vec(Q::Nabla, {x3, dt}, {}, e13)
      .vec(Q::Nabla, {x1, x1}, {{dt, "-f*fp"}}, e13)
      .vec(Q::Nabla, {x2, x2}, {{dt, "-f*fp"}}, e13)
      .vec(Q::Nabla, {x1, x2}, {{x3, "1"}}, e13)
      .vec(Q::Nabla, {x2, x1}, {{x3, "-1"}}, e13)
      .vec(Q::Nabla, {x1, x3}, {{x2, "-1/f^2"}}, e13)
      .vec(Q::Nabla, {x3, x1}, {{x2, "2 - 1/f^2"}}, e13)
      .vec(Q::Nabla, {x2, x3}, {{x1, "1/f^2"}}, e13)
      .vec(Q::Nabla, {x3, x2}, {{x1, "1/f^2 - 2"}}, e13)
      .vec(Q::Nabla, {x3, x3}, {}, e13);
  const std::string e14 = "Eq 5.14";
  lc.vec(Q::R, {dt, x1, dt}, {{x1, "fpp/f"}}, e14)
      .vec(Q::R, {dt, x2, dt}, {{x2, "fpp/f"}}, e14)
      .vec(Q::R, {dt, x3, dt}, {}, e14)
      .vec(Q::R, {dt, x1, x1}, {{dt, "-f*fpp"}}, e14)
      .vec(Q::R, {dt, x1, x2}, {{x3, "-fp/f"}}, e14)
      .vec(Q::R, {dt, x1, x3}, {{x2, "fp/f^3"}}, e14)
      .vec(Q::R, {dt, x2, x1}, {{x3, "fp/f"}}, e14)
      .vec(Q::R, {dt, x2, x2}, {{dt, "-f*fpp"}}, e14)
      .vec(Q::R, {dt, x2, x3}, {{x1, "-fp/f^3"}}, e14)
      .vec(Q::R, {dt, x3, x1}, {{x2, "2*fp/f^3"}}, e14)
      .vec(Q::R, {dt, x3, x2}, {{x1, "-2*fp/f^3"}}, e14)
      .vec(Q::R, {dt, x3, x3}, {}, e14)
      .vec(Q::R, {x1, x2, dt}, {{x3, "2*fp/f"}}, e14)
      .vec(Q::R, {x1, x3, dt}, {{x2, "fp/f^3"}}, e14)
      .vec(Q::R, {x2, x3, dt}, {{x1, "-fp/f^3"}}, e14)
      .vec(Q::R, {x1, x2, x1}, {{x2, "fp^2 + 3/f^2 - 4"}}, e14)
      .vec(Q::R, {x1, x2, x2}, {{x1, "0 - fp^2 - 3/f^2 + 4"}}, e14)
      .vec(Q::R, {x1, x2, x3}, {{dt, "-2*fp/f"}}, e14)
      .vec(Q::R, {x1, x3, x1}, {{x3, "-1/f^2"}}, e14)
      .vec(Q::R, {x1, x3, x2}, {{dt, "-fp/f"}}, e14)
      .vec(Q::R, {x1, x3, x3}, {{x1, "1/f^4"}}, e14)
      .vec(Q::R, {x2, x3, x1}, {{dt, "fp/f"}}, e14)
      .vec(Q::R, {x2, x3, x2}, {{x3, "-1/f^2"}}, e14)
      .vec(Q::R, {x2, x3, x3}, {{x2, "1/f^4"}}, e14);
  const std::string e15 = "Eq 5.15";
  lc.sca(Q::Ric, {dt, dt}, "2*fpp/f", e15)
      .sca(Q::Ric, {x1, x1}, "f*fpp + fp^2 + 2/f^2 - 4", e15)
      .sca(Q::Ric, {x2, x2}, "f*fpp + fp^2 + 2/f^2 - 4", e15)
      .sca(Q::Ric, {x3, x3}, "-2/f^4", e15);
  for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{
           {dt, x1}, {dt, x2}, {dt, x3}, {x1, x2}, {x1, x3}, {x2, x3}})
    lc.sca(Q::Ric, {x, y}, "0", e15);
  lc.sca(Q::Scalar, {}, "4*fpp/f + 2*fp^2/f^2 - 8/f^2 - 2/f^4 + 4", "Eq 5.16",
         "trace of the listed Ricci entries gives 4f''/f + 2f'^2/f^2 - 8/f^2 + 2/f^4");
  const std::string e18 = "Eq 5.18";
  lc.vec(Q::B, {dt, dt}, {}, e18)
      .vec(Q::B, {x1, x1}, {}, e18)
      .vec(Q::B, {x2, x2}, {}, e18)
      .vec(Q::B, {x1, dt}, {}, e18)
      .vec(Q::B, {dt, x1}, {}, e18)
      .vec(Q::B, {dt, x2}, {}, e18)
      .vec(Q::B, {x2, dt}, {}, e18)
      .vec(Q::B, {x1, x2}, {{x3, "1"}}, e18)
      .vec(Q::B, {x2, x1}, {{x3, "-1"}}, e18)
      .vec(Q::Shape, {x3, dt}, {}, e18)
      .vec(Q::Shape, {x3, x1}, {{x2, "1/f^2"}}, e18)
      .vec(Q::Shape, {x3, x2}, {{x1, "-1/f^2"}}, e18)
      .vec(Q::NormalConn, {dt, x3}, {}, e18)
      .vec(Q::NormalConn, {x1, x3}, {}, e18)
      .vec(Q::NormalConn, {x2, x3}, {}, e18);

  WarpedEqs q{e13,       e14,       e15,       "Eq 5.16", "Eq 5.17", e18,       "Eq 5.19",
              "Eq 5.20", "Eq 5.21", "Eq 5.24", "Eq 5.26", "Eq 5.25", "Eq 5.27", "Eq 5.28",
              "Eq 5.29", "Eq 5.30", "Eq 5.31", "Eq 5.32", "Eq 5.33", "Eq 5.34", "Eq 5.35"};
  warped_d_tables(lc, ssm, ssnm, true, q, x1, x2);
  return {lc.done(), ssm.done(), ssnm.done()};
}

std::vector<GoldenBlock> warped_heisenberg_blocks(const FrameManifold& M) {
  const std::string dt = "dt", e1 = "e1", e2 = "e2", e3 = "e3";
  const double tol = 1e-8;
  const std::vector<int> D{0, 1, 2};
  VectorField U = u_of(4, {{0, 1}});
  Table lc(M, "warped-heisenberg/lc/D", D, ConnectionSpec::levi_civita(), tol);
  Table ssm(M, "warped-heisenberg/ssm/D", D, ConnectionSpec::ssm(U), tol);
  Table ssnm(M, "warped-heisenberg/ssnm/D", D, ConnectionSpec::ssnm(U), tol);

  const std::string e44 = "Eq 5.44";
  lc.vec(Q::Nabla, {dt, dt}, {}, e44)
      .vec(Q::Nabla, {dt, e1}, {{e1, "fp/f"}}, e44)
      .vec(Q::Nabla, {e1, dt}, {{e1, "fp/f"}}, e44)
      .vec(Q::Nabla, {dt, e2}, {{e2, "fp/f"}}, e44)
      .vec(Q::Nabla, {e2, dt}, {{e2, "fp/f"}}, e44)
      .vec(Q::Nabla, {dt, e3}, {}, e44)
      .vec(Q::Nabla, {e3, dt}, {}, e44)
      .vec(Q::Nabla, {e1, e1}, {{dt, "-f*fp"}}, e44)
      .vec(Q::Nabla, {e2, e2}, {{dt, "-f*fp"}}, e44)
      .vec(Q::Nabla, {e1, e2}, {{e3, "1/2"}}, e44)
      .vec(Q::Nabla, {e2, e1}, {{e3, "-1/2"}}, e44)
      .vec(Q::Nabla, {e1, e3}, {{e2, "-1/(2*f^2)"}}, e44)
      .vec(Q::Nabla, {e3, e1}, {{e2, "-1/(2*f^2)"}}, e44)
      .vec(Q::Nabla, {e2, e3}, {{e1, "1/(2*f^2)"}}, e44)
      .vec(Q::Nabla, {e3, e2}, {{e1, "1/(2*f^2)"}}, e44)
      .vec(Q::Nabla, {e3, e3}, {}, e44);
  const std::string e45 = "Eq 5.45";
  lc.vec(Q::R, {dt, e1, dt}, {{e1, "fpp/f"}}, e45)
      .vec(Q::R, {dt, e2, dt}, {{e2, "fpp/f"}}, e45)
      .vec(Q::R, {dt, e3, dt}, {}, e45)
      .vec(Q::R, {dt, e1, e1}, {{dt, "-f*fpp"}}, e45)
      .vec(Q::R, {dt, e1, e2}, {{e3, "-fp/(2*f)"}}, e45)
      .vec(Q::R, {dt, e1, e3}, {{e2, "fp/(2*f^3)"}}, e45)
      .vec(Q::R, {dt, e2, e1}, {{e3, "fp/(2*f)"}}, e45)
      .vec(Q::R, {dt, e2, e2}, {{dt, "-f*fpp"}}, e45)
      .vec(Q::R, {dt, e2, e3}, {{e1, "-fp/(2*f^3)"}}, e45)
      .vec(Q::R, {dt, e3, e1}, {{e2, "fp/f^3"}}, e45)
      .vec(Q::R, {dt, e3, e2}, {{e1, "-fp/f^3"}}, e45)
      .vec(Q::R, {dt, e3, e3}, {}, e45)
      .vec(Q::R, {e1, e2, dt}, {{e3, "fp/f"}}, e45)
      .vec(Q::R, {e1, e3, dt}, {{e2, "fp/(2*f^3)"}}, e45)
      .vec(Q::R, {e2, e3, dt}, {{e1, "-fp/(2*f^3)"}}, e45)
      .vec(Q::R, {e1, e2, e1}, {{e2, "fp^2 + 3/(4*f^2)"}}, e45)
      .vec(Q::R, {e1, e2, e2}, {{e1, "-(fp^2 + 3/(4*f^2))"}}, e45)
      .vec(Q::R, {e1, e2, e3}, {{dt, "-fp/f"}}, e45)
      .vec(Q::R, {e1, e3, e1}, {{e3, "-1/(4*f^2)"}}, e45)
      .vec(Q::R, {e1, e3, e2}, {{dt, "-fp/(2*f)"}}, e45)
      .vec(Q::R, {e1, e3, e3}, {{e1, "1/(4*f^4)"}}, e45)
      .vec(Q::R, {e2, e3, e1}, {{dt, "fp/(2*f)"}}, e45)
      .vec(Q::R, {e2, e3, e2}, {{e3, "-1/(4*f^2)"}}, e45)
      .vec(Q::R, {e2, e3, e3}, {{e2, "1/(4*f^4)"}}, e45);
  const std::string e46 = "Eq 5.46";
  lc.sca(Q::Ric, {dt, dt}, "2*fpp/f", e46)
      .sca(Q::Ric, {e1, e1}, "f*fpp + fp^2 + 1/(2*f^2)", e46)
      .sca(Q::Ric, {e2, e2}, "f*fpp + fp^2 + 1/(2*f^2)", e46)
      .sca(Q::Ric, {e3, e3}, "-1/(2*f^4)", e46);
  for (auto [x, y] : std::vector<std::pair<std::string, std::string>>{
           {dt, e1}, {dt, e2}, {dt, e3}, {e1, e2}, {e1, e3}, {e2, e3}})
    lc.sca(Q::Ric, {x, y}, "0", e46);
  lc.sca(Q::Scalar, {}, "4*fpp/f + 2*fp^2/f^2 + 1/(2*f^4)", "Eq 5.47");

  WarpedEqs q{e44,       e45,       e46,       "Eq 5.47", "Eq 5.48", "",        "Eq 5.49",
              "Eq 5.50", "Eq 5.51", "Eq 5.54", "Eq 5.55", "",        "Eq 5.56", "",
              "Eq 5.57", "Eq 5.58", "Eq 5.59", "Eq 5.60", "Eq 5.61", "",        "Eq 5.62"};
  warped_d_tables(lc, ssm, ssnm, false, q, e1, e2);
  return {lc.done(), ssm.done(), ssnm.done()};
}

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string render_sample(const std::vector<double>& coeffs, const std::vector<std::string>& labels, bool scalar) {
  if (scalar) return fmt(coeffs[0]);
  std::string out;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (std::fabs(coeffs[i]) < 1e-12) continue;
    if (!out.empty()) out += " + ";
    out += fmt(coeffs[i]) + "*" + labels[i];
  }
  return out.empty() ? "0" : out;
}

}  // namespace

ManifoldPtr sphere3(const SamplePlan& plan) {
  return std::make_shared<const FrameManifold>("sphere3", std::vector<std::string>{"X1", "X2", "X3"},
                                               std::vector<ScalarExpr>{C(1), C(1), C(1)}, sphere_structure(),
                                               std::vector<ScalarExpr>(3), plan);
}

ManifoldPtr heisenberg3(const SamplePlan& plan) {
  return std::make_shared<const FrameManifold>("heisenberg3", std::vector<std::string>{"e1", "e2", "e3"},
                                               std::vector<ScalarExpr>{C(1), C(1), C(1)}, heisenberg_structure(),
                                               std::vector<ScalarExpr>(3), plan);
}

ManifoldPtr warped_sphere(const ScalarExpr& f, const SamplePlan& plan) {
  return warped("warped-sphere", {"X1", "X2", "X3"}, sphere_structure(), f, plan);
}

ManifoldPtr warped_heisenberg(const ScalarExpr& f, const SamplePlan& plan) {
  return warped("warped-heisenberg", {"e1", "e2", "e3"}, heisenberg_structure(), f, plan);
}

ManifoldPtr flat_frame(std::size_t m, double twist, const SamplePlan& plan) {
  if (m < 2) throw InvalidArgument("flat frame needs dimension >= 2");
  if (twist != 0.0 && m < 3) throw InvalidArgument("a twisted flat frame needs dimension >= 3");
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < m; ++i) labels.push_back("E" + std::to_string(i + 1));
  Tensor3 c(m);
  if (twist != 0.0) {
    const int last = static_cast<int>(m) - 1;
    set_bracket(c, 0, 1, last, C(twist));
    set_bracket(c, 0, last, 1, C(-twist));
  }
  std::vector<ScalarExpr> w(m);
  w[0] = C(1);
  return std::make_shared<const FrameManifold>("flat", labels, std::vector<ScalarExpr>(m, C(1)), c, w, plan);
}

std::string to_string(GoldenQuantity q) {
  switch (q) {
    case Q::Bracket: return "bracket";
    case Q::Nabla: return "nabla";
    case Q::NablaD: return "nabla_D";
    case Q::B: return "B";
    case Q::H: return "H";
    case Q::Shape: return "A";
    case Q::ShapeSpec: return "A_spec";
    case Q::NormalConn: return "L_perp";
    case Q::R: return "R";
    case Q::RD: return "R_D";
    case Q::Ric: return "Ric";
    case Q::Scalar: return "s";
    case Q::Sectional: return "K_D";
    case Q::Tau: return "tau_D";
    case Q::RicD: return "Ric_D";
    case Q::ScalarD: return "s_D";
  }
  return "?";
}

std::vector<std::string> preset_names() { return {"sphere3", "heisenberg3", "warped-sphere", "warped-heisenberg", "flat"}; }

std::string preset_anchor(const std::string& name) {
  if (name == "sphere3") return "Example 1, Eq 5.1";
  if (name == "heisenberg3") return "Example 3, Eq 5.39";
  if (name == "warped-sphere") return "Example 2, Eq 5.12";
  if (name == "warped-heisenberg") return "Example 4, Eq 5.43";
  if (name == "flat") return "flat frame, constant curvature 0";
  throw InvalidArgument("unknown preset '" + name + "'");
}

ScenarioPreset make_preset(const std::string& name, const std::optional<ScalarExpr>& f_in, const SamplePlan& plan,
                           std::size_t dim) {
  ScenarioPreset p;
  p.name = name;
  if (name == "sphere3") {
    p.manifold = sphere3(plan);
    p.description = "unit 3-sphere frame, D1 = span{X1,X2}, U = X1 + X3";
    p.distribution = {0, 1};
    p.connection = ConnectionSpec::ssm(u_of(3, {{0, 1}, {2, 1}}));
    p.declared_c = eval(ambient_sectional(*p.manifold, 0, 1), plan.points.front());
    p.golden = sphere_blocks(*p.manifold);
  } else if (name == "heisenberg3") {
    p.manifold = heisenberg3(plan);
    p.description = "Heisenberg group frame, D = span{e1,e2}, U = e1 + e2 + e3";
    p.distribution = {0, 1};
    p.connection = ConnectionSpec::ssm(u_of(3, {{0, 1}, {1, 1}, {2, 1}}));
    p.golden = heisenberg_blocks(*p.manifold);
  } else if (name == "warped-sphere" || name == "warped-heisenberg") {
    ScalarExpr f = f_in ? *f_in : parse_expr("2*t+1");
    const bool sph = name == "warped-sphere";
    p.manifold = sph ? warped_sphere(f, plan) : warped_heisenberg(f, plan);
    p.description = sph ? "R x S^3 warped on span{X1,X2}, D = span{dt,X1,X2}, U = dt"
                        : "R x H_3 warped on span{e1,e2}, D = span{dt,e1,e2}, U = dt";
    p.distribution = {0, 1, 2};
    p.connection = ConnectionSpec::ssm(u_of(4, {{0, 1}}));
    Differentiator d;
    ScalarExpr fp = d(f);
    p.bindings = {{"f", f}, {"fp", fp}, {"fpp", d(fp)}};
    p.golden = sph ? warped_sphere_blocks(*p.manifold) : warped_heisenberg_blocks(*p.manifold);
  } else if (name == "flat") {
    if (dim < 3) throw InvalidArgument("flat preset needs dimension >= 3");
    p.manifold = flat_frame(dim, 0.0, plan);
    p.description = "flat abelian frame of dimension " + std::to_string(dim);
    for (std::size_t i = 0; i + 2 < dim || p.distribution.size() < 2; ++i) p.distribution.push_back(static_cast<int>(i));
    p.connection = ConnectionSpec::levi_civita();
    p.declared_c = 0.0;
  } else {
    throw InvalidArgument("unknown preset '" + name + "'");
  }
  return p;
}

std::vector<GoldenResult> evaluate_golden(const ManifoldPtr& M, const GoldenBlock& block, const Bindings& bindings) {
  Distribution dist(M, block.distribution);
  InducedGeometry G(dist, block.connection);
  Sampler s(M->plan());
  const std::size_t m = M->dim();
  const auto& labels = M->labels();

  std::optional<Matrix> ric;
  std::optional<ScalarExpr> scal;
  std::optional<RicciD> ricD;
  auto pos_in_D = [&](int i) {
    const auto& idx = dist.indices();
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (idx[k] == i) return k;
    throw NotTangent("frame index " + std::to_string(i + 1) + " is not in the distribution");
  };

  std::vector<GoldenResult> out;
  for (const auto& e : block.entries) {
    const auto& a = e.args;
    auto F = [&](std::size_t k) { return G.frame(a.at(k)); };
    bool scalar = e.expected.size() == 1 && e.expected[0].first.empty();
    VectorField engine(m);
    ScalarExpr engine_s;
    switch (e.quantity) {
      case Q::Bracket: engine = G.bracket(F(0), F(1)); break;
      case Q::Nabla: engine = G.nabla_lc(F(0), F(1)); break;
      case Q::NablaD: engine = G.nabla_D(F(0), F(1)); break;
      case Q::B: engine = G.B(F(0), F(1)); break;
      case Q::H: engine = mean_curvature(dist, G.ambient()); break;
      case Q::Shape: engine = G.A_lc(F(0), F(1)); break;
      case Q::ShapeSpec: engine = G.A_tilde(F(0), F(1)); break;
      case Q::NormalConn: engine = G.L_perp(F(0), F(1)); break;
      case Q::R: engine = G.calc().curvature(G.lc(), F(0), F(1), F(2)); break;
      case Q::RD: engine = G.curvature_D(F(0), F(1), F(2)); break;
      case Q::Ric:
        if (!ric) ric = ricci_ambient(*M, M->levi_civita());
        engine_s = (*ric)[a.at(0)][a.at(1)];
        break;
      case Q::Scalar:
        if (!scal) scal = scalar_ambient(*M, M->levi_civita());
        engine_s = *scal;
        break;
      case Q::Sectional: engine_s = sectional(dist, block.connection, a.at(0), a.at(1)); break;
      case Q::Tau: engine_s = scalar_tau(dist, block.connection); break;
      case Q::RicD:
        if (!ricD) ricD = ricci_D(dist, block.connection);
        engine_s = ricD->ric[pos_in_D(a.at(0))][pos_in_D(a.at(1))];
        break;
      case Q::ScalarD:
        if (!ricD) ricD = ricci_D(dist, block.connection);
        engine_s = ricD->scalar;
        break;
    }

    GoldenResult r;
    r.block = block.name;
    r.eq = e.eq;
    r.finding = e.finding;
    r.key = to_string(e.quantity) + "(";
    for (std::size_t k = 0; k < a.size(); ++k) r.key += (k ? "," : "") + labels[a[k]];
    r.key += ")";

    std::vector<ScalarExpr> expected_c, engine_c;
    if (scalar) {
      expected_c = {parse_expr(e.expected[0].second, bindings)};
      engine_c = {engine_s};
      r.expected = e.expected[0].second;
    } else {
      expected_c.assign(m, ScalarExpr());
      for (const auto& [lab, ex] : e.expected) {
        std::size_t k = 0;
        while (k < m && labels[k] != lab) ++k;
        if (k == m) throw InvalidArgument("unknown frame label " + lab);
        expected_c[k] = expected_c[k] + parse_expr(ex, bindings);
        r.expected += (r.expected.empty() ? "" : " + ") + std::string("(") + ex + ")*" + lab;
      }
      if (r.expected.empty()) r.expected = "0";
      engine_c = engine.coeffs();
    }
    std::vector<double> ev0, gv0;
    for (std::size_t k = 0; k < expected_c.size(); ++k) {
      for (std::size_t p = 0; p < s.size(); ++p) {
        double x = s.value(expected_c[k], p), y = s.value(engine_c[k], p);
        double d = std::fabs(x - y);
        if (std::isnan(d) || d > r.residual) r.residual = d;
        if (p == 0) {
          ev0.push_back(x);
          gv0.push_back(y);
        }
      }
    }
    r.expected_sample = render_sample(ev0, labels, scalar);
    r.engine_sample = render_sample(gv0, labels, scalar);
    r.match = r.residual < block.tolerance;
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<GoldenResult> evaluate_golden(const ScenarioPreset& preset) {
  std::vector<GoldenResult> out;
  for (const auto& b : preset.golden) {
    auto part = evaluate_golden(preset.manifold, b, preset.bindings);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace distgeo
