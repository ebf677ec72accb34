#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "distgeo/distribution.hpp"
#include "distgeo/errors.hpp"
#include "support.hpp"

using namespace testing;

namespace {

VectorField zero(const FrameManifold& M) { return VectorField(M.dim()); }

}  // namespace

TEST_CASE("projections split a field") {
  auto M = sphere3();
  Distribution D1(M, {0, 1});
  CHECK(diff(*M, project(D1, basis(*M, 2), Side::D), zero(*M)) == 0.0);
  VectorField v = field(*M, {"1", "0", "1"});
  CHECK(diff(*M, project(D1, v, Side::Dperp), basis(*M, 2)) == 0.0);
  VectorField w = field(*M, {"t", "2", "sin(t)"});
  CHECK(diff(*M, project(D1, w, Side::D) + project(D1, w, Side::Dperp), w) == 0.0);
  CHECK(D1.complement() == std::vector<int>{2});
  CHECK_THROWS(Distribution(M, {}));
  CHECK_THROWS(Distribution(M, {0, 1, 2}));
  CHECK_THROWS(Distribution(M, {0, 0}));
}

TEST_CASE("integrability witnesses") {
  auto S = sphere3();
  Integrability a = is_integrable(Distribution(S, {0, 1}));
  CHECK_FALSE(a.integrable);
  REQUIRE(a.witness);
  CHECK(a.witness->first == 0);
  CHECK(a.witness->second == 1);
  CHECK(diff(*S, a.witness_normal, field(*S, {"0", "0", "2"})) < 1e-12);
  CHECK(is_integrable(Distribution(flat_frame(5), {0, 2, 3})).integrable);
  CHECK(is_integrable(Distribution(heisenberg3(), {0, 2})).integrable);
  CHECK_FALSE(is_integrable(Distribution(heisenberg3(), {0, 1})).integrable);
}

TEST_CASE("second fundamental form is not symmetric") {
  auto S = sphere3();
  Distribution D1(S, {0, 1});
  const auto& C = S->levi_civita();
  CHECK(diff(*S, second_fundamental_form(D1, C, basis(*S, 0), basis(*S, 1)), basis(*S, 2)) < 1e-12);
  CHECK(diff(*S, second_fundamental_form(D1, C, basis(*S, 1), basis(*S, 0)), -basis(*S, 2)) < 1e-12);
  CHECK(diff(*S, second_fundamental_form(D1, C, basis(*S, 0), basis(*S, 0)), zero(*S)) < 1e-12);
  CHECK_THROWS_AS(second_fundamental_form(D1, C, basis(*S, 2), basis(*S, 0)), NotTangent);
  auto H = heisenberg3();
  Distribution DH(H, {0, 1});
  CHECK(diff(*H, second_fundamental_form(DH, H->levi_civita(), basis(*H, 0), basis(*H, 1)), field(*H, {"0", "0", "1/2"})) < 1e-12);
}

TEST_CASE("warped sphere second fundamental form and shape operator") {
  for (const auto& ft : test_warps()) {
    CAPTURE(ft);
    Bindings b = warp_bindings(ft);
    auto M = warped_sphere(b["f"]);
    Distribution D(M, {0, 1, 2});
    const auto& C = M->levi_civita();
    CHECK(diff(*M, project(D, covariant(*M, C, basis(*M, 1), basis(*M, 2)), Side::Dperp), basis(*M, 3)) < 1e-9);
    ShapeOperator A = shape_operator(D, C, basis(*M, 3));
    CHECK(diff(*M, A.shape[1], field(*M, {"0", "0", "1/f^2", "0"}, b)) < 1e-9);
    CHECK(diff(*M, A.shape[0], zero(*M)) < 1e-9);
  }
}

TEST_CASE("sphere shape operator and normal connection") {
  auto S = sphere3();
  Distribution D1(S, {0, 1});
  ShapeOperator A = shape_operator(D1, S->levi_civita(), basis(*S, 2));
  CHECK(diff(*S, A.shape[0], basis(*S, 1)) < 1e-12);
  CHECK(diff(*S, A.shape[1], -basis(*S, 0)) < 1e-12);
  CHECK(diff(*S, A.normal[0], zero(*S)) < 1e-12);
  CHECK(diff(*S, A.normal[1], zero(*S)) < 1e-12);
  CHECK_THROWS_AS(shape_operator(D1, S->levi_civita(), basis(*S, 0)), NotNormal);
}

TEST_CASE("vanishing second fundamental form gives a vanishing shape operator") {
  auto F = flat_frame(4);
  Distribution D(F, {0, 1});
  for (int x : D.complement()) {
    ShapeOperator A = shape_operator(D, F->levi_civita(), basis(*F, static_cast<std::size_t>(x)));
    for (const auto& v : A.shape) CHECK(diff(*F, v, zero(*F)) == 0.0);
  }
}

TEST_CASE("mean curvature") {
  auto S = sphere3();
  Distribution D1(S, {0, 1});
  CHECK(diff(*S, mean_curvature(D1, S->levi_civita()), zero(*S)) < 1e-12);
  VectorField U = field(*S, {"1", "0", "1"});
  CHECK(diff(*S, mean_curvature(D1, ambient_connection(*S, ConnectionSpec::ssm(U))), -basis(*S, 2)) < 1e-12);
}

TEST_CASE("semi-symmetric mean curvature shifts by the normal part of U") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  auto M = warped_heisenberg(E("exp(t)"));
  Distribution D(M, {0, 1, 2});
  const VectorField H = mean_curvature(D, M->levi_civita());
  for (int k = 0; k < 10; ++k) {
    VectorField U(4);
    for (std::size_t i = 0; i < 4; ++i) U[i] = ScalarExpr(u(rng)) + ScalarExpr(u(rng)) * ScalarExpr::t();
    VectorField Ht = mean_curvature(D, ambient_connection(*M, ConnectionSpec::ssm(U)));
    CHECK(diff(*M, Ht, H - project(D, U, Side::Dperp)) < 1e-9);
    // Mean curvatures agree exactly when U lies in D.
    VectorField Ut = project(D, U, Side::D);
    CHECK(diff(*M, mean_curvature(D, ambient_connection(*M, ConnectionSpec::ssm(Ut))), H) < 1e-9);
  }
}

TEST_CASE("predicates for semi-symmetric connections") {
  auto S = sphere3();
  Distribution D1(S, {0, 1});
  CHECK(predicates(D1, S->levi_civita()).totally_geodesic);
  CHECK(predicates(D1, S->levi_civita()).minimal);
  Predicates off = predicates(D1, ambient_connection(*S, ConnectionSpec::ssm(field(*S, {"1", "0", "1"}))));
  CHECK_FALSE(off.totally_geodesic);
  CHECK(off.totally_geodesic_residual > 1.0);
  CHECK(predicates(D1, ambient_connection(*S, ConnectionSpec::ssm(field(*S, {"1", "0", "0"})))).totally_geodesic);
}

TEST_CASE("umbilicity agrees between Levi-Civita and semi-symmetric metric connections") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  const std::vector<ManifoldPtr> Ms{sphere3(), heisenberg3(), warped_sphere(E("2*t+1")), warped_heisenberg(E("exp(t)"))};
  for (int k = 0; k < 20; ++k) {
    const auto& M = Ms[static_cast<std::size_t>(k) % Ms.size()];
    std::vector<int> idx{0};
    if (k % 3) idx.push_back(1);
    if (M->dim() > 3 && k % 2) idx.push_back(2);
    Distribution D(M, idx);
    VectorField U(M->dim());
    for (std::size_t i = 0; i < M->dim(); ++i) U[i] = ScalarExpr(u(rng));
    CHECK(predicates(D, M->levi_civita()).umbilical == predicates(D, ambient_connection(*M, ConnectionSpec::ssm(U))).umbilical);
  }
}

TEST_CASE("induced Levi-Civita connection: torsion, metric and Gauss split") {
  for (const auto& M : {sphere3(), heisenberg3(), warped_sphere(E("exp(t)")), warped_heisenberg(E("(2*t+1)^(2/3)"))}) {
    Distribution D(M, M->dim() == 3 ? std::vector<int>{0, 1} : std::vector<int>{0, 1, 2});
    const auto& C = M->levi_civita();
    Calculus calc(*M);
    for (int a : D.indices())
      for (int b : D.indices()) {
        VectorField X = basis(*M, a), Y = basis(*M, b);
        VectorField nXY = project(D, covariant(*M, C, X, Y), Side::D);
        VectorField nYX = project(D, covariant(*M, C, Y, X), Side::D);
        VectorField br = bracket_general(*M, X, Y);
        CHECK(diff(*M, nXY - nYX - br, -project(D, br, Side::Dperp)) < 1e-9);
        CHECK(diff(*M, nXY + second_fundamental_form(D, C, X, Y), covariant(*M, C, X, Y)) < 1e-12);
        for (int c : D.indices()) {
          VectorField Z = basis(*M, c);
          ScalarExpr lhs = calc.apply(X, inner(*M, Y, Z));
          ScalarExpr rhs = inner(*M, project(D, covariant(*M, C, X, Y), Side::D), Z) +
                           inner(*M, Y, project(D, covariant(*M, C, X, Z), Side::D));
          CHECK(diff(*M, lhs, rhs) < 1e-9);
        }
      }
    for (int x : D.complement()) {
      VectorField xi = basis(*M, x);
      ShapeOperator A = shape_operator(D, C, xi);
      for (std::size_t k = 0; k < D.indices().size(); ++k) {
        VectorField X = basis(*M, D.indices()[k]);
        CHECK(diff(*M, covariant(*M, C, X, xi), -A.shape[k] + A.normal[k]) < 1e-9);
        for (int a : D.indices()) CHECK(diff(*M, inner(*M, A.normal[k], basis(*M, a)), ScalarExpr(0)) == 0.0);
      }
    }
  }
}

TEST_CASE("tangency guards") {
  auto S = sphere3();
  Distribution D1(S, {0, 1});
  CHECK_NOTHROW(require_tangent(D1, field(*S, {"1", "t", "0"}), "X"));
  CHECK_THROWS_AS(require_tangent(D1, field(*S, {"1", "0", "0.001"}), "X"), NotTangent);
  CHECK_THROWS_AS(require_normal(D1, field(*S, {"1", "0", "1"}), "xi"), NotNormal);
}
