#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "distgeo/curvature.hpp"
#include "distgeo/errors.hpp"
#include "support.hpp"

using namespace testing;

namespace {

VectorField U_sphere_D1(const FrameManifold& S) { return field(S, {"1", "0", "1"}); }

std::vector<std::vector<int>> proper_masks(std::size_t m) {
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
    std::vector<int> idx;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) idx.push_back(static_cast<int>(i));
    out.push_back(idx);
  }
  return out;
}

Tensor3 random_K(const FrameManifold& M, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  const std::size_t m = M.dim();
  Tensor3 c(m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = a; b < m; ++b)
      for (std::size_t d = b; d < m; ++d) {
        ScalarExpr v(u(rng));
        c(a, b, d) = c(a, d, b) = c(b, a, d) = c(b, d, a) = c(d, a, b) = c(d, b, a) = v;
      }
  return cubic_form_to_K(M, c);
}

std::vector<ConnectionSpec> specs_for(const FrameManifold& M, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  VectorField U(M.dim());
  for (std::size_t i = 0; i < M.dim(); ++i) U[i] = ScalarExpr(u(rng)) + ScalarExpr(u(rng)) * ScalarExpr::t();
  Tensor3 K = random_K(M, rng);
  return {ConnectionSpec::levi_civita(), ConnectionSpec::ssm(U), ConnectionSpec::ssnm(U), ConnectionSpec::stat(K),
          ConnectionSpec::stat_dual(K)};
}

}  // namespace

TEST_CASE("Levi-Civita curvature of the sphere distribution from the bracket term") {
  // nabla^D vanishes on the D1 frame, so R^D(X1,X2)Z = -pi^D [2 X3, Z].
  auto S = sphere3();
  Distribution D1(S, {0, 1});
  auto lc = ConnectionSpec::levi_civita();
  CHECK(diff(*S, curvature_D(D1, lc, basis(*S, 0), basis(*S, 1), basis(*S, 0)), field(*S, {"0", "-4", "0"})) < 1e-12);
  CHECK(diff(*S, curvature_D(D1, lc, basis(*S, 0), basis(*S, 1), basis(*S, 1)), field(*S, {"4", "0", "0"})) < 1e-12);
  CHECK(diff(*S, sectional(D1, lc, 0, 1), ScalarExpr(4)) < 1e-12);
  CHECK(diff(*S, scalar_tau(D1, lc), ScalarExpr(4)) < 1e-12);
}

TEST_CASE("sphere semi-symmetric curvature values") {
  auto S = sphere3();
  Distribution D1(S, {0, 1});
  auto ssm = ConnectionSpec::ssm(U_sphere_D1(*S));
  auto ssnm = ConnectionSpec::ssnm(U_sphere_D1(*S));
  CHECK(diff(*S, curvature_D(D1, ssm, basis(*S, 0), basis(*S, 1), basis(*S, 0)), field(*S, {"0", "-4", "0"})) < 1e-9);
  CHECK(diff(*S, sectional(D1, ssm, 0, 1), ScalarExpr(4)) < 1e-9);
  CHECK(diff(*S, scalar_tau(D1, ssm), ScalarExpr(4)) < 1e-9);
  CHECK(diff(*S, curvature_D(D1, ssnm, basis(*S, 0), basis(*S, 1), basis(*S, 0)), field(*S, {"0", "-5", "0"})) < 1e-9);
  // D2 = span{X1, X3}; the cyclic frame symmetry X1 -> X3 -> X2 -> X1 maps D1 to D2.
  Distribution D2(S, {0, 2});
  VectorField U2 = field(*S, {"0", "1", "1"});
  CHECK(diff(*S, curvature_D(D2, ConnectionSpec::levi_civita(), basis(*S, 0), basis(*S, 2), basis(*S, 0)),
             field(*S, {"0", "0", "-4"})) < 1e-12);
  CHECK(diff(*S, sectional(D2, ConnectionSpec::ssm(U2), 0, 2), ScalarExpr(4)) < 1e-9);
  CHECK(diff(*S, scalar_tau(D2, ConnectionSpec::ssm(U2)), ScalarExpr(4)) < 1e-9);
  CHECK(diff(*S, sectional(D2, ConnectionSpec::ssnm(U2), 0, 2), ScalarExpr(4.5)) < 1e-9);
  CHECK(diff(*S, scalar_tau(D2, ConnectionSpec::ssnm(U2)), ScalarExpr(4.5)) < 1e-9);
}

TEST_CASE("Heisenberg semi-symmetric curvature values") {
  auto H = heisenberg3();
  Distribution D(H, {0, 1});
  VectorField U = field(*H, {"1", "1", "1"});
  CHECK(diff(*H, curvature_D(D, ConnectionSpec::ssm(U), basis(*H, 0), basis(*H, 1), basis(*H, 0)), VectorField(3)) < 1e-9);
  CHECK(diff(*H, curvature_D(D, ConnectionSpec::ssnm(U), basis(*H, 0), basis(*H, 1), basis(*H, 0)),
             field(*H, {"1", "-1", "0"})) < 1e-9);
}

TEST_CASE("Gauss, Codazzi and Ricci equations across the catalog") {
  std::mt19937_64 rng(2024);
  for (const auto& M : {sphere3(), heisenberg3(), warped_sphere(E("2*t+1")), warped_heisenberg(E("exp(t)"))}) {
    for (const auto& spec : specs_for(*M, rng))
      for (const auto& idx : proper_masks(M->dim())) {
        Distribution D(M, idx);
        CAPTURE(M->name());
        CAPTURE(to_string(spec.kind));
        CAPTURE(idx.size());
        CheckReport g = verify_gauss(D, spec), c = verify_codazzi(D, spec), r = verify_ricci_eq(D, spec);
        CHECK(g.pass);
        CHECK(c.pass);
        CHECK(r.pass);
        CHECK(g.max_residual < 1e-9);
        CHECK(c.max_residual < 1e-9);
        CHECK(r.max_residual < 1e-9);
        CHECK_FALSE(g.grid.empty());
      }
  }
}

TEST_CASE("a wrong curvature fails the Gauss equation") {
  // Dropping the bracket term makes the sphere D1 check fail: guard against vacuous passes.
  auto S = sphere3();
  Distribution D1(S, {0, 1});
  const auto lc = ConnectionSpec::levi_civita();
  VectorField with = curvature_D(D1, lc, basis(*S, 0), basis(*S, 1), basis(*S, 0));
  CHECK(max_abs(*S, with) > 1.0);
  CHECK(verify_gauss(D1, lc).tolerance == 1e-9);
}

TEST_CASE("curvature of D is tensorial and antisymmetric") {
  std::mt19937_64 rng(8);
  for (const auto& M : {sphere3(), warped_heisenberg(E("2*t+1"))}) {
    Distribution D(M, {0, 1});
    for (const auto& spec : specs_for(*M, rng)) {
      CHECK(tensoriality(D, spec).pass);
      CHECK(antisymmetry(D, spec).pass);
    }
  }
}

TEST_CASE("sectional curvature is rotation invariant in the plane") {
  std::mt19937_64 rng(12);
  for (const auto& M : {heisenberg3(), warped_sphere(E("exp(t)"))}) {
    Distribution D(M, {0, 1});
    for (const auto& spec : specs_for(*M, rng))
      for (double a : {0.3, 1.1}) CHECK(rotation_invariance(D, spec, a).pass);
  }
}

TEST_CASE("zero U and zero K reduce to Levi-Civita") {
  for (const auto& M : {sphere3(), heisenberg3(), warped_sphere(E("(2*t+1)^(2/3)")), warped_heisenberg(E("exp(t)"))})
    for (const auto& idx : proper_masks(M->dim())) {
      Distribution D(M, idx);
      for (const auto& spec : {ConnectionSpec::ssm(VectorField(M->dim())), ConnectionSpec::ssnm(VectorField(M->dim())),
                               ConnectionSpec::stat(Tensor3(M->dim())), ConnectionSpec::stat_dual(Tensor3(M->dim()))}) {
        CheckReport r = reduction(D, spec);
        CHECK(r.pass);
        CHECK(r.max_residual < 1e-12);
      }
    }
  auto S = sphere3();
  CheckReport off = reduction(Distribution(S, {0, 1}), ConnectionSpec::ssm(U_sphere_D1(*S)));
  CHECK_FALSE(off.pass);
  CHECK(off.max_residual > 0.5);
}

TEST_CASE("Ricci of D and scalar curvature") {
  auto S = sphere3();
  Distribution D1(S, {0, 1});
  RicciD r = ricci_D(D1, ConnectionSpec::levi_civita());
  CHECK(r.indices == std::vector<int>{0, 1});
  CHECK(diff(*S, r.scalar, 2 * scalar_tau(D1, ConnectionSpec::levi_civita()) * ScalarExpr(-1)) < 1e-9);
  CHECK(diff(*S, r.ric[0][1], ScalarExpr(0)) < 1e-12);
}

TEST_CASE("mixed Ricci flatness on warped spheres") {
  auto c = warped_sphere(E("2"));
  Distribution Dc(c, {0, 1, 2});
  auto Uc = ConnectionSpec::ssm(basis(*c, 0));
  CHECK(is_mixed_ricci_flat(Dc, Uc).flat);
  // With omega(dt) X_i in the induced connection every mixed entry vanishes, for any f.
  auto e = warped_sphere(E("exp(t)"));
  Distribution De(e, {0, 1, 2});
  for (const auto& spec : {ConnectionSpec::ssm(basis(*e, 0)), ConnectionSpec::ssnm(basis(*e, 0))}) {
    MixedRicciFlat mr = is_mixed_ricci_flat(De, spec);
    CHECK(mr.flat);
    CHECK(mr.max_offdiagonal < 1e-9);
    RicciD r = ricci_D(De, spec);
    CHECK(diff(*e, r.ric[1][0], ScalarExpr(0)) < 1e-9);
  }
}

TEST_CASE("ambient sectional curvature of the warped sphere") {
  Bindings b = warp_bindings("2*t+1");
  auto M = warped_sphere(b["f"]);
  CHECK(diff(*M, ambient_sectional(*M, 0, 1), E("0-fpp/f", b)) < 1e-9);
}
