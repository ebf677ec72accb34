#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>

#include "distgeo/curvature.hpp"
#include "distgeo/einstein.hpp"
#include "distgeo/errors.hpp"
#include "support.hpp"

using namespace testing;

namespace {

FamilyParams params(std::optional<double> k, double c1, double c2) {
  FamilyParams p;
  p.constant = k;
  p.c1 = c1;
  p.c2 = c2;
  return p;
}

}  // namespace

TEST_CASE("linear warp gives a Ricci-flat distribution") {
  auto M = warped_sphere(E("2*t+1"));
  Distribution D(M, {0, 1, 2});
  auto lc = ConnectionSpec::levi_civita();
  ScalarCheck e = is_einstein(D, lc, 0.0);
  CHECK(e.pass);
  CHECK(e.residual < 1e-9);
  CHECK(std::fabs(estimate_einstein_constant(D, lc)) < 1e-9);
  CHECK_FALSE(is_einstein(D, lc, 1.0).pass);
  auto N = warped_sphere(E("exp(t)"));
  CHECK_FALSE(is_einstein(Distribution(N, {0, 1, 2}), lc, 0.0).pass);
}

TEST_CASE("the dt Ricci entry is twice f''/f") {
  // Any f with f'' = (c0/2) f has Ric^D(dt, dt) = c0, whatever the coefficients.
  for (const char* f : {"3*exp(t)+0.5*exp(0-t)", "exp(t)", "0.2*exp(0-t)"}) {
    auto M = warped_sphere(E(f));
    RicciD r = ricci_D(Distribution(M, {0, 1, 2}), ConnectionSpec::levi_civita());
    CHECK(diff(*M, r.ric[0][0], ScalarExpr(2)) < 1e-9);
  }
}

TEST_CASE("Einstein families round trip") {
  for (const char* label : {"thm5.1/2", "thm5.1/3", "thm5.3/2"}) {
    for (const auto& fam : default_family_draws()) {
      if (fam.label != label) continue;
      CAPTURE(label);
      CAPTURE(fam.constant);
      FamilyCheck fc = verify_family(fam);
      CHECK(fc.ode_max < 1e-8);
      CHECK(fc.check.pass);
      CHECK(fc.check.residual < 1e-8);
      CHECK(fc.perturbed.residual > 1e-3);
      CHECK(fc.pass);
      Distribution D = family_distribution(fam, fam.f);
      CHECK(estimate_einstein_constant(D, family_connection(fam)) == doctest::Approx(fam.constant).epsilon(1e-8));
    }
  }
}

TEST_CASE("constant scalar curvature families for Levi-Civita") {
  int seen = 0;
  for (const auto& fam : default_family_draws()) {
    if (fam.theorem != "thm5.4") continue;
    ++seen;
    CAPTURE(fam.label);
    FamilyCheck fc = verify_family(fam);
    CHECK(fc.pass);
    CHECK(fc.check.residual < 1e-8);
    Distribution D = family_distribution(fam, fam.f);
    CHECK_FALSE(has_constant_scalar(D, family_connection(fam), fam.constant + 0.5).pass);
  }
  CHECK(seen >= 6);
}

TEST_CASE("additive perturbation stays inside the affine families") {
  // f = 2t + c1 and f = c1 are shifted within the family by f + 0.1.
  for (const auto& fam : default_family_draws()) {
    if (fam.label != "thm5.1/1" && fam.label != "thm5.3/1") continue;
    FamilyCheck fc = verify_family(fam);
    CHECK(fc.check.pass);
    CHECK(fc.perturbed.residual < 1e-9);
    CHECK_FALSE(fc.pass);
  }
}

TEST_CASE("semi-symmetric scalar curvature along U = dt is not constant for the closed forms") {
  // The scalar curvature computed with the omega(dt) X_i term does not match the family ODEs.
  for (const auto& fam : default_family_draws()) {
    if (fam.theorem != "thm5.5" && fam.theorem != "thm5.6") continue;
    CAPTURE(fam.label);
    FamilyCheck fc = verify_family(fam);
    CHECK(fc.ode_max < 1e-8);
    CHECK_FALSE(fc.check.pass);
    CHECK(fc.check.residual > 1e-3);
  }
}

TEST_CASE("every case has at least two draws") {
  std::map<std::string, int> count;
  for (const auto& fam : default_family_draws()) ++count[fam.label];
  CHECK(count.size() == 14);
  for (const auto& l : family_labels()) CHECK(count[l] >= 2);
}

TEST_CASE("ODE residuals of the closed forms") {
  for (const auto& fam : default_family_draws()) {
    CAPTURE(fam.label);
    auto odes = ode_residuals(fam);
    REQUIRE_FALSE(odes.empty());
    for (const auto& o : odes) CHECK(o.residual < 1e-8);
  }
}

TEST_CASE("family constraints") {
  CHECK_THROWS_AS(family("thm5.9/1", {}), InvalidArgument);
  CHECK_THROWS_AS(family("thm5.1/1", params(std::nullopt, 1, 3)), ConstraintViolated);
  CHECK_THROWS_AS(family("thm5.1/1", params(1.0, 1, 2)), ConstraintViolated);
  CHECK_THROWS_AS(family("thm5.1/2", params(-1.0, 0, 1)), ConstraintViolated);
  CHECK_THROWS_AS(family("thm5.1/3", params(-2.0, 1, 1)), ConstraintViolated);
  CHECK_THROWS_AS(family("thm5.3/2", params(1.0, 1, 1)), ConstraintViolated);
  CHECK_THROWS_AS(family("thm5.5/2", params(-1.0, 1, 1)), ConstraintViolated);
  CHECK_THROWS_AS(family("thm5.6/1", params(std::nullopt, 0, 0)), ConstraintViolated);
  CHECK_THROWS_AS(family("thm5.6/1", params(std::nullopt, -1, 0)), ConstraintViolated);
  CHECK_NOTHROW(family("thm5.4", 2, params(2.0, 1, 0)));
}

TEST_CASE("windows avoid zeros of f") {
  SolutionFamily f = family("thm5.1/3", params(-8.0, 0.6, 0.8));
  CHECK_FALSE(f.window_note.empty());
  for (double t : f.plan.points) CHECK(std::fabs(eval(f.f, t)) > 1e-3);
  CHECK(f.plan.points.front() == doctest::Approx(0.1));
  CHECK(f.plan.points.back() == doctest::Approx(1.2));
  CHECK(family("thm5.1/2", params(2.0, 0, -1)).window_note.empty());
}

TEST_CASE("labels and display") {
  CHECK(family_labels().size() == 14);
  CHECK(family_display("thm5.5/1") == "thm5.5/1 (λ₀ = −2/3)");
  CHECK(family_display("thm5.1/2") == "thm5.1/2 (c₀ > 0)");
  CHECK_THROWS_AS(family_display("thm5.2/1"), InvalidArgument);
  SolutionFamily f = family("thm5.6/2", params(2.0, 1, 1));
  CHECK(f.kind == ConnectionKind::SSNM);
  CHECK(f.constant_name == "lambda0");
  CHECK_FALSE(f.einstein);
  CHECK(family_connection(f).kind == ConnectionKind::SSNM);
}
