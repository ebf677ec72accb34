#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "distgeo/errors.hpp"
#include "support.hpp"

using namespace testing;
using K = ScalarExpr::Kind;

namespace {

double fd1(const ScalarExpr& e, double t, double h) { return (eval(e, t + h) - eval(e, t - h)) / (2 * h); }

// Richardson-extrapolated central difference.
double richardson(const ScalarExpr& e, double t) {
  const double h = 1e-4;
  return (4 * fd1(e, t, h / 2) - fd1(e, t, h)) / 3;
}

std::vector<ScalarExpr> sample_exprs() {
  std::vector<ScalarExpr> out;
  for (const char* s : {"2*t+1", "exp(0.5*t)", "sin(t)*t^3", "sqrt(t+1)", "cos(2*t)/(t+3)", "(2*t+1)^(2/3)",
                        "exp(-t)*(1+t)", "t^(-2)+t", "sin(t)^2-cos(t)", "sqrt(exp(t)+t^2)"})
    out.push_back(E(s));
  return out;
}

}  // namespace

TEST_CASE("linear expression parses to the expected tree") {
  ScalarExpr e = E("2*t+1");
  CHECK(e.kind() == K::Add);
  CHECK(e.lhs().kind() == K::Mul);
  CHECK(e.lhs().lhs().constant_value() == 2.0);
  CHECK(e.lhs().rhs().kind() == K::Variable);
  CHECK(e.rhs().constant_value() == 1.0);
}

TEST_CASE("rendering then reparsing gives a structurally identical tree") {
  for (const char* s : {"2*t+1", "exp((1/2)^(1/2)*t)", "(2*t+1)^(2/3)", "-(t^2)", "0-t^2", "1/(t-3)*sin(t)",
                        "(-2)*t", "t^(-3/2)", "exp(-t)*(1+t)", "2-(3-t)", "t/(2/t)", "-t^2"}) {
    ScalarExpr a = E(s);
    CAPTURE(s);
    CAPTURE(render(a));
    CHECK(structurally_equal(a, E(render(a))));
  }
}

TEST_CASE("unary minus binds tighter than the exponent") {
  CHECK(eval(E("-t^2"), 3.0) == doctest::Approx(9.0));
  CHECK(eval(E("0-t^2"), 3.0) == doctest::Approx(-9.0));
  CHECK(eval(E("-(t^2)"), 3.0) == doctest::Approx(-9.0));
}

TEST_CASE("rational exponents stay exact") {
  ScalarExpr e = E("(2*t+1)^(2/3)");
  REQUIRE(e.kind() == K::Pow);
  CHECK(e.exponent() == Rational{2, 3});
  CHECK(eval(e, 3.5) == doctest::Approx(std::pow(8.0, 2.0 / 3.0)));
}

TEST_CASE("syntax errors carry a byte offset") {
  try {
    E("2**t");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
  }
  CHECK_THROWS_AS(E("2*t+"), ParseError);
  CHECK_THROWS_AS(E("(t"), ParseError);
  CHECK_THROWS_AS(E("1/"), ParseError);
  CHECK_THROWS_AS(E("t^(1/0)"), ParseError);
  try {
    E("2*x");
    FAIL("expected an unknown identifier");
  } catch (const UnknownIdentifier& e) {
    CHECK(e.name() == "x");
    CHECK(e.offset() == 2);
  }
}

TEST_CASE("bindings expand names") {
  Bindings b{{"f", E("2*t+1")}};
  CHECK(eval(E("f^2", b), 1.0) == doctest::Approx(9.0));
  CHECK_THROWS_AS(E("g", b), UnknownIdentifier);
}

TEST_CASE("symbolic derivatives") {
  CHECK(eval(derive(E("2*t+1")), 0.7) == 2.0);
  CHECK(render(derive(E("2*t+1"))) == "2");
  for (double t : {0.3, 1.0, 1.7}) CHECK(eval(derive(E("t^2")), t) == doctest::Approx(2 * t));
  ScalarExpr e = E("exp(0.5*t)");
  for (double t : {0.3, 1.0, 1.7}) {
    CHECK(eval(derive(e), t) == doctest::Approx(0.5 * std::exp(0.5 * t)).epsilon(1e-14));
    CHECK(std::fabs(eval(derive(e), t) - fd1(e, t, 1e-5)) < 1e-8);
  }
}

TEST_CASE("jets of simple expressions") {
  Jet a = eval_jet(E("t"), 2.0);
  CHECK(a.value == 2.0);
  CHECK(a.d1 == 1.0);
  CHECK(a.d2 == 0.0);
  CHECK(a.d3 == 0.0);
  Jet b = eval_jet(E("2*t+1"), 3.0);
  CHECK(b.value == 7.0);
  CHECK(b.d1 == 2.0);
  CHECK(b.d2 == 0.0);
  Jet c = eval_jet(E("5"), 1.0);
  CHECK(c.d1 == 0.0);
  CHECK(c.d2 == 0.0);
  CHECK(c.d3 == 0.0);
}

TEST_CASE("exponential pair solves f'' = (c0/2) f") {
  const double c0 = 2.0, w = std::sqrt(c0 / 2);
  Bindings b{{"w", ScalarExpr(w)}};
  ScalarExpr f = E("3*exp(w*t)+0.5*exp(0-w*t)", b);
  for (double t : SamplePlan::standard().points) {
    Jet j = eval_jet(f, t);
    CHECK(std::fabs(j.d2 - c0 / 2 * j.value) < 1e-10);
  }
}

TEST_CASE("jets agree with derive-then-evaluate") {
  for (const auto& e : sample_exprs()) {
    ScalarExpr d1 = derive(e), d2 = derive(d1), d3 = derive(d2);
    for (double t : {0.3, 1.1, 1.9}) {
      Jet j = eval_jet(e, t);
      CAPTURE(render(e));
      CHECK(j.d1 == doctest::Approx(eval(d1, t)).epsilon(1e-12));
      CHECK(j.d2 == doctest::Approx(eval(d2, t)).epsilon(1e-12));
      CHECK(j.d3 == doctest::Approx(eval(d3, t)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Leibniz rule through order three on random pairs") {
  const auto es = sample_exprs();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::size_t> pick(0, es.size() - 1);
  std::uniform_real_distribution<double> tt(0.2, 2.0);
  for (int k = 0; k < 200; ++k) {
    const ScalarExpr &u = es[pick(rng)], &v = es[pick(rng)];
    const double t = tt(rng);
    Jet a = eval_jet(u, t), b = eval_jet(v, t), p = eval_jet(u * v, t);
    auto close = [](double x, double y) { return std::fabs(x - y) <= 1e-12 * std::max({1.0, std::fabs(x), std::fabs(y)}); };
    CHECK(close(p.value, a.value * b.value));
    CHECK(close(p.d1, a.d1 * b.value + a.value * b.d1));
    CHECK(close(p.d2, a.d2 * b.value + 2 * a.d1 * b.d1 + a.value * b.d2));
    CHECK(close(p.d3, a.d3 * b.value + 3 * a.d2 * b.d1 + 3 * a.d1 * b.d2 + a.value * b.d3));
  }
}

TEST_CASE("chain rule of exp against extrapolated differences") {
  for (const auto& u : sample_exprs()) {
    ScalarExpr e = exp(u);
    for (double t : {0.4, 1.3}) CHECK(std::fabs(eval_jet(e, t).d1 - richardson(e, t)) < 1e-8 * std::max(1.0, std::fabs(eval(e, t))));
  }
}

TEST_CASE("second symbolic derivative matches the second jet channel") {
  for (const auto& e : sample_exprs())
    for (double t : SamplePlan::standard().points) CHECK(std::fabs(eval(derive(derive(e)), t) - eval_jet(e, t).d2) < 1e-10 * std::max(1.0, std::fabs(eval_jet(e, t).d2)));
}

TEST_CASE("undefined subexpressions raise domain errors with t") {
  try {
    eval(E("sqrt(t-1)"), 0.5);
    FAIL("expected a domain error");
  } catch (const DomainError& e) {
    CHECK(e.t() == 0.5);
    CHECK(e.subexpression().find("sqrt") != std::string::npos);
  }
  CHECK_THROWS_AS(eval(E("1/(t-1)"), 1.0), DomainError);
  CHECK_THROWS_AS(eval(E("t^(-1)"), 0.0), DomainError);
}

TEST_CASE("approximate zero tests") {
  const SamplePlan plan = SamplePlan::standard();
  CHECK(approx_zero(E("t-t"), plan));
  CHECK(approx_zero(E("sin(t)^2+cos(t)^2-1"), plan));
  CHECK_FALSE(approx_zero(E("t*0.1-0.1*t+0.000001"), plan));
}

TEST_CASE("default sample plan") {
  const SamplePlan p = SamplePlan::standard();
  REQUIRE(p.points.size() == 17);
  CHECK(p.points.front() == doctest::Approx(0.1));
  CHECK(p.points[1] == doctest::Approx(0.225));
  CHECK(p.points.back() == doctest::Approx(2.1));
  CHECK(p.abs_tol == 1e-9);
  CHECK(p.rel_tol == 1e-9);
  SamplePlan bad = p;
  bad.points.push_back(p.points[3]);
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("evaluation is reproducible bit for bit") {
  ScalarExpr e = E("exp(sin(t))*sqrt(t+2)^(3/2)");
  for (double t : SamplePlan::standard().points) CHECK(eval(e, t) == eval(e, t));
}
