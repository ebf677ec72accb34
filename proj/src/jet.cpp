#include "distgeo/jet.hpp"

#include <cmath>
#include <sstream>

#include "distgeo/errors.hpp"
#include "real_math.hpp"

namespace distgeo {

namespace {

std::string domain_message(double t, const std::string& sub, const std::string& reason) {
  std::ostringstream os;
  os.precision(17);
  os << reason << " in '" << sub << "' at t=" << t;
  return os.str();
}

}  // namespace

DomainError::DomainError(double t, std::string subexpression, const std::string& reason)
    : Error(domain_message(t, subexpression, reason)), t_(t), sub_(std::move(subexpression)) {}

Jet operator+(const Jet& a, const Jet& b) { return {a.value + b.value, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3}; }
Jet operator-(const Jet& a, const Jet& b) { return {a.value - b.value, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3}; }
Jet operator-(const Jet& a) { return {-a.value, -a.d1, -a.d2, -a.d3}; }

Jet operator*(const Jet& a, const Jet& b) {
  return {a.value * b.value, a.d1 * b.value + a.value * b.d1, a.d2 * b.value + 2.0 * a.d1 * b.d1 + a.value * b.d2,
          a.d3 * b.value + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.value * b.d3};
}

// q = a/b solved order by order from a = q*b.
Jet operator/(const Jet& a, const Jet& b) {
  Jet q;
  q.value = a.value / b.value;
  q.d1 = (a.d1 - q.value * b.d1) / b.value;
  q.d2 = (a.d2 - 2.0 * q.d1 * b.d1 - q.value * b.d2) / b.value;
  q.d3 = (a.d3 - 3.0 * q.d2 * b.d1 - 3.0 * q.d1 * b.d2 - q.value * b.d3) / b.value;
  return q;
}

Jet compose(const Jet& u, double g0, double g1, double g2, double g3) {
  return {g0, g1 * u.d1, g2 * u.d1 * u.d1 + g1 * u.d2, g3 * u.d1 * u.d1 * u.d1 + 3.0 * g2 * u.d1 * u.d2 + g1 * u.d3};
}

Jet PointEvaluator::jet(const ScalarExpr& e) {
  if (e.kind() == ScalarExpr::Kind::Constant) return Jet::constant(e.constant_value());
  if (e.kind() == ScalarExpr::Kind::Variable) return Jet::variable(t_);
  if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second.first;
  Jet j = compute(e);
  memo_.emplace(e.id(), std::make_pair(j, e));
  return j;
}

Jet PointEvaluator::compute(const ScalarExpr& e) {
  using K = ScalarExpr::Kind;
  auto fail = [&](const char* reason) -> Jet { throw DomainError(t_, render(e), reason); };
  switch (e.kind()) {
    case K::Add:
      return jet(e.lhs()) + jet(e.rhs());
    case K::Sub:
      return jet(e.lhs()) - jet(e.rhs());
    case K::Mul:
      return jet(e.lhs()) * jet(e.rhs());
    case K::Div: {
      Jet b = jet(e.rhs());
      if (b.value == 0.0) return fail("division by zero");
      return jet(e.lhs()) / b;
    }
    case K::Neg:
      return -jet(e.lhs());
    case K::Exp: {
      Jet u = jet(e.lhs());
      double v = std::exp(u.value);
      return compose(u, v, v, v, v);
    }
    case K::Sin: {
      Jet u = jet(e.lhs());
      double s = std::sin(u.value), c = std::cos(u.value);
      return compose(u, s, c, -s, -c);
    }
    case K::Cos: {
      Jet u = jet(e.lhs());
      double s = std::sin(u.value), c = std::cos(u.value);
      return compose(u, c, -s, -c, s);
    }
    case K::Sqrt: {
      Jet u = jet(e.lhs());
      if (!(u.value > 0.0)) return fail("sqrt of non-positive value");
      double r = std::sqrt(u.value);
      return compose(u, r, 0.5 / r, -0.25 / (r * u.value), 0.375 / (r * u.value * u.value));
    }
    case K::Pow: {
      Jet u = jet(e.lhs());
      Rational r = e.exponent();
      double g[4];
      double coef = 1.0;
      for (int k = 0; k < 4; ++k) {
        if (coef == 0.0) {
          g[k] = 0.0;
          continue;
        }
        auto rk = sub(r, Rational{k, 1});
        auto p = rk ? detail::real_pow(u.value, *rk) : std::nullopt;
        if (!p) {
          // 0^(positive fraction) has a value but no derivatives; only the value is required.
          if (k == 0) return fail("power undefined");
          if (u.d1 == 0.0 && u.d2 == 0.0 && u.d3 == 0.0) {
            g[k] = 0.0;
            continue;
          }
          return fail("power not differentiable");
        }
        g[k] = coef * *p;
        coef *= (r.value() - k);
      }
      return compose(u, g[0], g[1], g[2], g[3]);
    }
    default:
      return Jet{};
  }
}

Jet eval_jet(const ScalarExpr& e, double t) { return PointEvaluator(t).jet(e); }
double eval(const ScalarExpr& e, double t) { return PointEvaluator(t).value(e); }

}  // namespace distgeo
