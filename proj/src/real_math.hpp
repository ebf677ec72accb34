#pragma once

#include <cmath>
#include <optional>

#include "distgeo/scalar_expr.hpp"

namespace distgeo::detail {

// x^(p/q) over the reals: odd q extends to negative x by sign, even q does not.
inline std::optional<double> real_pow(double x, const Rational& r) {
  if (r.den == 1) {
    if (x == 0.0 && r.num < 0) return std::nullopt;
    return std::pow(x, static_cast<double>(r.num));
  }
  double e = r.value();
  if (x > 0.0) return std::pow(x, e);
  if (x == 0.0) return r.num > 0 ? std::optional<double>(0.0) : std::nullopt;
  if (r.den % 2 == 0) return std::nullopt;
  double mag = std::pow(-x, e);
  return (r.num % 2 != 0) ? -mag : mag;
}

}  // namespace distgeo::detail
