#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace distgeo {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  // Reduced form with positive denominator; nullopt on zero denominator or overflow.
  static std::optional<Rational> make(std::int64_t num, std::int64_t den);
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  bool is_integer() const { return den == 1; }
  friend bool operator==(const Rational&, const Rational&) = default;
};

std::optional<Rational> add(const Rational& a, const Rational& b);
std::optional<Rational> sub(const Rational& a, const Rational& b);
std::optional<Rational> mul(const Rational& a, const Rational& b);
std::optional<Rational> div(const Rational& a, const Rational& b);

// Immutable expression tree in the single variable t. Copies share nodes.
class ScalarExpr {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, Add, Sub, Mul, Div, Pow, Neg, Exp, Sin, Cos, Sqrt };

  ScalarExpr();  // the constant 0
  ScalarExpr(double v);  // NOLINT: constants convert implicitly
  ScalarExpr(int v);     // NOLINT
  explicit ScalarExpr(const Rational& r);

  static ScalarExpr t();
  // Raw constructors: no folding. The parser uses these so its trees mirror the text.
  static ScalarExpr raw_binary(Kind k, const ScalarExpr& a, const ScalarExpr& b);
  static ScalarExpr raw_unary(Kind k, const ScalarExpr& a);
  static ScalarExpr raw_pow(const ScalarExpr& a, const Rational& e);
  static ScalarExpr raw_constant(double v, std::optional<Rational> exact);

  Kind kind() const;
  bool is_constant() const { return kind() == Kind::Constant; }
  bool is_zero() const;
  bool is_one() const;
  double constant_value() const;
  std::optional<Rational> exact() const;
  Rational exponent() const;
  const ScalarExpr& lhs() const;
  const ScalarExpr& rhs() const;
  const void* id() const { return node_.get(); }

  struct Node;  // opaque

 private:
  explicit ScalarExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Folding builders: constant folding plus 0/1 identities.
ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b);
ScalarExpr operator-(const ScalarExpr& a);
ScalarExpr& operator+=(ScalarExpr& a, const ScalarExpr& b);
ScalarExpr& operator-=(ScalarExpr& a, const ScalarExpr& b);
ScalarExpr pow(const ScalarExpr& a, const Rational& e);
ScalarExpr pow(const ScalarExpr& a, std::int64_t n);
ScalarExpr exp(const ScalarExpr& a);
ScalarExpr sin(const ScalarExpr& a);
ScalarExpr cos(const ScalarExpr& a);
ScalarExpr sqrt(const ScalarExpr& a);
ScalarExpr rational(std::int64_t num, std::int64_t den);

using Bindings = std::map<std::string, ScalarExpr, std::less<>>;

// Grammar: expr/term/factor/base with ^ exponents NUMBER or (NUMBER/NUMBER).
// Names in `bindings` expand to the bound expression.
ScalarExpr parse_expr(std::string_view text, const Bindings& bindings = {});

std::string render(const ScalarExpr& e);
bool structurally_equal(const ScalarExpr& a, const ScalarExpr& b);
ScalarExpr derive(const ScalarExpr& e);

// derive() with a memo that survives across calls, so repeated derivatives of
// shared subtrees return the same nodes.
class Differentiator {
 public:
  ScalarExpr operator()(const ScalarExpr& e);

 private:
  ScalarExpr compute(const ScalarExpr& e);
  std::unordered_map<const void*, std::pair<ScalarExpr, ScalarExpr>> memo_;
};

std::size_t node_count(const ScalarExpr& e);

}  // namespace distgeo
