#include "distgeo/scalar_expr.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "distgeo/errors.hpp"
#include "real_math.hpp"

namespace distgeo {

std::optional<Rational> Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) return std::nullopt;
  if (num == INT64_MIN || den == INT64_MIN) return std::nullopt;
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational{num, den};
}

namespace {

bool mul_ok(std::int64_t a, std::int64_t b, std::int64_t& out) { return !__builtin_mul_overflow(a, b, &out); }
bool add_ok(std::int64_t a, std::int64_t b, std::int64_t& out) { return !__builtin_add_overflow(a, b, &out); }

}  // namespace

std::optional<Rational> add(const Rational& a, const Rational& b) {
  std::int64_t x, y, n, d;
  if (!mul_ok(a.num, b.den, x) || !mul_ok(b.num, a.den, y) || !add_ok(x, y, n) || !mul_ok(a.den, b.den, d))
    return std::nullopt;
  return Rational::make(n, d);
}

std::optional<Rational> sub(const Rational& a, const Rational& b) {
  if (b.num == INT64_MIN) return std::nullopt;
  return add(a, Rational{-b.num, b.den});
}

std::optional<Rational> mul(const Rational& a, const Rational& b) {
  std::int64_t n, d;
  if (!mul_ok(a.num, b.num, n) || !mul_ok(a.den, b.den, d)) return std::nullopt;
  return Rational::make(n, d);
}

std::optional<Rational> div(const Rational& a, const Rational& b) {
  if (b.num == 0) return std::nullopt;
  std::int64_t n, d;
  if (!mul_ok(a.num, b.den, n) || !mul_ok(a.den, b.num, d)) return std::nullopt;
  return Rational::make(n, d);
}

struct ScalarExpr::Node {
  Kind kind = Kind::Constant;
  double value = 0.0;
  std::optional<Rational> exact;
  Rational exponent;
  // Leaf operands stay null; building them through the default constructor
  // would recurse into the shared zero node.
  ScalarExpr a = ScalarExpr(std::shared_ptr<const Node>());
  ScalarExpr b = ScalarExpr(std::shared_ptr<const Node>());
};

namespace {

std::shared_ptr<const ScalarExpr::Node> make_const_node(double v, std::optional<Rational> exact) {
  auto n = std::make_shared<ScalarExpr::Node>();
  n->kind = ScalarExpr::Kind::Constant;
  n->value = v;
  n->exact = exact;
  return n;
}

std::shared_ptr<const ScalarExpr::Node>& zero_node() {
  static std::shared_ptr<const ScalarExpr::Node> z = make_const_node(0.0, Rational{0, 1});
  return z;
}

}  // namespace

ScalarExpr::ScalarExpr() : node_(zero_node()) {}

ScalarExpr::ScalarExpr(double v) {
  std::optional<Rational> exact;
  if (std::isfinite(v) && v == std::trunc(v) && std::fabs(v) < 9.0e15) exact = Rational{static_cast<std::int64_t>(v), 1};
  node_ = make_const_node(v, exact);
}

ScalarExpr::ScalarExpr(int v) : node_(make_const_node(v, Rational{v, 1})) {}

ScalarExpr::ScalarExpr(const Rational& r) : node_(make_const_node(r.value(), r)) {}

ScalarExpr ScalarExpr::t() {
  static const std::shared_ptr<const Node> var = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Variable;
    return std::shared_ptr<const Node>(n);
  }();
  return ScalarExpr(var);
}

ScalarExpr ScalarExpr::raw_binary(Kind k, const ScalarExpr& a, const ScalarExpr& b) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = a;
  n->b = b;
  return ScalarExpr(std::shared_ptr<const Node>(n));
}

ScalarExpr ScalarExpr::raw_unary(Kind k, const ScalarExpr& a) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = a;
  return ScalarExpr(std::shared_ptr<const Node>(n));
}

ScalarExpr ScalarExpr::raw_pow(const ScalarExpr& a, const Rational& e) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Pow;
  n->a = a;
  n->exponent = e;
  return ScalarExpr(std::shared_ptr<const Node>(n));
}

ScalarExpr ScalarExpr::raw_constant(double v, std::optional<Rational> exact) {
  return ScalarExpr(make_const_node(v, exact));
}

ScalarExpr::Kind ScalarExpr::kind() const { return node_->kind; }
bool ScalarExpr::is_zero() const { return node_->kind == Kind::Constant && node_->value == 0.0; }
bool ScalarExpr::is_one() const { return node_->kind == Kind::Constant && node_->value == 1.0; }
double ScalarExpr::constant_value() const { return node_->value; }
std::optional<Rational> ScalarExpr::exact() const { return node_->exact; }
Rational ScalarExpr::exponent() const { return node_->exponent; }
const ScalarExpr& ScalarExpr::lhs() const { return node_->a; }
const ScalarExpr& ScalarExpr::rhs() const { return node_->b; }

ScalarExpr rational(std::int64_t num, std::int64_t den) {
  auto r = Rational::make(num, den);
  if (!r) throw InvalidArgument("invalid rational constant");
  return ScalarExpr(*r);
}

namespace {

using K = ScalarExpr::Kind;

ScalarExpr fold(const ScalarExpr& a, const ScalarExpr& b, double v,
                std::optional<Rational> (*op)(const Rational&, const Rational&)) {
  std::optional<Rational> exact;
  if (a.exact() && b.exact()) exact = op(*a.exact(), *b.exact());
  if (exact) return ScalarExpr(*exact);
  return ScalarExpr::raw_constant(v, std::nullopt);
}

ScalarExpr negate_const(const ScalarExpr& a) {
  if (auto r = a.exact(); r && r->num != INT64_MIN) return ScalarExpr(Rational{-r->num, r->den});
  return ScalarExpr::raw_constant(-a.constant_value(), std::nullopt);
}

}  // namespace

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_constant() && b.is_constant()) return fold(a, b, a.constant_value() + b.constant_value(), add);
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return ScalarExpr::raw_binary(K::Add, a, b);
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_constant() && b.is_constant()) return fold(a, b, a.constant_value() - b.constant_value(), sub);
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  if (a.id() == b.id()) return ScalarExpr();
  return ScalarExpr::raw_binary(K::Sub, a, b);
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_constant() && b.is_constant()) return fold(a, b, a.constant_value() * b.constant_value(), mul);
  if (a.is_zero() || b.is_zero()) return ScalarExpr();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  if (b.is_constant()) return b * a;
  if (a.is_constant()) {
    if (a.constant_value() == -1.0) return -b;
    if (b.kind() == K::Mul && b.lhs().is_constant()) return (a * b.lhs()) * b.rhs();
    if (b.kind() == K::Neg) return negate_const(a) * b.lhs();
  }
  return ScalarExpr::raw_binary(K::Mul, a, b);
}

ScalarExpr operator/(const ScalarExpr& a, const ScalarExpr& b) {
  if (b.is_constant() && b.constant_value() != 0.0) {
    if (a.is_constant()) return fold(a, b, a.constant_value() / b.constant_value(), div);
    if (b.is_one()) return a;
    if (auto r = b.exact()) return ScalarExpr(*div(Rational{1, 1}, *r)) * a;
  }
  if (a.is_zero() && !b.is_zero()) return ScalarExpr();
  return ScalarExpr::raw_binary(K::Div, a, b);
}

ScalarExpr operator-(const ScalarExpr& a) {
  if (a.is_constant()) return negate_const(a);
  if (a.kind() == K::Neg) return a.lhs();
  if (a.kind() == K::Mul && a.lhs().is_constant()) return negate_const(a.lhs()) * a.rhs();
  return ScalarExpr::raw_unary(K::Neg, a);
}

ScalarExpr& operator+=(ScalarExpr& a, const ScalarExpr& b) { return a = a + b; }
ScalarExpr& operator-=(ScalarExpr& a, const ScalarExpr& b) { return a = a - b; }

ScalarExpr pow(const ScalarExpr& a, const Rational& e) {
  if (e.num == 0) return ScalarExpr(1);
  if (e == Rational{1, 1}) return a;
  if (a.is_constant()) {
    double x = a.constant_value();
    if (auto r = a.exact(); r && e.is_integer() && std::llabs(e.num) <= 62 && !(r->num == 0 && e.num < 0)) {
      std::optional<Rational> acc = Rational{1, 1};
      Rational base = e.num > 0 ? *r : *div(Rational{1, 1}, *r);
      for (std::int64_t i = 0; i < std::llabs(e.num) && acc; ++i) acc = mul(*acc, base);
      if (acc) return ScalarExpr(*acc);
    }
    if (auto v = detail::real_pow(x, e)) return ScalarExpr::raw_constant(*v, std::nullopt);
  }
  if (a.kind() == K::Pow && a.exponent().is_integer() && e.is_integer()) {
    if (auto prod = mul(a.exponent(), e)) return pow(a.lhs(), *prod);
  }
  return ScalarExpr::raw_pow(a, e);
}

ScalarExpr pow(const ScalarExpr& a, std::int64_t n) { return pow(a, Rational{n, 1}); }

ScalarExpr exp(const ScalarExpr& a) {
  if (a.is_zero()) return ScalarExpr(1);
  if (a.is_constant()) return ScalarExpr::raw_constant(std::exp(a.constant_value()), std::nullopt);
  return ScalarExpr::raw_unary(K::Exp, a);
}

ScalarExpr sin(const ScalarExpr& a) {
  if (a.is_zero()) return ScalarExpr();
  if (a.is_constant()) return ScalarExpr::raw_constant(std::sin(a.constant_value()), std::nullopt);
  return ScalarExpr::raw_unary(K::Sin, a);
}

ScalarExpr cos(const ScalarExpr& a) {
  if (a.is_zero()) return ScalarExpr(1);
  if (a.is_constant()) return ScalarExpr::raw_constant(std::cos(a.constant_value()), std::nullopt);
  return ScalarExpr::raw_unary(K::Cos, a);
}

ScalarExpr sqrt(const ScalarExpr& a) {
  if (a.is_constant() && a.constant_value() >= 0.0) {
    if (auto r = a.exact()) {
      auto isqrt = [](std::int64_t v) -> std::optional<std::int64_t> {
        auto s = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(v))));
        for (std::int64_t c = std::max<std::int64_t>(0, s - 1); c <= s + 1; ++c)
          if (c * c == v) return c;
        return std::nullopt;
      };
      auto n = isqrt(r->num);
      auto d = isqrt(r->den);
      if (n && d) return ScalarExpr(Rational{*n, *d});
    }
    return ScalarExpr::raw_constant(std::sqrt(a.constant_value()), std::nullopt);
  }
  return ScalarExpr::raw_unary(K::Sqrt, a);
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Number {
  double value;
  std::optional<Rational> exact;
};

std::optional<Rational> decimal_to_rational(std::string_view digits_int, std::string_view digits_frac, int exp10) {
  std::string digits(digits_int);
  digits += digits_frac;
  std::int64_t scale = -static_cast<std::int64_t>(digits_frac.size()) + exp10;
  std::size_t first = digits.find_first_not_of('0');
  if (first == std::string::npos) return Rational{0, 1};
  digits = digits.substr(first);
  if (digits.size() > 18) return std::nullopt;
  std::int64_t mant = std::stoll(digits);
  std::int64_t pow10 = 1;
  for (std::int64_t i = 0; i < std::llabs(scale); ++i)
    if (!mul_ok(pow10, 10, pow10)) return std::nullopt;
  return scale >= 0 ? [&]() -> std::optional<Rational> {
    std::int64_t n;
    if (!mul_ok(mant, pow10, n)) return std::nullopt;
    return Rational{n, 1};
  }()
                    : Rational::make(mant, pow10);
}

class Parser {
 public:
  Parser(std::string_view text, const Bindings& bindings) : s_(text), bindings_(bindings) {}

  ScalarExpr parse() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("empty expression", pos_);
    ScalarExpr e = expr();
    skip();
    if (pos_ < s_.size()) {
      if (s_[pos_] == ')') throw ParseError("unbalanced ')'", pos_);
      throw ParseError(std::string("unexpected '") + s_[pos_] + "'", pos_);
    }
    return e;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\n' || s_[pos_] == '\r')) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  void expect(char c) {
    if (!peek(c)) {
      if (pos_ >= s_.size()) throw ParseError(std::string("expected '") + c + "' before end of input", pos_);
      throw ParseError(std::string("expected '") + c + "'", pos_);
    }
    ++pos_;
  }

  ScalarExpr expr() {
    ScalarExpr e = term();
    while (true) {
      if (peek('+')) {
        ++pos_;
        e = ScalarExpr::raw_binary(K::Add, e, term());
      } else if (peek('-')) {
        ++pos_;
        e = ScalarExpr::raw_binary(K::Sub, e, term());
      } else {
        return e;
      }
    }
  }

  ScalarExpr term() {
    ScalarExpr e = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        e = ScalarExpr::raw_binary(K::Mul, e, factor());
      } else if (peek('/')) {
        std::size_t at = pos_++;
        skip();
        if (pos_ >= s_.size() || s_[pos_] == ')' || s_[pos_] == '+' || s_[pos_] == '*' || s_[pos_] == '/')
          throw ParseError("empty denominator after '/'", at);
        e = ScalarExpr::raw_binary(K::Div, e, factor());
      } else {
        return e;
      }
    }
  }

  ScalarExpr factor() {
    ScalarExpr b = base();
    if (peek('^')) {
      ++pos_;
      return ScalarExpr::raw_pow(b, exponent());
    }
    return b;
  }

  Rational exponent() {
    skip();
    std::size_t at = pos_;
    if (peek('(')) {
      ++pos_;
      Rational num = exponent_number(true);
      Rational den{1, 1};
      if (peek('/')) {
        ++pos_;
        den = exponent_number(true);
      }
      expect(')');
      auto r = div(num, den);
      if (!r) throw ParseError("invalid exponent", at);
      return *r;
    }
    return exponent_number(false);
  }

  Rational exponent_number(bool allow_sign) {
    skip();
    std::size_t at = pos_;
    bool neg = false;
    if (allow_sign && peek('-')) {
      neg = true;
      ++pos_;
    }
    skip();
    if (pos_ >= s_.size() || !(std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.'))
      throw ParseError("expected exponent", pos_);
    Number n = number();
    if (!n.exact) throw ParseError("exponent must be an exact decimal", at);
    Rational r = *n.exact;
    if (neg) r.num = -r.num;
    return r;
  }

  Number number() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t b = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return s_.substr(b, pos_ - b);
    };
    std::string_view ip = digits();
    std::string_view fp;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      fp = digits();
    }
    if (ip.empty() && fp.empty()) throw ParseError("malformed number", start);
    int e10 = 0;
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      std::size_t save = pos_++;
      bool neg = false;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) neg = s_[pos_++] == '-';
      std::string_view ed = digits();
      if (ed.empty()) {
        pos_ = save;
        throw ParseError("malformed exponent in number", save);
      }
      if (ed.size() > 4) throw ParseError("number exponent out of range", save);
      e10 = std::stoi(std::string(ed)) * (neg ? -1 : 1);
    }
    std::string_view text = s_.substr(start, pos_ - start);
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc()) throw ParseError("number out of range", start);
    return Number{v, decimal_to_rational(ip, fp, e10)};
  }

  ScalarExpr base() {
    skip();
    if (pos_ >= s_.size()) throw ParseError("expected operand before end of input", pos_);
    char c = s_[pos_];
    if (c == '-') {
      ++pos_;
      skip();
      if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
        Number n = number();
        std::optional<Rational> ex;
        if (n.exact) ex = Rational{-n.exact->num, n.exact->den};
        return ScalarExpr::raw_constant(-n.value, ex);
      }
      return ScalarExpr::raw_unary(K::Neg, base());
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      Number n = number();
      return ScalarExpr::raw_constant(n.value, n.exact);
    }
    if (c == '(') {
      ++pos_;
      ScalarExpr e = expr();
      expect(')');
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string_view name = s_.substr(start, pos_ - start);
      static const std::pair<std::string_view, K> funcs[] = {
          {"exp", K::Exp}, {"sin", K::Sin}, {"cos", K::Cos}, {"sqrt", K::Sqrt}};
      for (const auto& [fname, kind] : funcs) {
        if (name == fname) {
          if (!peek('(')) throw ParseError("expected '(' after " + std::string(name), pos_);
          ++pos_;
          ScalarExpr arg = expr();
          expect(')');
          return ScalarExpr::raw_unary(kind, arg);
        }
      }
      if (name == "t") return ScalarExpr::t();
      if (auto it = bindings_.find(name); it != bindings_.end()) return it->second;
      throw UnknownIdentifier(std::string(name), start);
    }
    throw ParseError(std::string("unexpected '") + c + "'", pos_);
  }

  std::string_view s_;
  const Bindings& bindings_;
  std::size_t pos_ = 0;
};

}  // namespace

ScalarExpr parse_expr(std::string_view text, const Bindings& bindings) { return Parser(text, bindings).parse(); }

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// Exact decimal text for p/q when q = 2^a 5^b, else nullopt.
std::optional<std::string> decimal_text(const Rational& r) {
  std::int64_t d = r.den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) d /= 2, ++twos;
  while (d % 5 == 0) d /= 5, ++fives;
  if (d != 1) return std::nullopt;
  int k = std::max(twos, fives);
  std::int64_t scale = 1;
  for (int i = 0; i < k; ++i)
    if (!mul_ok(scale, 10, scale)) return std::nullopt;
  std::int64_t n;
  if (!mul_ok(std::llabs(r.num), scale / r.den, n)) return std::nullopt;
  std::string digits = std::to_string(n);
  if (k > 0) {
    if (static_cast<int>(digits.size()) <= k) digits.insert(0, static_cast<std::size_t>(k - digits.size() + 1), '0');
    digits.insert(digits.size() - static_cast<std::size_t>(k), ".");
  }
  return (r.num < 0 ? "-" : "") + digits;
}

std::string constant_text(const ScalarExpr& e) {
  if (auto r = e.exact()) {
    if (auto d = decimal_text(*r)) return *d;
    return "(" + std::to_string(r->num) + "/" + std::to_string(r->den) + ")";
  }
  return shortest(e.constant_value());
}

std::string exponent_text(const Rational& r) {
  if (r.den == 1 && r.num >= 0) return std::to_string(r.num);
  if (r.den == 1) return "(" + std::to_string(r.num) + ")";
  return "(" + std::to_string(r.num) + "/" + std::to_string(r.den) + ")";
}

// 1: sum, 2: product, 3: factor (power), 4: base.
int level(const ScalarExpr& e) {
  switch (e.kind()) {
    case K::Add:
    case K::Sub:
      return 1;
    case K::Mul:
    case K::Div:
      return 2;
    case K::Pow:
      return 3;
    default:
      return 4;
  }
}

void render_into(const ScalarExpr& e, std::string& out);

void render_wrapped(const ScalarExpr& e, int need, std::string& out) {
  // Negative constants and non-trivial rationals always get parentheses so that
  // operator placement never changes their parse.
  bool paren = level(e) < need;
  if (!paren && e.is_constant() && need > 1) {
    std::string txt = constant_text(e);
    paren = !txt.empty() && txt[0] == '-';
  }
  if (paren) out += '(';
  render_into(e, out);
  if (paren) out += ')';
}

void render_into(const ScalarExpr& e, std::string& out) {
  switch (e.kind()) {
    case K::Constant:
      out += constant_text(e);
      return;
    case K::Variable:
      out += 't';
      return;
    case K::Add:
    case K::Sub:
      render_wrapped(e.lhs(), 1, out);
      out += e.kind() == K::Add ? '+' : '-';
      render_wrapped(e.rhs(), 2, out);
      return;
    case K::Mul:
    case K::Div:
      render_wrapped(e.lhs(), 2, out);
      out += e.kind() == K::Mul ? '*' : '/';
      render_wrapped(e.rhs(), 3, out);
      return;
    case K::Pow: {
      const ScalarExpr& b = e.lhs();
      bool paren = level(b) < 4 || b.kind() == K::Neg || (b.is_constant() && constant_text(b).find_first_of("-/") != std::string::npos);
      if (paren) out += '(';
      render_into(b, out);
      if (paren) out += ')';
      out += '^';
      out += exponent_text(e.exponent());
      return;
    }
    case K::Neg: {
      out += '-';
      const ScalarExpr& a = e.lhs();
      // A bare number after '-' would fold into a negative literal on reparse.
      bool paren = level(a) < 4 || a.is_constant() || a.kind() == K::Neg;
      if (paren) out += '(';
      render_into(a, out);
      if (paren) out += ')';
      return;
    }
    case K::Exp:
    case K::Sin:
    case K::Cos:
    case K::Sqrt: {
      static const char* names[] = {"exp", "sin", "cos", "sqrt"};
      out += names[static_cast<int>(e.kind()) - static_cast<int>(K::Exp)];
      out += '(';
      render_into(e.lhs(), out);
      out += ')';
      return;
    }
  }
}

}  // namespace

std::string render(const ScalarExpr& e) {
  std::string out;
  render_into(e, out);
  return out;
}

bool structurally_equal(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.id() == b.id()) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case K::Constant:
      return a.constant_value() == b.constant_value();
    case K::Variable:
      return true;
    case K::Pow:
      return a.exponent() == b.exponent() && structurally_equal(a.lhs(), b.lhs());
    case K::Add:
    case K::Sub:
    case K::Mul:
    case K::Div:
      return structurally_equal(a.lhs(), b.lhs()) && structurally_equal(a.rhs(), b.rhs());
    default:
      return structurally_equal(a.lhs(), b.lhs());
  }
}

// ---------------------------------------------------------------------------
// Symbolic derivative

ScalarExpr Differentiator::operator()(const ScalarExpr& e) {
  if (e.is_constant()) return ScalarExpr();
  if (auto it = memo_.find(e.id()); it != memo_.end()) return it->second.first;
  ScalarExpr d = compute(e);
  memo_.emplace(e.id(), std::make_pair(d, e));
  return d;
}

ScalarExpr Differentiator::compute(const ScalarExpr& e) {
  switch (e.kind()) {
    case K::Constant:
      return ScalarExpr();
    case K::Variable:
      return ScalarExpr(1);
    case K::Add:
      return (*this)(e.lhs()) + (*this)(e.rhs());
    case K::Sub:
      return (*this)(e.lhs()) - (*this)(e.rhs());
    case K::Neg:
      return -(*this)(e.lhs());
    case K::Mul:
      return (*this)(e.lhs()) * e.rhs() + e.lhs() * (*this)(e.rhs());
    case K::Div: {
      ScalarExpr da = (*this)(e.lhs());
      ScalarExpr db = (*this)(e.rhs());
      if (db.is_zero()) return da / e.rhs();
      if (da.is_zero()) return -(e.lhs() * db / pow(e.rhs(), 2));
      return (da * e.rhs() - e.lhs() * db) / pow(e.rhs(), 2);
    }
    case K::Pow: {
      Rational r = e.exponent();
      auto r1 = sub(r, Rational{1, 1});
      return ScalarExpr(r) * pow(e.lhs(), *r1) * (*this)(e.lhs());
    }
    case K::Exp:
      return (*this)(e.lhs()) * e;
    case K::Sin:
      return (*this)(e.lhs()) * cos(e.lhs());
    case K::Cos:
      return -((*this)(e.lhs()) * sin(e.lhs()));
    case K::Sqrt:
      return (*this)(e.lhs()) / (ScalarExpr(2) * e);
  }
  return ScalarExpr();
}

ScalarExpr derive(const ScalarExpr& e) { return Differentiator()(e); }

std::size_t node_count(const ScalarExpr& e) {
  std::unordered_map<const void*, bool> seen;
  std::vector<ScalarExpr> stack{e};
  while (!stack.empty()) {
    ScalarExpr x = stack.back();
    stack.pop_back();
    if (!seen.emplace(x.id(), true).second) continue;
    switch (x.kind()) {
      case K::Constant:
      case K::Variable:
        break;
      case K::Add:
      case K::Sub:
      case K::Mul:
      case K::Div:
        stack.push_back(x.lhs());
        stack.push_back(x.rhs());
        break;
      default:
        stack.push_back(x.lhs());
    }
  }
  return seen.size();
}

}  // namespace distgeo
