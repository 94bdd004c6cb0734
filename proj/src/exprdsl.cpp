#include "opvg/exprdsl.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <optional>

namespace opvg {

namespace {

Expr make(ExprNode node) { return std::make_shared<const ExprNode>(std::move(node)); }

bool is_lit(const Expr& e, double v) { return e->kind == ExprKind::real_lit && e->lit == v; }

}  // namespace

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::sin: return "sin";
    case Fn::cos: return "cos";
    case Fn::tan: return "tan";
    case Fn::exp: return "exp";
    case Fn::log: return "log";
    case Fn::sqrt: return "sqrt";
    case Fn::sinh: return "sinh";
    case Fn::cosh: return "cosh";
    case Fn::conj: return "conj";
  }
  return "?";
}

Expr lit(double v) {
  ExprNode n;
  n.kind = ExprKind::real_lit;
  n.lit = v;
  return make(std::move(n));
}

Expr coord(int index) {
  ExprNode n;
  n.kind = ExprKind::coord;
  n.coord_index = index;
  return make(std::move(n));
}

Expr aconst(std::string name) {
  ExprNode n;
  n.kind = ExprKind::aconst;
  n.name = std::move(name);
  return make(std::move(n));
}

Expr neg(const Expr& e) {
  if (e->kind == ExprKind::real_lit) return lit(-e->lit);
  if (e->kind == ExprKind::neg) return e->a;
  ExprNode n;
  n.kind = ExprKind::neg;
  n.a = e;
  return make(std::move(n));
}

Expr add(const Expr& a, const Expr& b) {
  if (a->kind == ExprKind::real_lit && b->kind == ExprKind::real_lit) {
    const double v = a->lit + b->lit;
    if (std::isfinite(v)) return lit(v);
  }
  if (is_lit(a, 0.0)) return b;
  if (is_lit(b, 0.0)) return a;
  ExprNode n;
  n.kind = ExprKind::add;
  n.a = a;
  n.b = b;
  return make(std::move(n));
}

Expr sub(const Expr& a, const Expr& b) {
  if (a->kind == ExprKind::real_lit && b->kind == ExprKind::real_lit) {
    const double v = a->lit - b->lit;
    if (std::isfinite(v)) return lit(v);
  }
  if (is_lit(b, 0.0)) return a;
  if (is_lit(a, 0.0)) return neg(b);
  ExprNode n;
  n.kind = ExprKind::sub;
  n.a = a;
  n.b = b;
  return make(std::move(n));
}

Expr mul(const Expr& a, const Expr& b) {
  if (a->kind == ExprKind::real_lit && b->kind == ExprKind::real_lit) {
    const double v = a->lit * b->lit;
    if (std::isfinite(v)) return lit(v);
  }
  if (is_lit(a, 0.0) || is_lit(b, 0.0)) return lit(0.0);
  if (is_lit(a, 1.0)) return b;
  if (is_lit(b, 1.0)) return a;
  ExprNode n;
  n.kind = ExprKind::mul;
  n.a = a;
  n.b = b;
  return make(std::move(n));
}

Expr div(const Expr& a, const Expr& b) {
  if (a->kind == ExprKind::real_lit && b->kind == ExprKind::real_lit && b->lit != 0.0) {
    const double v = a->lit / b->lit;
    if (std::isfinite(v)) return lit(v);
  }
  if (is_lit(b, 1.0)) return a;
  ExprNode n;
  n.kind = ExprKind::div;
  n.a = a;
  n.b = b;
  return make(std::move(n));
}

Expr int_pow(const Expr& base, int exponent) {
  if (exponent == 0) return lit(1.0);
  if (exponent == 1) return base;
  if (base->kind == ExprKind::real_lit && (exponent > 0 || base->lit != 0.0)) {
    const double v = std::pow(base->lit, exponent);
    if (std::isfinite(v)) return lit(v);
  }
  ExprNode n;
  n.kind = ExprKind::int_pow;
  n.a = base;
  n.exponent = exponent;
  return make(std::move(n));
}

Expr call(Fn f, const Expr& arg) {
  ExprNode n;
  n.kind = ExprKind::call;
  n.fn = f;
  n.a = arg;
  return make(std::move(n));
}

// ---------------------------------------------------------------------------
// Parser: recursive descent over
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := '-' unary | power
//   power := atom ('^' signed-integer)?
//   atom  := number | name | name '(' expr ')' | '(' expr ')'
// ---------------------------------------------------------------------------

namespace {

struct Lexer {
  std::string_view src;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\n' ||
                                src[pos] == '\r')) {
      ++pos;
    }
  }
  bool eof() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
};

std::optional<Fn> lookup_fn(std::string_view name) {
  static constexpr std::array<std::pair<std::string_view, Fn>, 9> table = {{
      {"sin", Fn::sin}, {"cos", Fn::cos}, {"tan", Fn::tan}, {"exp", Fn::exp}, {"log", Fn::log},
      {"sqrt", Fn::sqrt}, {"sinh", Fn::sinh}, {"cosh", Fn::cosh}, {"conj", Fn::conj},
  }};
  for (const auto& [k, v] : table) {
    if (k == name) return v;
  }
  return std::nullopt;
}

struct Parser {
  Lexer lex;
  const ParseNames& names;

  [[noreturn]] void error(const std::string& what, std::size_t at) {
    fail(Errc::syntax_error, what + " at offset " + std::to_string(at));
  }

  int find_coord(std::string_view name) const {
    for (std::size_t i = 0; i < names.coords.size(); ++i) {
      if (names.coords[i] == name) return static_cast<int>(i);
    }
    return -1;
  }
  bool is_constant(std::string_view name) const {
    for (const auto& c : names.constants) {
      if (c == name) return true;
    }
    return false;
  }

  void check_disjoint() {
    for (const auto& c : names.coords) {
      if (is_constant(c)) {
        fail(Errc::syntax_error, "name '" + c + "' is both a coordinate and a constant");
      }
      if (lookup_fn(c)) {
        fail(Errc::syntax_error, "name '" + c + "' shadows a builtin function");
      }
    }
    for (const auto& c : names.constants) {
      if (lookup_fn(c)) {
        fail(Errc::syntax_error, "name '" + c + "' shadows a builtin function");
      }
    }
  }

  std::string read_name() {
    std::string out;
    out.push_back(lex.src[lex.pos++]);
    while (lex.pos < lex.src.size() &&
           (std::isalnum(static_cast<unsigned char>(lex.src[lex.pos])) || lex.src[lex.pos] == '_')) {
      out.push_back(lex.src[lex.pos++]);
    }
    return out;
  }

  double read_number() {
    const std::size_t start = lex.pos;
    auto digits = [&] {
      while (lex.pos < lex.src.size() && std::isdigit(static_cast<unsigned char>(lex.src[lex.pos])))
        ++lex.pos;
    };
    digits();
    if (lex.pos < lex.src.size() && lex.src[lex.pos] == '.') {
      ++lex.pos;
      digits();
    }
    if (lex.pos < lex.src.size() && (lex.src[lex.pos] == 'e' || lex.src[lex.pos] == 'E')) {
      std::size_t mark = lex.pos++;
      if (lex.pos < lex.src.size() && (lex.src[lex.pos] == '+' || lex.src[lex.pos] == '-')) ++lex.pos;
      if (lex.pos >= lex.src.size() || !std::isdigit(static_cast<unsigned char>(lex.src[lex.pos]))) {
        lex.pos = mark;  // the 'e' belongs to a following name, not this number
      } else {
        digits();
      }
    }
    double value = 0.0;
    auto res = std::from_chars(lex.src.data() + start, lex.src.data() + lex.pos, value);
    if (res.ec != std::errc()) error("bad numeric literal", start);
    return value;
  }

  int read_exponent() {
    lex.skip_ws();
    const std::size_t start = lex.pos;
    bool negative = false;
    if (lex.pos < lex.src.size() && (lex.src[lex.pos] == '+' || lex.src[lex.pos] == '-')) {
      negative = lex.src[lex.pos] == '-';
      ++lex.pos;
    }
    lex.skip_ws();
    if (lex.pos >= lex.src.size() || !std::isdigit(static_cast<unsigned char>(lex.src[lex.pos]))) {
      error("expected integer exponent", start);
    }
    long value = 0;
    while (lex.pos < lex.src.size() && std::isdigit(static_cast<unsigned char>(lex.src[lex.pos]))) {
      value = value * 10 + (lex.src[lex.pos] - '0');
      if (value > 1000000) error("exponent too large", start);
      ++lex.pos;
    }
    if (lex.pos < lex.src.size() && lex.src[lex.pos] == '.') {
      error("exponent must be an integer", start);
    }
    return static_cast<int>(negative ? -value : value);
  }

  Expr parse_expr() {
    Expr left = parse_term();
    while (true) {
      const char c = lex.peek();
      if (c == '+') {
        ++lex.pos;
        left = add(left, parse_term());
      } else if (c == '-') {
        ++lex.pos;
        left = sub(left, parse_term());
      } else {
        return left;
      }
    }
  }

  Expr parse_term() {
    Expr left = parse_unary();
    while (true) {
      const char c = lex.peek();
      if (c == '*') {
        ++lex.pos;
        left = mul(left, parse_unary());
      } else if (c == '/') {
        ++lex.pos;
        left = div(left, parse_unary());
      } else {
        return left;
      }
    }
  }

  Expr parse_unary() {
    if (lex.peek() == '-') {
      ++lex.pos;
      return neg(parse_unary());
    }
    return parse_power();
  }

  Expr parse_power() {
    Expr base = parse_atom();
    if (lex.peek() == '^') {
      ++lex.pos;
      return int_pow(base, read_exponent());
    }
    return base;
  }

  Expr parse_atom() {
    lex.skip_ws();
    const std::size_t at = lex.pos;
    if (lex.pos >= lex.src.size()) error("unexpected end of input", at);
    const char c = lex.src[lex.pos];
    if (c == '(') {
      ++lex.pos;
      Expr inner = parse_expr();
      if (lex.peek() != ')') error("expected ')'", lex.pos);
      ++lex.pos;
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      return lit(read_number());
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::string name = read_name();
      const int ci = find_coord(name);
      const bool constant = is_constant(name);
      const auto fn = lookup_fn(name);
      const bool called = lex.peek() == '(';
      if (ci >= 0 || constant) {
        if (called) {
          fail(Errc::arity_error, "'" + name + "' is not a function (offset " +
                                      std::to_string(at) + ")");
        }
        return ci >= 0 ? coord(ci) : aconst(name);
      }
      if (fn) {
        if (!called) {
          fail(Errc::arity_error,
               "function '" + name + "' needs parentheses (offset " + std::to_string(at) + ")");
        }
        ++lex.pos;  // '('
        Expr arg = parse_expr();
        if (lex.peek() != ')') error("expected ')'", lex.pos);
        ++lex.pos;
        return call(*fn, arg);
      }
      fail(Errc::unknown_name, "unknown name '" + name + "' at offset " + std::to_string(at));
    }
    error(std::string("unexpected character '") + c + "'", at);
  }
};

}  // namespace

Expr parse(std::string_view src, const ParseNames& names) {
  Parser p{Lexer{src}, names};
  p.check_disjoint();
  if (p.lex.eof()) p.error("empty expression", 0);
  Expr e = p.parse_expr();
  if (!p.lex.eof()) p.error("trailing input", p.lex.pos);
  return e;
}

// ---------------------------------------------------------------------------
// Differentiation
// ---------------------------------------------------------------------------

Expr diff(const Expr& e, int index) {
  switch (e->kind) {
    case ExprKind::coord:
      return lit(e->coord_index == index ? 1.0 : 0.0);
    case ExprKind::real_lit:
    case ExprKind::aconst:
      return lit(0.0);
    case ExprKind::neg:
      return neg(diff(e->a, index));
    case ExprKind::add:
      return add(diff(e->a, index), diff(e->b, index));
    case ExprKind::sub:
      return sub(diff(e->a, index), diff(e->b, index));
    case ExprKind::mul:
      return add(mul(diff(e->a, index), e->b), mul(e->a, diff(e->b, index)));
    case ExprKind::div:
      return div(sub(mul(diff(e->a, index), e->b), mul(e->a, diff(e->b, index))),
                 int_pow(e->b, 2));
    case ExprKind::int_pow:
      return mul(mul(lit(static_cast<double>(e->exponent)), int_pow(e->a, e->exponent - 1)),
                 diff(e->a, index));
    case ExprKind::call: {
      const Expr da = diff(e->a, index);
      switch (e->fn) {
        case Fn::sin: return mul(call(Fn::cos, e->a), da);
        case Fn::cos: return neg(mul(call(Fn::sin, e->a), da));
        case Fn::tan: return div(da, int_pow(call(Fn::cos, e->a), 2));
        case Fn::exp: return mul(call(Fn::exp, e->a), da);
        case Fn::log: return div(da, e->a);
        case Fn::sqrt: return div(da, mul(lit(2.0), call(Fn::sqrt, e->a)));
        case Fn::sinh: return mul(call(Fn::cosh, e->a), da);
        case Fn::cosh: return mul(call(Fn::sinh, e->a), da);
        case Fn::conj: return call(Fn::conj, da);
      }
      break;
    }
  }
  fail(Errc::syntax_error, "malformed expression node");
}

// ---------------------------------------------------------------------------
// Printing: parenthesized so that parse(to_string(e)) reproduces e node for
// node (smart constructors are idempotent on their own output).
// ---------------------------------------------------------------------------

namespace {

bool is_atom(const Expr& e) {
  switch (e->kind) {
    case ExprKind::coord:
    case ExprKind::aconst:
    case ExprKind::call:
      return true;
    case ExprKind::real_lit:
      return e->lit >= 0.0;  // negative literals print with a leading '-'
    default:
      return false;
  }
}

// precedence: add/sub = 1, mul/div = 2, neg = 3, power/atom = 4
int precedence(const Expr& e) {
  switch (e->kind) {
    case ExprKind::add:
    case ExprKind::sub:
      return 1;
    case ExprKind::mul:
    case ExprKind::div:
      return 2;
    case ExprKind::neg:
      return 3;
    case ExprKind::int_pow:
      return 4;
    default:
      return is_atom(e) ? 5 : 3;
  }
}

void print(const Expr& e, int parent, const std::vector<std::string>& coords, std::string& out) {
  const int prec = precedence(e);
  const bool wrap = prec < parent;
  if (wrap) out.push_back('(');
  switch (e->kind) {
    case ExprKind::coord: {
      const auto i = static_cast<std::size_t>(e->coord_index);
      out += i < coords.size() ? coords[i] : "x" + std::to_string(e->coord_index);
      break;
    }
    case ExprKind::real_lit: {
      char buf[40];
      std::snprintf(buf, sizeof(buf), "%.17g", e->lit);
      out += buf;
      break;
    }
    case ExprKind::aconst:
      out += e->name;
      break;
    case ExprKind::neg:
      out.push_back('-');
      print(e->a, 3, coords, out);
      break;
    case ExprKind::add:
      print(e->a, 1, coords, out);
      out += " + ";
      print(e->b, 2, coords, out);
      break;
    case ExprKind::sub:
      print(e->a, 1, coords, out);
      out += " - ";
      print(e->b, 2, coords, out);
      break;
    case ExprKind::mul:
      print(e->a, 2, coords, out);
      out += " * ";
      print(e->b, 3, coords, out);
      break;
    case ExprKind::div:
      print(e->a, 2, coords, out);
      out += " / ";
      print(e->b, 3, coords, out);
      break;
    case ExprKind::int_pow:
      print(e->a, 5, coords, out);
      out.push_back('^');
      out += std::to_string(e->exponent);
      break;
    case ExprKind::call:
      out += fn_name(e->fn);
      out.push_back('(');
      print(e->a, 0, coords, out);
      out.push_back(')');
      break;
  }
  if (wrap) out.push_back(')');
}

}  // namespace

std::string to_string(const Expr& e, const std::vector<std::string>& coords) {
  std::string out;
  print(e, 0, coords, out);
  return out;
}

bool equal(const Expr& a, const Expr& b) {
  if (a.get() == b.get()) return true;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprKind::coord: return a->coord_index == b->coord_index;
    case ExprKind::real_lit: return a->lit == b->lit;
    case ExprKind::aconst: return a->name == b->name;
    case ExprKind::neg: return equal(a->a, b->a);
    case ExprKind::add:
    case ExprKind::sub:
    case ExprKind::mul:
    case ExprKind::div:
      return equal(a->a, b->a) && equal(a->b, b->b);
    case ExprKind::int_pow: return a->exponent == b->exponent && equal(a->a, b->a);
    case ExprKind::call: return a->fn == b->fn && equal(a->a, b->a);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Evaluation. Complex elementary functions are computed from their real
// decompositions so that f(conj z) == conj(f z) holds bit for bit; that makes
// eval a *-homomorphism in the constants with zero tolerance.
// ---------------------------------------------------------------------------

namespace {

Complex c_sin(const Complex& z) {
  return {std::sin(z.real()) * std::cosh(z.imag()), std::cos(z.real()) * std::sinh(z.imag())};
}
Complex c_cos(const Complex& z) {
  return {std::cos(z.real()) * std::cosh(z.imag()), -std::sin(z.real()) * std::sinh(z.imag())};
}
Complex c_exp(const Complex& z) {
  const double r = std::exp(z.real());
  return {r * std::cos(z.imag()), r * std::sin(z.imag())};
}
Complex c_sinh(const Complex& z) {
  return {std::sinh(z.real()) * std::cos(z.imag()), std::cosh(z.real()) * std::sin(z.imag())};
}
Complex c_cosh(const Complex& z) {
  return {std::cosh(z.real()) * std::cos(z.imag()), std::sinh(z.real()) * std::sin(z.imag())};
}

bool real_fiber(const Complex& z) {
  return std::abs(z.imag()) <= tol::self_adjoint * std::max(1.0, std::abs(z));
}

[[noreturn]] void domain_fail(const char* fn, std::size_t fiber, const Complex& z) {
  fail(Errc::domain_error, std::string(fn) + ": invalid value (" + std::to_string(z.real()) +
                               "," + std::to_string(z.imag()) + ") at fiber " +
                               std::to_string(fiber));
}

Complex eval_fn(Fn f, const Complex& z, std::size_t fiber) {
  switch (f) {
    case Fn::sin: return c_sin(z);
    case Fn::cos: return c_cos(z);
    case Fn::tan: {
      const Complex c = c_cos(z);
      if (std::abs(c) < 1e-300) domain_fail("tan", fiber, z);
      return c_sin(z) / c;
    }
    case Fn::exp: return c_exp(z);
    case Fn::log: {
      if (real_fiber(z) && z.real() <= 0.0) domain_fail("log", fiber, z);
      return {std::log(std::abs(z)), std::atan2(z.imag(), z.real())};
    }
    case Fn::sqrt: {
      if (real_fiber(z)) {
        if (z.real() < 0.0) domain_fail("sqrt", fiber, z);
        return {std::sqrt(std::max(z.real(), 0.0)), 0.0};
      }
      const double m = std::abs(z);
      const double re = std::sqrt((m + z.real()) / 2.0);
      const double im = z.imag() / (2.0 * re);
      return {re, im};
    }
    case Fn::sinh: return c_sinh(z);
    case Fn::cosh: return c_cosh(z);
    case Fn::conj: return std::conj(z);
  }
  return z;
}

}  // namespace

AElem eval(const Expr& e, const EvalContext& ctx) {
  switch (e->kind) {
    case ExprKind::coord: {
      if (e->coord_index < 0 || static_cast<std::size_t>(e->coord_index) >= ctx.coords.size()) {
        fail(Errc::dim_mismatch, "coordinate index out of range");
      }
      return AElem::constant(ctx.fibers, ctx.coords[static_cast<std::size_t>(e->coord_index)]);
    }
    case ExprKind::real_lit:
      return AElem::constant(ctx.fibers, e->lit);
    case ExprKind::aconst: {
      if (!ctx.constants) fail(Errc::unknown_constant, "no constant table: '" + e->name + "'");
      auto it = ctx.constants->find(e->name);
      if (it == ctx.constants->end()) {
        fail(Errc::unknown_constant, "unknown constant '" + e->name + "'");
      }
      if (it->second.fibers() != ctx.fibers) {
        fail(Errc::fiber_count_mismatch, "constant '" + e->name + "' has wrong fiber count");
      }
      return it->second;
    }
    case ExprKind::neg:
      return -eval(e->a, ctx);
    case ExprKind::add:
      return eval(e->a, ctx) + eval(e->b, ctx);
    case ExprKind::sub:
      return eval(e->a, ctx) - eval(e->b, ctx);
    case ExprKind::mul:
      return eval(e->a, ctx) * eval(e->b, ctx);
    case ExprKind::div: {
      AElem num = eval(e->a, ctx);
      AElem den = eval(e->b, ctx);
      for (std::size_t i = 0; i < den.fibers(); ++i) {
        if (std::abs(den[i]) < 1e-300) domain_fail("div", i, den[i]);
      }
      for (std::size_t i = 0; i < num.fibers(); ++i) num[i] /= den[i];
      return num;
    }
    case ExprKind::int_pow: {
      AElem base = eval(e->a, ctx);
      const int k = e->exponent;
      AElem out = AElem::unit(base.fibers());
      for (std::size_t i = 0; i < base.fibers(); ++i) {
        Complex b = base[i];
        if (k < 0) {
          if (std::abs(b) < 1e-300) domain_fail("int_pow", i, b);
          b = 1.0 / b;
        }
        Complex acc = 1.0;
        for (int m = std::abs(k); m > 0; m >>= 1) {
          if (m & 1) acc *= b;
          b *= b;
        }
        out[i] = acc;
      }
      return out;
    }
    case ExprKind::call: {
      AElem arg = eval(e->a, ctx);
      for (std::size_t i = 0; i < arg.fibers(); ++i) arg[i] = eval_fn(e->fn, arg[i], i);
      return arg;
    }
  }
  fail(Errc::syntax_error, "malformed expression node");
}

}  // namespace opvg
