#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "opvg/algebra.hpp"

namespace opvg {

// The expression language for everything smooth on the chart: metric entries,
// field coefficients, functions. Exact symbolic differentiation, fiberwise
// evaluation into AElem.

enum class ExprKind { coord, real_lit, aconst, neg, add, sub, mul, div, int_pow, call };

enum class Fn { sin, cos, tan, exp, log, sqrt, sinh, cosh, conj };

const char* fn_name(Fn f);

class ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

class ExprNode {
 public:
  ExprKind kind;
  int coord_index = -1;  // coord
  double lit = 0.0;      // real_lit
  std::string name;      // aconst
  int exponent = 0;      // int_pow
  Fn fn = Fn::sin;       // call
  Expr a, b;             // children (a only for unary kinds)
};

// Smart constructors: fold real-literal arithmetic, absorb 0/1, collapse
// double negation. They keep domain-relevant structure (no folding through
// function calls, no dividend-zero absorption).
Expr lit(double v);
Expr coord(int index);
Expr aconst(std::string name);
Expr neg(const Expr& e);
Expr add(const Expr& a, const Expr& b);
Expr sub(const Expr& a, const Expr& b);
Expr mul(const Expr& a, const Expr& b);
Expr div(const Expr& a, const Expr& b);
Expr int_pow(const Expr& base, int exponent);
Expr call(Fn f, const Expr& arg);

// Name tables the parser resolves against. Coordinates first, then constants,
// then builtin functions; a name living in two tables is a parse-time error.
struct ParseNames {
  std::vector<std::string> coords;
  std::vector<std::string> constants;
};

Expr parse(std::string_view src, const ParseNames& names);

// Exact symbolic partial derivative with respect to coordinate `index`.
Expr diff(const Expr& e, int index);

// Prints with the given coordinate names (falls back to x0, x1, ... when a
// name is missing); output reparses to a node-for-node equal tree.
std::string to_string(const Expr& e, const std::vector<std::string>& coords = {});
bool equal(const Expr& a, const Expr& b);

using ConstTable = std::map<std::string, AElem>;

struct EvalContext {
  std::vector<double> coords;
  const ConstTable* constants = nullptr;
  std::size_t fibers = 1;
};

AElem eval(const Expr& e, const EvalContext& ctx);

}  // namespace opvg
