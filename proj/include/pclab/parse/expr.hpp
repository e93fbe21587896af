#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "pclab/arith/matrix.hpp"
#include "pclab/arith/poly.hpp"
#include "pclab/arith/ratfun.hpp"

namespace pclab::parse {

enum class NodeKind { Number, Variable, Add, Sub, Mul, Div, Pow, Neg };

// Expression tree. Number holds a non-negative integer literal, Variable a
// name, Pow a literal exponent in [0, 64].
struct ExprAst {
  NodeKind kind = NodeKind::Number;
  Int number;
  std::string name;
  unsigned exponent = 0;
  std::vector<std::shared_ptr<const ExprAst>> children;

  friend bool operator==(const ExprAst& a, const ExprAst& b);
};

using ExprPtr = std::shared_ptr<const ExprAst>;

constexpr unsigned kMaxExponent = 64;

// Infix grammar: + - (left), * / (left), unary -, ^ with a literal natural
// exponent; parentheses; whitespace ignored. Throws SyntaxError with a byte
// offset, or UnknownVariable.
ExprPtr parse_expr(std::string_view text, const std::vector<std::string>& allowed_vars);

// Minimal-parenthesis rendering that reparses to an identical tree.
std::string print(const ExprAst& e);

// Lowering. Each throws InvalidArgument on a semantic zero division, and the
// polynomial lowering also rejects division by a non-constant.
QMPoly lower_poly(const ExprAst& e, const std::vector<std::string>& vars);
PolyFraction<RationalField> lower_fraction(const ExprAst& e, const std::vector<std::string>& vars);
QRatFun lower_ratfun(const ExprAst& e, const std::string& var);
Rat lower_constant(const ExprAst& e);

// "1/2, -3, 4" -> [1/2, -3, 4]. The empty string is the empty list.
std::vector<Rat> parse_rat_list(std::string_view text);

// Sum_i c_i(z) f^{(i)} = 0 with polynomial coefficients in z, c_n != 0.
struct ScalarLinearOde {
  std::vector<QPoly> coeffs;  // c_0 .. c_n
  std::size_t order() const { return coeffs.size() - 1; }
};

// f^{(n)} = g(z, y0, .., y{n-1}).
struct NonlinearSpec {
  std::size_t n = 1;
  PolyFraction<RationalField> g;
};

std::vector<std::string> nonlinear_vars(std::size_t n);

// "c0;c1;...;cn" over the variable z.
ScalarLinearOde parse_linear_ode(std::string_view text);
NonlinearSpec parse_nonlinear(std::string_view g_text, std::size_t n);

// One matrix row per line, entries separated by ';', rational functions in z.
Matrix<QRatFun> parse_matrix(std::string_view text);

// Constant matrices separated by blank lines.
std::vector<Matrix<Rat>> parse_matrix_blocks(std::string_view text);

}  // namespace pclab::parse
