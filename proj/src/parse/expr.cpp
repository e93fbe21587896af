#include "pclab/parse/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pclab::parse {

bool operator==(const ExprAst& a, const ExprAst& b) {
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  switch (a.kind) {
    case NodeKind::Number:
      if (a.number != b.number) return false;
      break;
    case NodeKind::Variable:
      if (a.name != b.name) return false;
      break;
    case NodeKind::Pow:
      if (a.exponent != b.exponent) return false;
      break;
    default:
      break;
  }
  for (std::size_t i = 0; i < a.children.size(); ++i)
    if (!(*a.children[i] == *b.children[i])) return false;
  return true;
}

namespace {

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
};

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    if (std::isspace(c)) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(c)) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      out.push_back({Tok::Number, start, std::string(s.substr(start, i - start))});
      continue;
    }
    if (std::isalpha(c) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({Tok::Ident, start, std::string(s.substr(start, i - start))});
      continue;
    }
    Tok k;
    switch (c) {
      case '+': k = Tok::Plus; break;
      case '-': k = Tok::Minus; break;
      case '*': k = Tok::Star; break;
      case '/': k = Tok::Slash; break;
      case '^': k = Tok::Caret; break;
      case '(': k = Tok::LParen; break;
      case ')': k = Tok::RParen; break;
      default: throw SyntaxError(start, std::string("unexpected character '") + s[i] + "'");
    }
    out.push_back({k, start, std::string(1, s[i])});
    ++i;
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

// binding powers
constexpr int kAddBp = 10;
constexpr int kMulBp = 20;
constexpr int kNegBp = 30;
constexpr int kPowBp = 40;

class Parser {
 public:
  Parser(std::vector<Token> toks, const std::vector<std::string>& vars) : toks_(std::move(toks)), vars_(vars) {}

  ExprPtr parse() {
    auto e = expr(0);
    if (peek().kind != Tok::End) throw SyntaxError(peek().offset, "unexpected '" + peek().text + "'");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  static ExprPtr node(NodeKind k, std::vector<ExprPtr> children) {
    auto n = std::make_shared<ExprAst>();
    n->kind = k;
    n->children = std::move(children);
    return n;
  }

  ExprPtr prefix() {
    const Token& t = next();
    switch (t.kind) {
      case Tok::Number: {
        auto n = std::make_shared<ExprAst>();
        n->kind = NodeKind::Number;
        n->number = Int(t.text, 10);
        return n;
      }
      case Tok::Ident: {
        if (std::find(vars_.begin(), vars_.end(), t.text) == vars_.end())
          throw Error(ErrorKind::UnknownVariable,
                      "unknown variable '" + t.text + "' at offset " + std::to_string(t.offset));
        auto n = std::make_shared<ExprAst>();
        n->kind = NodeKind::Variable;
        n->name = t.text;
        return n;
      }
      case Tok::Minus:
        return node(NodeKind::Neg, {expr(kNegBp)});
      case Tok::LParen: {
        auto e = expr(0);
        if (peek().kind != Tok::RParen) throw SyntaxError(peek().offset, "expected ')'");
        next();
        return e;
      }
      case Tok::End:
        throw SyntaxError(t.offset, "unexpected end of input");
      default:
        throw SyntaxError(t.offset, "unexpected '" + t.text + "'");
    }
  }

  ExprPtr expr(int min_bp) {
    ExprPtr lhs = prefix();
    for (;;) {
      const Token& op = peek();
      int lbp;
      NodeKind kind;
      switch (op.kind) {
        case Tok::Plus: lbp = kAddBp; kind = NodeKind::Add; break;
        case Tok::Minus: lbp = kAddBp; kind = NodeKind::Sub; break;
        case Tok::Star: lbp = kMulBp; kind = NodeKind::Mul; break;
        case Tok::Slash: lbp = kMulBp; kind = NodeKind::Div; break;
        case Tok::Caret: lbp = kPowBp; kind = NodeKind::Pow; break;
        default: return lhs;
      }
      if (lbp <= min_bp) return lhs;
      next();
      if (kind == NodeKind::Pow) {
        const Token& e = next();
        if (e.kind != Tok::Number) throw SyntaxError(e.offset, "exponent must be a non-negative integer literal");
        Int v(e.text, 10);
        if (v > kMaxExponent) throw SyntaxError(e.offset, "exponent exceeds " + std::to_string(kMaxExponent));
        auto n = std::make_shared<ExprAst>();
        n->kind = NodeKind::Pow;
        n->exponent = static_cast<unsigned>(v.get_ui());
        n->children = {lhs};
        lhs = n;
        continue;
      }
      lhs = node(kind, {lhs, expr(lbp)});
    }
  }

  std::vector<Token> toks_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;
};

int precedence(const ExprAst& e) {
  switch (e.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: return 1;
    case NodeKind::Mul:
    case NodeKind::Div: return 2;
    case NodeKind::Neg: return 3;
    case NodeKind::Pow: return 4;
    default: return 5;
  }
}

void render(const ExprAst& e, int min_prec, std::ostringstream& os) {
  bool paren = precedence(e) < min_prec;
  if (paren) os << '(';
  switch (e.kind) {
    case NodeKind::Number: os << e.number.get_str(); break;
    case NodeKind::Variable: os << e.name; break;
    case NodeKind::Add:
    case NodeKind::Sub:
      render(*e.children[0], 1, os);
      os << (e.kind == NodeKind::Add ? " + " : " - ");
      render(*e.children[1], 2, os);
      break;
    case NodeKind::Mul:
    case NodeKind::Div:
      render(*e.children[0], 2, os);
      os << (e.kind == NodeKind::Mul ? "*" : "/");
      render(*e.children[1], 3, os);
      break;
    case NodeKind::Neg:
      os << '-';
      render(*e.children[0], 3, os);
      break;
    case NodeKind::Pow:
      render(*e.children[0], 4, os);
      os << '^' << e.exponent;
      break;
  }
  if (paren) os << ')';
}

using QFrac = PolyFraction<RationalField>;

QFrac lower_frac(const ExprAst& e, const std::vector<std::string>& vars) {
  RationalField q;
  switch (e.kind) {
    case NodeKind::Number:
      return QFrac::of(QMPoly::constant(q, vars, Rat(e.number)));
    case NodeKind::Variable: {
      auto it = std::find(vars.begin(), vars.end(), e.name);
      if (it == vars.end()) throw Error(ErrorKind::UnknownVariable, "unknown variable '" + e.name + "'");
      return QFrac::of(QMPoly::variable(q, vars, static_cast<std::size_t>(it - vars.begin())));
    }
    case NodeKind::Neg: {
      auto a = lower_frac(*e.children[0], vars);
      a.num = -a.num;
      return a;
    }
    case NodeKind::Pow: {
      auto a = lower_frac(*e.children[0], vars);
      QFrac r{a.num.pow(e.exponent), a.den.pow(e.exponent)};
      r.normalize();
      return r;
    }
    default:
      break;
  }
  auto a = lower_frac(*e.children[0], vars);
  auto b = lower_frac(*e.children[1], vars);
  QFrac r;
  switch (e.kind) {
    case NodeKind::Add:
    case NodeKind::Sub: {
      QMPoly bn = e.kind == NodeKind::Add ? b.num : -b.num;
      if (a.den == b.den) r = {a.num + bn, a.den};
      else r = {a.num * b.den + bn * a.den, a.den * b.den};
      break;
    }
    case NodeKind::Mul:
      r = {a.num * b.num, a.den * b.den};
      break;
    case NodeKind::Div:
      if (b.num.is_zero()) throw Error(ErrorKind::InvalidArgument, "division by zero in expression");
      r = {a.num * b.den, a.den * b.num};
      break;
    default:
      break;
  }
  // fold constant denominators so polynomial inputs stay polynomials
  if (r.den.is_constant()) {
    r.num = r.num.scaled(Rat(1) / r.den.constant_term());
    r.den = QMPoly::constant(q, vars, Rat(1));
  }
  r.normalize();
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

}  // namespace

ExprPtr parse_expr(std::string_view text, const std::vector<std::string>& allowed_vars) {
  return Parser(lex(text), allowed_vars).parse();
}

std::string print(const ExprAst& e) {
  std::ostringstream os;
  render(e, 0, os);
  return os.str();
}

PolyFraction<RationalField> lower_fraction(const ExprAst& e, const std::vector<std::string>& vars) {
  return lower_frac(e, vars);
}

QMPoly lower_poly(const ExprAst& e, const std::vector<std::string>& vars) {
  auto f = lower_frac(e, vars);
  if (!f.den.is_constant()) throw Error(ErrorKind::InvalidArgument, "expression is not a polynomial");
  return f.num.scaled(Rat(1) / f.den.constant_term());
}

QRatFun lower_ratfun(const ExprAst& e, const std::string& var) {
  auto f = lower_frac(e, {var});
  return QRatFun(f.num.to_univariate(0), f.den.to_univariate(0));
}

Rat lower_constant(const ExprAst& e) {
  auto p = lower_poly(e, {});
  return p.constant_term();
}

std::vector<Rat> parse_rat_list(std::string_view text) {
  std::vector<Rat> out;
  if (trim(text).empty()) return out;
  for (auto tok : split(text, ',')) out.push_back(Rat::parse(tok));
  return out;
}

std::vector<std::string> nonlinear_vars(std::size_t n) {
  std::vector<std::string> v{"z"};
  for (std::size_t i = 0; i < n; ++i) v.push_back("y" + std::to_string(i));
  return v;
}

ScalarLinearOde parse_linear_ode(std::string_view text) {
  ScalarLinearOde ode;
  for (auto part : split(text, ';')) {
    auto ast = parse_expr(part, {"z"});
    ode.coeffs.push_back(lower_poly(*ast, {"z"}).to_univariate(0));
  }
  if (ode.coeffs.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "a linear ODE needs coefficients c_0;...;c_n with n >= 1");
  if (ode.coeffs.back().is_zero()) throw Error(ErrorKind::InvalidArgument, "leading coefficient c_n is zero");
  return ode;
}

NonlinearSpec parse_nonlinear(std::string_view g_text, std::size_t n) {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "ODE order must be at least 1");
  auto vars = nonlinear_vars(n);
  auto ast = parse_expr(g_text, vars);
  return {n, lower_fraction(*ast, vars)};
}

Matrix<QRatFun> parse_matrix(std::string_view text) {
  std::vector<std::vector<QRatFun>> rows;
  for (auto line : split(text, '\n')) {
    if (trim(line).empty()) continue;
    std::vector<QRatFun> row;
    for (auto entry : split(line, ';')) row.push_back(lower_ratfun(*parse_expr(entry, {"z"}), "z"));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorKind::InvalidArgument, "empty matrix");
  std::vector<QRatFun> data;
  for (auto& r : rows) {
    if (r.size() != rows.size()) throw Error(ErrorKind::InvalidArgument, "matrix must be square");
    for (auto& v : r) data.push_back(std::move(v));
  }
  return Matrix<QRatFun>(rows.size(), rows.size(), std::move(data));
}

std::vector<Matrix<Rat>> parse_matrix_blocks(std::string_view text) {
  std::vector<Matrix<Rat>> out;
  std::vector<std::vector<Rat>> rows;
  auto flush = [&] {
    if (rows.empty()) return;
    std::vector<Rat> data;
    for (auto& r : rows) {
      if (r.size() != rows.size()) throw Error(ErrorKind::InvalidArgument, "residue matrices must be square");
      data.insert(data.end(), r.begin(), r.end());
    }
    out.emplace_back(rows.size(), rows.size(), std::move(data));
    rows.clear();
  };
  for (auto line : split(text, '\n')) {
    if (trim(line).empty()) {
      flush();
      continue;
    }
    std::vector<Rat> row;
    for (auto entry : split(line, ';')) row.push_back(lower_constant(*parse_expr(entry, {})));
    rows.push_back(std::move(row));
  }
  flush();
  return out;
}

}  // namespace pclab::parse
