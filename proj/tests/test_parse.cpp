#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pclab/parse/expr.hpp"
#include "support.hpp"

using namespace pclab;
using namespace pclab::parse;
using testing::QQ;

namespace {

// Random text from the grammar over the given variables.
std::string random_expr(std::mt19937& rng, const std::vector<std::string>& vars, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 7), lit(0, 12), v(0, static_cast<int>(vars.size()) - 1),
      e(0, 3);
  switch (pick(rng)) {
    case 0: return std::to_string(lit(rng));
    case 1: return vars[static_cast<std::size_t>(v(rng))];
    case 2: return random_expr(rng, vars, depth - 1) + " + " + random_expr(rng, vars, depth - 1);
    case 3: return random_expr(rng, vars, depth - 1) + "-" + random_expr(rng, vars, depth - 1);
    case 4: return random_expr(rng, vars, depth - 1) + "*" + random_expr(rng, vars, depth - 1);
    case 5: return "(" + random_expr(rng, vars, depth - 1) + ")^" + std::to_string(e(rng));
    case 6: return "-" + random_expr(rng, vars, depth - 1);
    default: return "(" + random_expr(rng, vars, depth - 1) + ")/" + std::to_string(lit(rng) + 1);
  }
}

QMPoly lp(const std::string& text, const std::vector<std::string>& vars) {
  return lower_poly(*parse_expr(text, vars), vars);
}

}  // namespace

TEST_CASE("parse_expr examples") {
  std::vector<std::string> t{"t"};
  auto p = lp("t*(t^2-11*t-1)", t);
  QPoly want(QQ, {Rat(0), Rat(-1), Rat(-11), Rat(1)});
  CHECK(p.to_univariate(0) == want);
  CHECK(lp("0", t).is_zero());
  auto zy = nonlinear_vars(1);
  auto y2 = lp("y0^2", zy);
  CHECK(y2.term_count() == 1);
  CHECK(y2.coeff({0, 2}) == Rat(1));
}

TEST_CASE("precedence and associativity") {
  std::vector<std::string> x{"x"};
  CHECK(lower_constant(*parse_expr("2-3-4", {})) == Rat(-5));
  CHECK(lower_constant(*parse_expr("24/4/2", {})) == Rat(3));
  CHECK(lower_constant(*parse_expr("-2^2", {})) == Rat(-4));
  CHECK(lower_constant(*parse_expr("2*3^2", {})) == Rat(18));
  CHECK(lower_constant(*parse_expr("(1+2)*3", {})) == Rat(9));
  CHECK(lower_constant(*parse_expr("  1 /  2 ", {})) == Rat(Int(1), Int(2)));
  CHECK(lp("-x^2", x) == -lp("x*x", x));
}

TEST_CASE("syntax errors carry offsets") {
  auto offset_of = [](const std::string& text) -> long {
    try {
      parse_expr(text, {"z"});
    } catch (const SyntaxError& e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(offset_of("1 + ") == 4);
  CHECK(offset_of("(z") == 2);
  CHECK(offset_of("z $ 1") == 2);
  CHECK(offset_of("z^x") >= 0);
  CHECK(offset_of("z^65") >= 0);
  CHECK(offset_of("z z") >= 0);
  try {
    parse_expr("q + 1", {"z"});
    FAIL("expected UnknownVariable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::UnknownVariable);
  }
}

TEST_CASE("parse_rat_list") {
  CHECK(parse_rat_list("1/2,1/2") == std::vector<Rat>{Rat(Int(1), Int(2)), Rat(Int(1), Int(2))});
  CHECK(parse_rat_list("-1/3, 2") == std::vector<Rat>{Rat(Int(-1), Int(3)), Rat(2)});
  CHECK(parse_rat_list("").empty());
  CHECK_THROWS_AS(parse_rat_list("1/0"), Error);
  CHECK_THROWS_AS(parse_rat_list("1/2,,3"), Error);
  CHECK_THROWS_AS(parse_rat_list("a"), Error);
}

TEST_CASE("round trip through the printer") {
  std::mt19937 rng(11);
  std::vector<std::string> vars{"z", "y0", "y1"};
  for (int i = 0; i < 500; ++i) {
    std::string text = random_expr(rng, vars, 4);
    auto ast = parse_expr(text, vars);
    std::string printed = print(*ast);
    auto again = parse_expr(printed, vars);
    CHECK_MESSAGE(*ast == *again, text << " -> " << printed);
    CHECK(print(*again) == printed);
  }
}

TEST_CASE("lowering respects arithmetic") {
  std::mt19937 rng(12);
  std::vector<std::string> vars{"z", "y0"};
  for (int i = 0; i < 300; ++i) {
    std::string a = random_expr(rng, vars, 3), b = random_expr(rng, vars, 3);
    CHECK(lp("(" + a + ")+(" + b + ")", vars) == lp(a, vars) + lp(b, vars));
    CHECK(lp("(" + a + ")-(" + b + ")", vars) == lp(a, vars) - lp(b, vars));
    CHECK(lp("(" + a + ")*(" + b + ")", vars) == lp(a, vars) * lp(b, vars));
    CHECK(lp("(" + a + ")^3", vars) == lp(a, vars).pow(3));
  }
}

TEST_CASE("rational function lowering") {
  auto f = lower_ratfun(*parse_expr("(z^2-1)/(z-1)", {"z"}), "z");
  CHECK(f == QRatFun(QPoly(QQ, {Rat(1), Rat(1)})));
  CHECK_THROWS_AS(lower_ratfun(*parse_expr("1/(z-z)", {"z"}), "z"), Error);
  CHECK_THROWS_AS(lower_constant(*parse_expr("1/(2-2)", {})), Error);
  CHECK_THROWS_AS(lower_poly(*parse_expr("1/z", {"z"}), {"z"}), Error);
  auto frac = lower_fraction(*parse_expr("y0/(z+1)", nonlinear_vars(1)), nonlinear_vars(1));
  CHECK(frac.den.coeff({1, 0}) == Rat(1));
}

TEST_CASE("ode and matrix specifications") {
  auto ode = parse_linear_ode("-1;1");
  CHECK(ode.order() == 1);
  CHECK(ode.coeffs[0] == QPoly::constant(QQ, Rat(-1)));
  CHECK_THROWS_AS(parse_linear_ode("1"), Error);
  CHECK_THROWS_AS(parse_linear_ode("1;0"), Error);
  auto spec = parse_nonlinear("y1 - z*y0", 2);
  CHECK(spec.n == 2);
  CHECK_THROWS_AS(parse_nonlinear("y2", 2), Error);
  auto m = parse_matrix("1/z; 0\n0; (1/2)/(z-1)\n");
  CHECK(m.rows() == 2);
  CHECK(m(1, 1).eval(Rat(3)) == Rat(Int(1), Int(4)));
  CHECK_THROWS_AS(parse_matrix("1; 2\n3"), Error);
  auto blocks = parse_matrix_blocks("0;1\n0;0\n\n0;-1\n0;0\n");
  REQUIRE(blocks.size() == 2);
  CHECK(blocks[1](0, 1) == Rat(-1));
}
