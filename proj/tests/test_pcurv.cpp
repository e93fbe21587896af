#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pclab/denoms/profile.hpp"
#include "pclab/parse/expr.hpp"
#include "pclab/pcurv/pcurvature.hpp"
#include "pclab/solve/series_solver.hpp"
#include "support.hpp"

using namespace pclab;
using namespace pclab::pcurv;
using testing::QQ;

namespace {

Rat q(long n, long d = 1) { return Rat(Int(n), Int(d)); }

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Syntax;
}

Matrix<Fp> constant_power(const Matrix<Rat>& a, std::uint64_t p) {
  auto r = a.map([p](const Rat& x) { return reduce_rat(x, p); });
  auto acc = r;
  for (std::uint64_t k = 1; k < p; ++k) acc = acc * r;
  return acc;
}

// g(z, f, f', ..) along a leaf, as a series of the given order.
QSeries compose(const PolyFraction<RationalField>& g, const QSeries& leaf, std::size_t n, std::size_t order) {
  std::vector<QSeries> args{QSeries(QQ, std::vector<Rat>{q(0), q(1)}).extended(order)};
  QSeries d = leaf;
  for (std::size_t i = 0; i < n; ++i) {
    args.push_back(d.truncated(order));
    d = d.derivative();
  }
  auto num = eval_at_series(g.num, args, order), den = eval_at_series(g.den, args, order);
  return num * den.inverse();
}

}  // namespace

TEST_CASE("linear_pcurvature examples") {
  auto zero = linear_pcurvature(parse::parse_matrix("0"), 7);
  CHECK(zero.vanishes);
  CHECK(zero.nilpotent);
  auto one = linear_pcurvature(parse::parse_matrix("1"), 5);
  CHECK_FALSE(one.vanishes);
  CHECK(one.Ap(0, 0) == FpRatFun::constant(PrimeField{5}, Fp(1, 5)));
  auto c = linear_pcurvature(parse::parse_matrix("2/z"), 5);
  CHECK(c.vanishes);
  CHECK(kind_of([] { linear_pcurvature(parse::parse_matrix("(1/3)/z"), 3); }) == ErrorKind::BadPrime);
  CHECK(kind_of([] { linear_pcurvature(parse::parse_matrix("1"), 9); }) == ErrorKind::NotPrime);
}

TEST_CASE("falling factorial closed form for c/z") {
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
    PrimeField fp{p};
    for (long num = -6; num <= 6; ++num)
      for (long den : {1L, 2L, 3L, 5L}) {
        Rat c = q(num, den);
        if (c.den() % static_cast<unsigned long>(p) == 0) continue;
        auto r = linear_pcurvature(parse::parse_matrix("(" + c.str() + ")/z"), p);
        FpRatFun want(FpPoly::constant(fp, reduce_rat(testing::falling(c, p), p)), FpPoly::monomial(fp, fp.one(), p));
        CHECK(r.Ap(0, 0) == want);
        CHECK(r.vanishes);
      }
  }
}

TEST_CASE("constant systems: Ap = A^p") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int i = 0; i < 30; ++i) {
    Matrix<Rat> a(2, 2, std::vector<Rat>{q(d(rng)), q(d(rng)), q(d(rng)), q(d(rng))});
    std::string text = a(0, 0).str() + ";" + a(0, 1).str() + "\n" + a(1, 0).str() + ";" + a(1, 1).str();
    for (std::uint64_t p : {2, 3, 5, 7}) {
      auto r = linear_pcurvature(parse::parse_matrix(text), p);
      auto want = constant_power(a, p);
      for (std::size_t k = 0; k < 4; ++k) {
        const auto& e = r.Ap.data()[k];
        CHECK(e.is_polynomial());
        CHECK(e.num().coeff(0) == want.data()[k]);
        CHECK(e.num().degree() <= 0);
      }
    }
  }
}

TEST_CASE("nilpotent but not vanishing") {
  // A = N f with N^2 = 0 gives Ap = N f^{(p-1)}
  for (std::uint64_t p : {3, 5, 7}) {
    auto r = linear_pcurvature(parse::parse_matrix("0; z^" + std::to_string(p - 1) + "\n0; 0"), p);
    CHECK_FALSE(r.vanishes);
    CHECK(r.nilpotent);
    CHECK(r.Ap(0, 1) == FpRatFun::constant(PrimeField{p}, Fp::from_signed(-1, p)));
  }
}

TEST_CASE("sweeps") {
  auto half = pcurvature_sweep(parse::parse_matrix("(1/2)/z"), primes_up_to(50));
  CHECK(half.bad == std::vector<std::uint64_t>{2});
  CHECK(half.vanishing == primes_up_to(50).size() - 1);
  auto one = pcurvature_sweep(parse::parse_matrix("1"), primes_up_to(20));
  CHECK(one.vanishing == 0);
  CHECK(one.neither == primes_up_to(20).size());
  auto zero = pcurvature_sweep(parse::parse_matrix("0;0\n0;0"), {7, 3, 3, 5});
  CHECK(zero.vanishing == 3);
  REQUIRE(zero.results.size() == 3);
  CHECK(zero.results[0].p == 3);
  CHECK(zero.results[2].p == 7);
}

TEST_CASE("serial and parallel sweeps agree") {
  auto sys = parse::parse_matrix("1/(z^2+1); z\n(1/3)/(z-2); 1/z");
  auto a = pcurvature_sweep(sys, primes_up_to(60)), b = pcurvature_sweep_serial(sys, primes_up_to(60));
  CHECK(a.bad == b.bad);
  CHECK(a.vanishing == b.vanishing);
  CHECK(a.nilpotent == b.nilpotent);
  CHECK(a.neither == b.neither);
  REQUIRE(a.results.size() == b.results.size());
  for (std::size_t i = 0; i < a.results.size(); ++i) CHECK(a.results[i].Ap == b.results[i].Ap);
}

TEST_CASE("Ap kills reductions of integral solutions") {
  // f1' = f2, f2' = f2 has the integral flat section (1, 0); A is idempotent
  // so Ap = A != 0
  auto sys = parse::parse_matrix("0; 1\n0; 1");
  auto sol = solve::expand_system(sys, {q(1), q(0)}, 20);
  for (std::uint64_t p : {3, 5, 7}) {
    auto r = linear_pcurvature(sys, p);
    CHECK_FALSE(r.vanishes);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t k = 0; k < 20; ++k) {
        Fp acc(0, p);
        for (std::size_t j = 0; j < 2; ++j) acc += r.Ap(i, j).num().coeff(0) * reduce_rat(sol[j][k], p);
        CHECK(acc.is_zero());
      }
  }
}

TEST_CASE("vanishing p-curvature gives g_emp >= p^2 - 1") {
  const std::vector<std::string> systems = {"(1/2)/(z-1)", "(1/3)/(z+1)", "(2/5)/(z-2)",
                                            "(1/2)/(z-1); 1\n0; 0", "(1/2)/(z-1); 0\n0; (1/3)/(z+1)"};
  const std::size_t M = 60;
  for (const auto& text : systems) {
    auto sys = parse::parse_matrix(text);
    auto sol = solve::expand_system(sys, std::vector<Rat>(sys.rows(), q(1)), M);
    for (std::uint64_t p : {3, 5, 7}) {
      bool good = true;
      try {
        good = linear_pcurvature(sys, p).vanishes;
      } catch (const Error&) {
        good = false;
      }
      if (!good) continue;
      for (const auto& comp : sol)
        CHECK_MESSAGE(denoms::profile(comp.coeffs(), p).g(p) >= std::min<long>(M - 1, static_cast<long>(p * p) - 1),
                      text << " at p=" << p);
    }
  }
}

TEST_CASE("foliation_pcurvature examples") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (std::size_t n : {1, 2}) {
      // v^k(y_{n-1}) = 0 for k >= 2 and v^k(y_0) = 0 for k >= n + 1
      auto v = foliation_pcurvature(parse::parse_nonlinear("3", n), p);
      CHECK(v[n - 1].num.is_zero());
      if (p >= n + 1) CHECK(v[0].num.is_zero());
    }
  }
  // p = 2, n = 2: v^2(y0) = v(y1) = 3 = 1 in F_2
  auto two = foliation_pcurvature(parse::parse_nonlinear("3", 2), 2);
  CHECK(two[0].num == two[0].den);
  auto vars = parse::nonlinear_vars(1);
  auto lin = foliation_pcurvature(parse::parse_nonlinear("y0", 1), 5);
  CHECK(lin[0].num == FpMPoly::variable(PrimeField{5}, vars, 1) * lin[0].den);
  auto sq = foliation_pcurvature(parse::parse_nonlinear("y0^2", 1), 5);
  CHECK(sq[0].num.is_zero());
  CHECK(kind_of([] { foliation_pcurvature(parse::parse_nonlinear("y0/3", 1), 3); }) == ErrorKind::BadPrime);
  CHECK(kind_of([] { foliation_pcurvature(parse::parse_nonlinear("y0^7 + z*y0^5 + y0^3*z^2", 1), 13, 10); }) ==
        ErrorKind::DegreeBudgetExceeded);
}

TEST_CASE("v^k(y0) = k! y0^(k+1) for g = y0^2") {
  auto vars = parse::nonlinear_vars(1);
  auto field = parse::parse_nonlinear("y0^2", 1);
  for (std::size_t k = 1; k <= 8; ++k) {
    auto v = foliation_power(field, k)[0];
    QMPoly want = QMPoly::variable(QQ, vars, 1).pow(static_cast<unsigned>(k + 1)).scaled(Rat(factorial(k)));
    CHECK(v.num == want * v.den);
  }
}

TEST_CASE("v^k(y0) along a leaf is the k-th derivative") {
  const std::vector<std::pair<std::string, std::size_t>> fields = {{"y0^2 + z", 1}, {"y1 - z*y0^2", 2}, {"y0/(1 + z)", 1}};
  for (const auto& [g, n] : fields) {
    auto field = parse::parse_nonlinear(g, n);
    std::vector<Rat> init(n, q(1, 2));
    const std::size_t T = 16;
    auto leaf = solve::expand_foliation_leaf(field, {q(0), init}, T);
    for (std::size_t k = 1; k <= 5; ++k) {
      auto v = foliation_power(field, k)[0];
      QSeries along = compose(v, leaf, n, T - k - n);
      QSeries d = leaf;
      for (std::size_t i = 0; i < k; ++i) d = d.derivative();
      CHECK_MESSAGE(along == d.truncated(T - k - n), g << " k=" << k);
    }
  }
}

TEST_CASE("foliation p-curvature is the reduction of v^p") {
  const std::vector<std::pair<std::string, std::size_t>> fields = {
      {"y0^2 + z", 1}, {"z*y0 - y0^3", 1}, {"y1*y0 + 1", 2}, {"y0/(1 + z)", 1}};
  for (const auto& [g, n] : fields) {
    auto field = parse::parse_nonlinear(g, n);
    for (std::uint64_t p : {3, 5}) {
      auto over_q = foliation_power(field, p);
      auto mod_p = foliation_pcurvature(field, p);
      for (std::size_t i = 0; i < n; ++i) {
        auto red = reduce_mod_p(over_q[i], p);
        CHECK_MESSAGE(red.num * mod_p[i].den == mod_p[i].num * red.den, g << " p=" << p);
      }
    }
  }
}

TEST_CASE("rank-1 linear and foliation verdicts agree") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> c(-5, 5), cpos(1, 5);
  for (int s = 0; s < 20; ++s) {
    std::string a = s % 2 == 0 ? "(" + std::to_string(c(rng)) + ")/(z-" + std::to_string(cpos(rng)) + ")"
                               : "(" + std::to_string(c(rng)) + "*z+" + std::to_string(c(rng)) + ")/(z^2+" +
                                     std::to_string(cpos(rng)) + ")";
    auto sys = parse::parse_matrix(a);
    auto field = parse::parse_nonlinear("(" + a + ")*y0", 1);
    for (std::uint64_t p : {2, 3, 5, 7}) {
      bool lin = false, fol = false;
      try {
        lin = linear_pcurvature(sys, p).vanishes;
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::BadPrime);
        continue;
      }
      fol = foliation_pcurvature(field, p)[0].num.is_zero();
      CHECK_MESSAGE(lin == fol, a << " p=" << p);
    }
  }
}

TEST_CASE("p_power_leaf_check") {
  auto sq = parse::parse_nonlinear("y0^2", 1), lin = parse::parse_nonlinear("y0", 1);
  solve::InitialCondition one{q(0), {q(1)}};
  CHECK(p_power_leaf_check(sq, solve::expand_foliation_leaf(sq, one, 30), 5));
  CHECK_FALSE(p_power_leaf_check(lin, solve::expand_foliation_leaf(lin, one, 30), 5));
  CHECK(p_power_leaf_check(lin, solve::expand_foliation_leaf(lin, {q(0), {q(0)}}, 30), 5));
  CHECK(kind_of([&] { p_power_leaf_check(sq, solve::expand_foliation_leaf(sq, one, 8), 5); }) ==
        ErrorKind::OrderTooSmall);
  CHECK(kind_of([&] { p_power_leaf_check(lin, solve::expand_foliation_leaf(sq, one, 30), 5); }) ==
        ErrorKind::NotASolution);
  auto zero = parse::parse_nonlinear("0", 1);
  CHECK(kind_of([&] { p_power_leaf_check(zero, solve::expand_foliation_leaf(zero, {q(0), {q(1, 5)}}, 30), 5); }) ==
        ErrorKind::NotPIntegral);
  // algebraic leaves of a p-closed foliation at several primes
  for (std::uint64_t p : {3, 7}) CHECK(p_power_leaf_check(sq, solve::expand_foliation_leaf(sq, one, 40), p));
}
