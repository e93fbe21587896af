// Shared test helpers: random corpora and independent oracles.
#pragma once

#include <random>
#include <vector>

#include "pclab/arith/matrix.hpp"
#include "pclab/arith/mseries.hpp"
#include "pclab/arith/primes.hpp"
#include "pclab/arith/ratfun.hpp"
#include "pclab/arith/series.hpp"
#include "pclab/solve/series_solver.hpp"

namespace testing {

using namespace pclab;

inline const RationalField QQ{};

inline Rat rand_rat(std::mt19937& rng, int num_range = 5, int den_range = 4) {
  std::uniform_int_distribution<int> n(-num_range, num_range), d(1, den_range);
  return Rat(Int(n(rng)), Int(d(rng)));
}

inline QPoly rand_qpoly(std::mt19937& rng, int max_deg, int num_range = 5, int den_range = 3) {
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::vector<Rat> c;
  int d = deg(rng);
  for (int i = 0; i <= d; ++i) c.push_back(rand_rat(rng, num_range, den_range));
  return QPoly(QQ, c);
}

// Naive v_p by repeated division; INT_MAX for zero.
inline long naive_valuation(const Rat& q, std::uint64_t p) {
  if (q.is_zero()) return std::numeric_limits<long>::max();
  long v = 0;
  Int n = q.num(), d = q.den();
  while (n % static_cast<unsigned long>(p) == 0) {
    n /= static_cast<unsigned long>(p);
    ++v;
  }
  while (d % static_cast<unsigned long>(p) == 0) {
    d /= static_cast<unsigned long>(p);
    --v;
  }
  return v;
}

// Naive g_emp: scan with the naive valuation.
inline long naive_gemp(const std::vector<Rat>& a, std::uint64_t p) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (naive_valuation(a[i], p) < 0) return static_cast<long>(i) - 1;
  return static_cast<long>(a.size()) - 1;
}

inline std::vector<Rat> exp_coeffs(std::size_t m, unsigned stride = 1) {
  std::vector<Rat> c(m);
  for (std::size_t n = 0; n * stride < m; ++n) c[n * stride] = Rat(Int(1), factorial(n));
  return c;
}

// Matrix of multivariate series helpers.
using SM = Matrix<QMSeries>;

inline SM series_identity(std::size_t r, const std::vector<std::string>& vars, std::size_t order) {
  QMSeries z(QQ, vars, order), o = QMSeries::constant(QQ, vars, order, Rat(1));
  return SM::identity(r, z, o);
}

// Inverse of a matrix series whose constant part is invertible (r <= 2 for the constant inverse).
inline SM series_inverse(const SM& g) {
  const auto& vars = g(0, 0).vars();
  const std::size_t order = g(0, 0).order(), r = g.rows();
  if (r > 2) throw std::runtime_error("series_inverse supports rank <= 2");
  Matrix<Rat> g0(r, r, Rat());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) g0(i, j) = g(i, j).coeff(Monomial(vars.size(), 0));
  Matrix<Rat> inv0(r, r, Rat());
  if (r == 1) inv0(0, 0) = g0(0, 0).inverse();
  else {
    Rat det = g0(0, 0) * g0(1, 1) - g0(0, 1) * g0(1, 0);
    inv0(0, 0) = g0(1, 1) / det;
    inv0(1, 1) = g0(0, 0) / det;
    inv0(0, 1) = -g0(0, 1) / det;
    inv0(1, 0) = -g0(1, 0) / det;
  }
  SM c0 = inv0.map([&](const Rat& x) { return QMSeries::constant(QQ, vars, order, x); });
  // g^{-1} = sum_k (-c0 h)^k c0 with h = g - g0
  SM h = g - g0.map([&](const Rat& x) { return QMSeries::constant(QQ, vars, order, x); });
  SM step = -(c0 * h);
  SM term = series_identity(r, vars, order), acc = series_identity(r, vars, order);
  for (std::size_t k = 1; k < order; ++k) {
    term = term * step;
    acc += term;
  }
  return acc * c0;
}

// Flat connection B_j = -(d_j G) G^{-1} from a random polynomial gauge G with
// G(0) invertible; the flat sections are G c for constant vectors c.
struct GaugeSample {
  SM gauge;
  std::vector<SM> ops;
};

inline GaugeSample random_gauge(std::mt19937& rng, std::size_t r, std::size_t nvars, std::size_t order) {
  std::vector<std::string> vars;
  for (std::size_t i = 0; i < nvars; ++i) vars.push_back("t" + std::to_string(i + 1));
  std::uniform_int_distribution<int> coef(-3, 3), deg(0, 2);
  for (;;) {
    SM g(r, r, QMSeries(QQ, vars, order));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) {
        QMSeries e = QMSeries::constant(QQ, vars, order, Rat(coef(rng)) + (i == j ? Rat(4) : Rat()));
        for (int t = 0; t < 3; ++t) {
          Monomial m(nvars, 0);
          for (auto& x : m) x = static_cast<std::uint32_t>(deg(rng));
          e.add_term(m, rand_rat(rng, 3, 2));
        }
        g(i, j) = e;
      }
    Matrix<Rat> g0 = g.map([&](const QMSeries& s) { return s.coeff(Monomial(nvars, 0)); });
    Rat det = r == 1 ? g0(0, 0) : g0(0, 0) * g0(1, 1) - g0(0, 1) * g0(1, 0);
    if (det.is_zero()) continue;
    SM inv = series_inverse(g);
    GaugeSample s{g, {}};
    for (std::size_t j = 0; j < nvars; ++j) {
      SM dg = g.map([j](const QMSeries& e) { return e.derivative(j); });
      SM b = -(dg * inv);
      // keep every entry at the full order; the derivative loses one degree
      s.ops.push_back(b.map([&](const QMSeries& e) {
        QMSeries full(QQ, vars, order - 1);
        e.for_each([&](const Monomial& m, const Rat& c) { full.add_term(m, c); });
        return full;
      }));
    }
    return s;
  }
}

// Falling factorial c (c-1) ... (c-k+1).
inline Rat falling(const Rat& c, std::uint64_t k) {
  Rat r(1);
  for (std::uint64_t i = 0; i < k; ++i) r *= c - Rat(static_cast<long>(i));
  return r;
}

}  // namespace testing
