#include "pclab/pcurv/pcurvature.hpp"

#include <algorithm>
#include <optional>

#include "pclab/arith/primes.hpp"
#include "pclab/parallel.hpp"

namespace pclab::pcurv {

PCurvatureResult linear_pcurvature(const ConnectionSystem& sys, std::uint64_t p) {
  if (!sys.is_square() || sys.rows() == 0) throw Error(ErrorKind::InvalidArgument, "connection matrix must be square");
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  const Matrix<FpRatFun> a = sys.map([p](const QRatFun& f) { return reduce_mod_p(f, p); });
  Matrix<FpRatFun> ak = a;
  for (std::uint64_t k = 1; k < p; ++k) ak = ak.map([](const FpRatFun& f) { return f.derivative(); }) + ak * a;
  PCurvatureResult r;
  r.p = p;
  r.vanishes = ak.is_zero();
  if (r.vanishes) r.nilpotent = true;
  else {
    Matrix<FpRatFun> pw = ak;
    for (std::size_t i = 1; i < sys.rows(); ++i) pw = pw * ak;
    r.nilpotent = pw.is_zero();
  }
  r.Ap = std::move(ak);
  return r;
}

namespace {

SweepResult summarize(std::vector<std::optional<PCurvatureResult>>& slots, const std::vector<std::uint64_t>& primes) {
  SweepResult s;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (!slots[i]) {
      s.bad.push_back(primes[i]);
      continue;
    }
    auto& r = *slots[i];
    if (r.vanishes) ++s.vanishing;
    else if (r.nilpotent) ++s.nilpotent;
    else ++s.neither;
    s.results.push_back(std::move(r));
  }
  return s;
}

std::optional<PCurvatureResult> try_prime(const ConnectionSystem& sys, std::uint64_t p) {
  try {
    return linear_pcurvature(sys, p);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BadPrime) return std::nullopt;
    throw;
  }
}

std::vector<std::uint64_t> sorted_primes(std::vector<std::uint64_t> primes) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  return primes;
}

}  // namespace

SweepResult pcurvature_sweep_serial(const ConnectionSystem& sys, const std::vector<std::uint64_t>& primes) {
  auto ps = sorted_primes(primes);
  std::vector<std::optional<PCurvatureResult>> slots(ps.size());
  for (std::size_t i = 0; i < ps.size(); ++i) slots[i] = try_prime(sys, ps[i]);
  return summarize(slots, ps);
}

SweepResult pcurvature_sweep(const ConnectionSystem& sys, const std::vector<std::uint64_t>& primes) {
  auto ps = sorted_primes(primes);
  std::vector<std::optional<PCurvatureResult>> slots(ps.size());
  parallel_for(ps.size(), [&](std::size_t i) { slots[i] = try_prime(sys, ps[i]); });
  return summarize(slots, ps);
}

namespace {

// Iterated derivation v on fractions N / D^m with D the denominator of g.
template <CoefficientField F>
class Derivation {
 public:
  using P = Poly<F>;

  Derivation(std::size_t n, P g_num, P g_den, std::size_t budget) : n_(n), budget_(budget) {
    if (g_den.is_constant()) {
      g_ = g_num.scaled(g_num.field().one() / g_den.constant_term());
      d_ = P::constant(g_num.field(), g_num.vars(), g_num.field().one());
      const_den_ = true;
    } else {
      g_ = std::move(g_num);
      d_ = std::move(g_den);
    }
    if (!const_den_) ld_ = lift(d_);
  }

  // D * v(P) for a polynomial P, i.e. D (dP/dz + sum y_{i+1} dP/dy_i) + G dP/dy_{n-1}.
  P lift(const P& q) const {
    P acc = q.partial(0);
    for (std::size_t i = 0; i + 1 < n_; ++i) acc += P::variable(q.field(), q.vars(), i + 2) * q.partial(i + 1);
    if (!const_den_) acc = d_ * acc;
    acc += g_ * q.partial(n_);
    return acc;
  }

  struct Value {
    P num;
    unsigned m = 0;
  };

  Value first(std::size_t i) const {
    if (i + 1 < n_) return {P::variable(g_.field(), g_.vars(), i + 2), 0};
    return {g_, const_den_ ? 0u : 1u};
  }

  // v(N / D^m) = (L(N) D - m N L(D)) / D^{m+2}
  Value step(const Value& x) const {
    if (const_den_) return {guard(lift(x.num)), 0};
    P out = lift(x.num) * d_;
    if (x.m > 0) out -= x.num.scaled(x.num.field().from_int(static_cast<long>(x.m))) * ld_;
    return {guard(std::move(out)), x.m + 2};
  }

  PolyFraction<F> fraction(const Value& x) const {
    return {x.num, d_.pow(x.m)};
  }

  const P& den() const { return d_; }

 private:
  P guard(P q) const {
    if (q.term_count() > budget_)
      throw Error(ErrorKind::DegreeBudgetExceeded,
                  "intermediate numerator has " + std::to_string(q.term_count()) + " terms");
    return q;
  }

  std::size_t n_;
  std::size_t budget_;
  P g_, d_, ld_;
  bool const_den_ = false;
};

template <CoefficientField F>
std::vector<PolyFraction<F>> powers(const Derivation<F>& v, std::size_t n, std::size_t k) {
  std::vector<PolyFraction<F>> out;
  for (std::size_t i = 0; i < n; ++i) {
    if (k == 0) {
      const auto& d = v.den();
      out.push_back(PolyFraction<F>::of(Poly<F>::variable(d.field(), d.vars(), i + 1)));
      continue;
    }
    auto x = v.first(i);
    for (std::size_t j = 1; j < k; ++j) x = v.step(x);
    out.push_back(v.fraction(x));
  }
  return out;
}

void check_field(const solve::FoliationField& field) {
  if (field.n == 0) throw Error(ErrorKind::InvalidArgument, "ODE order must be at least 1");
  if (field.g.num.nvars() != field.n + 1)
    throw Error(ErrorKind::VariableMismatch, "g must be over (z, y0, .., y{n-1})");
}

}  // namespace

std::vector<PolyFraction<PrimeField>> foliation_pcurvature(const solve::FoliationField& field, std::uint64_t p,
                                                           std::size_t term_budget) {
  check_field(field);
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  auto g = reduce_mod_p(field.g, p);
  Derivation<PrimeField> v(field.n, g.num, g.den, term_budget);
  return powers(v, field.n, p);
}

std::vector<PolyFraction<RationalField>> foliation_power(const solve::FoliationField& field, std::size_t k,
                                                         std::size_t term_budget) {
  check_field(field);
  Derivation<RationalField> v(field.n, field.g.num, field.g.den, term_budget);
  return powers(v, field.n, k);
}

bool p_power_leaf_check(const solve::FoliationField& field, const QSeries& leaf, std::uint64_t p,
                        std::size_t term_budget) {
  check_field(field);
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  const std::size_t n = field.n;
  const std::size_t t = leaf.order();
  if (t < 2 * p) throw Error(ErrorKind::OrderTooSmall, "leaf order must be at least 2p");
  if (t <= n) throw Error(ErrorKind::OrderTooSmall, "leaf order must exceed the ODE order");
  for (std::size_t i = 0; i < n; ++i)
    if (!padic_valuation(leaf[i], p).is_integral())
      throw Error(ErrorKind::NotPIntegral, "initial data is not " + std::to_string(p) + "-integral");

  const RationalField q;
  // z, f, f', .., f^{(n)} as series at 0
  std::vector<QSeries> args{QSeries::from_poly(QPoly::x(q), t)};
  QSeries d = leaf;
  for (std::size_t i = 0; i < n; ++i) {
    args.push_back(d);
    d = d.derivative();
  }
  const QSeries fn = d;  // order t - n

  const auto& gd = field.g.den;
  std::vector<Rat> base{Rat()};
  for (std::size_t i = 0; i < n; ++i) base.push_back(args[i + 1][0]);
  const Rat d0 = gd.eval(base);
  if (d0.is_zero()) throw Error(ErrorKind::PoleOnLeaf, "denominator of g vanishes at the leaf's base point");
  {
    PolyFraction<PrimeField> reduced;
    try {
      reduced = reduce_mod_p(field.g, p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BadPrime) throw;
      throw Error(ErrorKind::NotPIntegral, e.what());
    }
    std::vector<Fp> pt;
    for (const auto& x : base) pt.push_back(reduce_rat(x, p));
    if (reduced.den.eval(pt).is_zero())
      throw Error(ErrorKind::NotPIntegral,
                  "denominator of g vanishes mod " + std::to_string(p) + " at the base point");
  }

  QSeries gn = eval_at_series(field.g.num, args, t);
  QSeries gdv = eval_at_series(gd, args, t);
  QSeries residual = fn * gdv - gn;
  if (!residual.is_zero()) throw Error(ErrorKind::NotASolution, "leaf does not satisfy the ODE to order T - n");

  const std::size_t limit = t - p;
  for (const auto& frac : foliation_power(field, p, term_budget)) {
    QSeries num = eval_at_series(frac.num, args, t);
    QSeries den = eval_at_series(frac.den, args, t);
    QSeries comp = num * den.inverse();
    for (std::size_t k = 0; k < limit && k < comp.order(); ++k) {
      auto v = padic_valuation(comp[k], p);
      if (!v.is_infinite() && v.value() < 1) return false;
    }
  }
  return true;
}

}  // namespace pclab::pcurv
