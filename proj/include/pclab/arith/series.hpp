#pragma once

#include <algorithm>
#include <string>
#include <type_traits>
#include <vector>

#include "pclab/arith/poly.hpp"
#include "pclab/arith/upoly.hpp"

namespace pclab {

namespace detail {

// Truncated product of two rational coefficient vectors. Denominators are
// cleared first so the O(n^2) inner loop runs on integers.
std::vector<Rat> rat_convolution(const std::vector<Rat>& a, const std::vector<Rat>& b, std::size_t order);

}  // namespace detail

// Univariate power series truncated at `order` (exclusive): coefficients of
// z^0 .. z^{order-1} are exact, everything above is unknown.
template <CoefficientField F>
class Series {
 public:
  using Elem = typename F::Elem;

  Series() = default;
  Series(F field, std::size_t order, std::string var = "z")
      : field_(std::move(field)), var_(std::move(var)), c_(order, field_.zero()) {}
  Series(F field, std::vector<Elem> coeffs, std::string var = "z")
      : field_(std::move(field)), var_(std::move(var)), c_(std::move(coeffs)) {}

  static Series from_poly(const UPoly<F>& p, std::size_t order, std::string var = "z") {
    Series s(p.field(), order, std::move(var));
    for (std::size_t i = 0; i < order && i < p.coeffs().size(); ++i) s.c_[i] = p.coeffs()[i];
    return s;
  }
  static Series constant(F field, const Elem& v, std::size_t order, std::string var = "z") {
    Series s(field, order, std::move(var));
    if (order > 0) s.c_[0] = v;
    return s;
  }

  const F& field() const { return field_; }
  const std::string& var() const { return var_; }
  std::size_t order() const { return c_.size(); }
  const std::vector<Elem>& coeffs() const { return c_; }
  const Elem& operator[](std::size_t i) const { return c_[i]; }
  Elem& operator[](std::size_t i) { return c_[i]; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }

  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const Elem& e) { return e.is_zero(); });
  }

  Series truncated(std::size_t order) const {
    Series s = *this;
    s.c_.resize(std::min(order, c_.size()), field_.zero());
    return s;
  }

  Series operator-() const {
    Series r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Series operator+(const Series& a, const Series& b) {
    a.check(b);
    Series r = a.truncated(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i < r.order(); ++i) r.c_[i] += b.c_[i];
    return r;
  }
  friend Series operator-(const Series& a, const Series& b) {
    a.check(b);
    Series r = a.truncated(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i < r.order(); ++i) r.c_[i] -= b.c_[i];
    return r;
  }
  friend Series operator*(const Series& a, const Series& b) {
    a.check(b);
    const std::size_t n = std::min(a.order(), b.order());
    if constexpr (std::is_same_v<Elem, Rat>) {
      return Series(a.field_, detail::rat_convolution(a.c_, b.c_, n), a.var_);
    } else {
      Series r(a.field_, n, a.var_);
      for (std::size_t i = 0; i < n; ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; i + j < n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
      }
      return r;
    }
  }
  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator-=(const Series& o) { return *this = *this - o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

  Series scaled(const Elem& s) const {
    Series r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }

  friend bool operator==(const Series& a, const Series& b) { return a.var_ == b.var_ && a.c_ == b.c_; }

  // Formal derivative; the result is exact to order - 1.
  Series derivative() const {
    if (c_.empty()) return *this;
    Series r(field_, c_.size() - 1, var_);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * field_.from_int(static_cast<long>(i));
    return r;
  }

  // Multiplicative inverse by Newton iteration; the constant term must be a unit.
  Series inverse() const {
    if (c_.empty()) return *this;
    if (c_[0].is_zero()) throw Error(ErrorKind::DivisionByZero, "series with zero constant term is not invertible");
    Series b = constant(field_, field_.one() / c_[0], 1, var_);
    std::size_t prec = 1;
    while (prec < c_.size()) {
      prec = std::min(2 * prec, c_.size());
      Series bb = b.extended(prec);
      Series ab = truncated(prec) * bb;
      // b <- b (2 - a b)
      Series two_minus = -ab;
      two_minus.c_[0] += field_.from_int(2);
      b = bb * two_minus;
    }
    return b;
  }

  // Pads with zeros up to `order`.
  Series extended(std::size_t order) const {
    Series s = *this;
    if (order > s.c_.size()) s.c_.resize(order, field_.zero());
    return s;
  }

  // Shift down by k (divide by z^k, dropping lower terms).
  Series shifted_down(std::size_t k) const {
    Series r(field_, c_.size() > k ? c_.size() - k : 0, var_);
    for (std::size_t i = k; i < c_.size(); ++i) r.c_[i - k] = c_[i];
    return r;
  }

  // Least index with nonzero coefficient, or order() if all vanish.
  std::size_t valuation() const {
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero()) return i;
    return c_.size();
  }

  std::string str() const {
    std::string out;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      if (!out.empty()) out += " + ";
      out += "(" + to_string(c_[i]) + ")";
      if (i > 0) out += "*" + var_ + (i > 1 ? "^" + std::to_string(i) : "");
    }
    if (out.empty()) out = "0";
    return out + " + O(" + var_ + "^" + std::to_string(c_.size()) + ")";
  }

 private:
  void check(const Series& o) const {
    if (var_ != o.var_) throw Error(ErrorKind::VariableMismatch, "series in " + var_ + " and " + o.var_);
  }

  F field_{};
  std::string var_ = "z";
  std::vector<Elem> c_;
};

using QSeries = Series<RationalField>;

// Evaluates a univariate polynomial at a series (Horner).
template <CoefficientField F>
Series<F> eval_at_series(const UPoly<F>& p, const Series<F>& s) {
  Series<F> acc(s.field(), s.order(), s.var());
  for (std::size_t i = p.coeffs().size(); i-- > 0;) {
    acc = acc * s;
    if (acc.order() > 0) acc[0] += p.coeffs()[i];
  }
  return acc;
}

// Evaluates a multivariate polynomial at a tuple of series (all in one variable).
template <CoefficientField F>
Series<F> eval_at_series(const Poly<F>& p, const std::vector<Series<F>>& args, std::size_t order) {
  const auto& field = p.field();
  std::string var = args.empty() ? "z" : args.front().var();
  for (std::size_t i = 0; i < args.size(); ++i)
    if (p.degree_in(i) > 0) order = std::min(order, args[i].order());
  std::vector<std::vector<Series<F>>> powers(args.size());
  for (std::size_t i = 0; i < args.size(); ++i) {
    long d = p.degree_in(i);
    powers[i].push_back(Series<F>::constant(field, field.one(), order, var));
    for (long k = 1; k <= d; ++k) powers[i].push_back((powers[i].back() * args[i]).truncated(order));
  }
  Series<F> acc(field, order, var);
  for (const auto& [m, c] : p.terms()) {
    Series<F> t = Series<F>::constant(field, c, order, var);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i] > 0) t = t * powers[i][m[i]];
    acc = acc + t;
  }
  return acc;
}

}  // namespace pclab
