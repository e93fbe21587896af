#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pclab/arith/field.hpp"

namespace pclab {

// Dense univariate polynomial over a coefficient field. The coefficient
// vector never has trailing zeros; the zero polynomial is empty.
template <CoefficientField F>
class UPoly {
 public:
  using Elem = typename F::Elem;

  UPoly() = default;
  explicit UPoly(F field) : field_(std::move(field)) {}
  UPoly(F field, std::vector<Elem> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) { trim(); }

  static UPoly constant(F field, Elem c) { return UPoly(std::move(field), {std::move(c)}); }
  static UPoly monomial(F field, Elem c, std::size_t deg) {
    std::vector<Elem> v(deg + 1, field.zero());
    v[deg] = std::move(c);
    return UPoly(std::move(field), std::move(v));
  }
  // The polynomial x.
  static UPoly x(F field) { return monomial(field, field.one(), 1); }

  const F& field() const { return field_; }
  const std::vector<Elem>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  // -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  Elem coeff(std::size_t i) const { return i < c_.size() ? c_[i] : field_.zero(); }
  const Elem& lead() const { return c_.back(); }
  bool is_constant() const { return c_.size() <= 1; }

  UPoly operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  UPoly& operator+=(const UPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), field_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
    trim();
    return *this;
  }
  UPoly& operator-=(const UPoly& o) {
    if (c_.size() < o.c_.size()) c_.resize(o.c_.size(), field_.zero());
    for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
    trim();
    return *this;
  }
  friend UPoly operator+(UPoly a, const UPoly& b) { return a += b; }
  friend UPoly operator-(UPoly a, const UPoly& b) { return a -= b; }
  friend UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return UPoly(a.field_);
    std::vector<Elem> r(a.c_.size() + b.c_.size() - 1, a.field_.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return UPoly(a.field_, std::move(r));
  }
  UPoly& operator*=(const UPoly& o) { return *this = *this * o; }

  UPoly scaled(const Elem& s) const {
    if (s.is_zero()) return UPoly(field_);
    UPoly r = *this;
    for (auto& v : r.c_) v *= s;
    return r;
  }

  friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }

  // Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "polynomial division by zero");
    UPoly r = *this;
    if (r.degree() < d.degree()) return {UPoly(field_), r};
    std::vector<Elem> q(static_cast<std::size_t>(r.degree() - d.degree() + 1), field_.zero());
    Elem inv = field_.one() / d.lead();
    while (!r.is_zero() && r.degree() >= d.degree()) {
      std::size_t shift = static_cast<std::size_t>(r.degree() - d.degree());
      Elem f = r.lead() * inv;
      q[shift] = f;
      for (std::size_t i = 0; i < d.c_.size(); ++i) r.c_[i + shift] -= f * d.c_[i];
      r.trim();
    }
    return {UPoly(field_, std::move(q)), r};
  }

  UPoly monic() const {
    if (is_zero()) return *this;
    return scaled(field_.one() / lead());
  }

  UPoly derivative() const {
    if (c_.size() <= 1) return UPoly(field_);
    std::vector<Elem> r(c_.size() - 1, field_.zero());
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * field_.from_int(static_cast<long>(i));
    return UPoly(field_, std::move(r));
  }

  Elem eval(const Elem& x) const {
    Elem acc = field_.zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + c_[i];
    return acc;
  }

  // p(x + a), by repeated synthetic division.
  UPoly shifted(const Elem& a) const {
    std::vector<Elem> v = c_;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) v[j - 1] += a * v[j];
    return UPoly(field_, std::move(v));
  }

  // p(q(x))
  UPoly compose(const UPoly& q) const {
    UPoly acc(field_);
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * q + constant(field_, c_[i]);
    return acc;
  }

  UPoly pow(unsigned e) const {
    UPoly r = constant(field_, field_.one()), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  std::string str(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string out;
    for (std::size_t i = c_.size(); i-- > 0;) {
      if (c_[i].is_zero()) continue;
      std::string cs = to_string(c_[i]);
      if (!out.empty()) out += cs[0] == '-' ? " - " : " + ";
      else if (cs[0] == '-') out += "-";
      if (cs[0] == '-') cs.erase(0, 1);
      bool unit = cs == "1";
      if (i == 0) out += cs;
      else {
        if (!unit) out += (cs.find('/') != std::string::npos ? "(" + cs + ")" : cs) + "*";
        out += var;
        if (i > 1) out += "^" + std::to_string(i);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  F field_{};
  std::vector<Elem> c_;
};

// Monic gcd (zero if both are zero).
template <CoefficientField F>
UPoly<F> gcd(UPoly<F> a, UPoly<F> b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

}  // namespace pclab
