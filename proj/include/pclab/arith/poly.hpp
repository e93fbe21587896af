#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pclab/arith/field.hpp"
#include "pclab/arith/upoly.hpp"

namespace pclab {

using Monomial = std::vector<std::uint32_t>;

inline unsigned total_degree(const Monomial& m) {
  unsigned d = 0;
  for (auto e : m) d += e;
  return d;
}

// Sparse multivariate polynomial over named variables. Terms are kept in a
// lexicographically ordered map and zero coefficients are never stored.
template <CoefficientField F>
class Poly {
 public:
  using Elem = typename F::Elem;
  using Terms = std::map<Monomial, Elem>;

  Poly() = default;
  Poly(F field, std::vector<std::string> vars) : field_(std::move(field)), vars_(std::move(vars)) {}

  static Poly constant(F field, std::vector<std::string> vars, const Elem& c) {
    Poly p(std::move(field), std::move(vars));
    p.add_term(Monomial(p.vars_.size(), 0), c);
    return p;
  }
  static Poly variable(F field, std::vector<std::string> vars, std::size_t index) {
    Poly p(field, std::move(vars));
    Monomial m(p.vars_.size(), 0);
    m.at(index) = 1;
    p.add_term(m, field.one());
    return p;
  }

  const F& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }
  Elem constant_term() const {
    auto it = terms_.find(Monomial(vars_.size(), 0));
    return it == terms_.end() ? field_.zero() : it->second;
  }
  Elem coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? field_.zero() : it->second;
  }

  long total_degree_max() const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max<long>(d, total_degree(m));
    return d;
  }
  long degree_in(std::size_t var) const {
    long d = -1;
    for (const auto& [m, c] : terms_) d = std::max<long>(d, m[var]);
    return d;
  }

  void add_term(const Monomial& m, const Elem& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  Poly& operator+=(const Poly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    check(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check(b);
    Poly r(a.field_, a.vars_);
    Monomial m(a.vars_.size());
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly scaled(const Elem& s) const {
    if (s.is_zero()) return Poly(field_, vars_);
    Poly r = *this;
    for (auto& [m, c] : r.terms_) c *= s;
    return r;
  }

  Poly pow(unsigned e) const {
    Poly r = constant(field_, vars_, field_.one()), b = *this;
    while (e) {
      if (e & 1) r *= b;
      e >>= 1;
      if (e) b *= b;
    }
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) { return a.vars_ == b.vars_ && a.terms_ == b.terms_; }

  Poly partial(std::size_t var) const {
    Poly r(field_, vars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial d = m;
      d[var] -= 1;
      r.add_term(d, c * field_.from_int(static_cast<long>(m[var])));
    }
    return r;
  }

  Elem eval(const std::vector<Elem>& point) const {
    Elem acc = field_.zero();
    for (const auto& [m, c] : terms_) {
      Elem t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::uint32_t k = 0; k < m[i]; ++k) t *= point[i];
      acc += t;
    }
    return acc;
  }

  // Substitutes var -> var + a.
  Poly shifted(std::size_t var, const Elem& a) const {
    if (a.is_zero()) return *this;
    Poly r(field_, vars_);
    for (const auto& [m, c] : terms_) {
      const std::uint32_t e = m[var];
      Elem apow = field_.one();
      std::vector<Elem> powers;
      powers.reserve(e + 1);
      for (std::uint32_t k = 0; k <= e; ++k) {
        powers.push_back(apow);
        apow *= a;
      }
      // Pascal row by additions only, valid in any characteristic
      std::vector<Elem> binom(e + 1, field_.zero());
      binom[0] = field_.one();
      for (std::uint32_t row = 1; row <= e; ++row)
        for (std::uint32_t k = row; k > 0; --k) binom[k] += binom[k - 1];
      for (std::uint32_t k = 0; k <= e; ++k) {
        Monomial mk = m;
        mk[var] = k;
        r.add_term(mk, c * binom[k] * powers[e - k]);
      }
    }
    return r;
  }

  // Coefficients as a polynomial in `var` (other variables must be absent).
  UPoly<F> to_univariate(std::size_t var) const {
    std::vector<Elem> c(static_cast<std::size_t>(std::max<long>(degree_in(var), -1) + 1), field_.zero());
    for (const auto& [m, v] : terms_) {
      for (std::size_t i = 0; i < m.size(); ++i)
        if (i != var && m[i] != 0)
          throw Error(ErrorKind::VariableMismatch, "polynomial depends on " + vars_[i]);
      c[m[var]] += v;
    }
    return UPoly<F>(field_, std::move(c));
  }

  // Re-embeds into a larger (or permuted) variable list; every variable in use must survive.
  Poly with_vars(const std::vector<std::string>& vars) const {
    std::vector<std::size_t> map(vars_.size());
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(vars.begin(), vars.end(), vars_[i]);
      map[i] = it == vars.end() ? vars.size() : static_cast<std::size_t>(it - vars.begin());
    }
    Poly r(field_, vars);
    for (const auto& [m, c] : terms_) {
      Monomial n(vars.size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (map[i] == vars.size())
          throw Error(ErrorKind::VariableMismatch, "variable " + vars_[i] + " dropped");
        n[map[i]] = m[i];
      }
      r.add_term(n, c);
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      std::string cs = to_string(c);
      bool neg = cs[0] == '-';
      if (neg) cs.erase(0, 1);
      if (!out.empty()) out += neg ? " - " : " + ";
      else if (neg) out += "-";
      std::string mono;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += vars_[i];
        if (m[i] > 1) mono += "^" + std::to_string(m[i]);
      }
      if (mono.empty()) out += cs;
      else if (cs == "1") out += mono;
      else out += (cs.find('/') != std::string::npos ? "(" + cs + ")" : cs) + "*" + mono;
    }
    return out;
  }

 private:
  void check(const Poly& o) const {
    if (vars_ != o.vars_) throw Error(ErrorKind::VariableMismatch, "polynomials over different variables");
  }

  F field_{};
  std::vector<std::string> vars_;
  Terms terms_;
};

using QMPoly = Poly<RationalField>;
using FpMPoly = Poly<PrimeField>;

// A fraction of multivariate polynomials, reduced lazily: no gcd is taken, the
// denominator is scaled so its leading (lex-largest) coefficient is 1 and a
// constant denominator is folded into the numerator.
template <CoefficientField F>
struct PolyFraction {
  Poly<F> num;
  Poly<F> den;

  static PolyFraction of(Poly<F> p) {
    Poly<F> one = Poly<F>::constant(p.field(), p.vars(), p.field().one());
    return {std::move(p), std::move(one)};
  }

  void normalize() {
    if (den.is_zero()) throw Error(ErrorKind::DivisionByZero, "zero denominator");
    if (num.is_zero()) {
      den = Poly<F>::constant(num.field(), num.vars(), num.field().one());
      return;
    }
    auto inv = num.field().one() / den.terms().rbegin()->second;
    num = num.scaled(inv);
    den = den.scaled(inv);
  }

  bool has_constant_den() const { return den.is_constant(); }
};

// Reduction mod p after clearing to a jointly primitive integral form.
PolyFraction<PrimeField> reduce_mod_p(const PolyFraction<RationalField>& f, std::uint64_t p);

// Coefficientwise reduction of a p-integral polynomial; BadPrime otherwise.
FpMPoly reduce_mod_p(const QMPoly& f, std::uint64_t p);

}  // namespace pclab
