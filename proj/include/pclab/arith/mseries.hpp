#pragma once

#include <map>
#include <string>
#include <vector>

#include "pclab/arith/poly.hpp"

namespace pclab {

// Multivariate power series truncated by total degree: every stored monomial
// has total degree < order. Storage is graded (one sparse map per degree) so
// single homogeneous parts of products are cheap to form.
template <CoefficientField F>
class MSeries {
 public:
  using Elem = typename F::Elem;
  using Part = std::map<Monomial, Elem>;

  MSeries() = default;
  MSeries(F field, std::vector<std::string> vars, std::size_t order)
      : field_(std::move(field)), vars_(std::move(vars)), parts_(order) {}

  static MSeries constant(F field, std::vector<std::string> vars, std::size_t order, const Elem& c) {
    MSeries s(std::move(field), std::move(vars), order);
    s.add_term(Monomial(s.vars_.size(), 0), c);
    return s;
  }
  static MSeries variable(F field, std::vector<std::string> vars, std::size_t order, std::size_t index) {
    MSeries s(field, std::move(vars), order);
    Monomial m(s.vars_.size(), 0);
    m.at(index) = 1;
    s.add_term(m, field.one());
    return s;
  }
  static MSeries from_poly(const Poly<F>& p, std::size_t order) {
    MSeries s(p.field(), p.vars(), order);
    for (const auto& [m, c] : p.terms()) s.add_term(m, c);
    return s;
  }

  const F& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::size_t order() const { return parts_.size(); }
  const Part& part(std::size_t degree) const { return parts_.at(degree); }
  Part& part(std::size_t degree) { return parts_.at(degree); }

  // Silently drops terms at or above the truncation order.
  void add_term(const Monomial& m, const Elem& c) {
    if (c.is_zero()) return;
    std::size_t d = total_degree(m);
    if (d >= parts_.size()) return;
    auto [it, inserted] = parts_[d].try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) parts_[d].erase(it);
    }
  }

  Elem coeff(const Monomial& m) const {
    std::size_t d = total_degree(m);
    if (d >= parts_.size()) return field_.zero();
    auto it = parts_[d].find(m);
    return it == parts_[d].end() ? field_.zero() : it->second;
  }

  bool is_zero() const {
    for (const auto& p : parts_)
      if (!p.empty()) return false;
    return true;
  }
  std::size_t term_count() const {
    std::size_t n = 0;
    for (const auto& p : parts_) n += p.size();
    return n;
  }

  // Lowest degree with a nonzero part, or order() if zero.
  std::size_t lowest_degree() const {
    for (std::size_t d = 0; d < parts_.size(); ++d)
      if (!parts_[d].empty()) return d;
    return parts_.size();
  }

  MSeries truncated(std::size_t order) const {
    MSeries s = *this;
    if (order < s.parts_.size()) s.parts_.resize(order);
    return s;
  }

  MSeries operator-() const {
    MSeries r = *this;
    for (auto& p : r.parts_)
      for (auto& [m, c] : p) c = -c;
    return r;
  }
  friend MSeries operator+(const MSeries& a, const MSeries& b) {
    a.check(b);
    MSeries r = a.truncated(std::min(a.order(), b.order()));
    for (std::size_t d = 0; d < r.order(); ++d)
      for (const auto& [m, c] : b.parts_[d]) r.add_term(m, c);
    return r;
  }
  friend MSeries operator-(const MSeries& a, const MSeries& b) { return a + (-b); }
  friend MSeries operator*(const MSeries& a, const MSeries& b) {
    a.check(b);
    const std::size_t n = std::min(a.order(), b.order());
    MSeries r(a.field_, a.vars_, n);
    for (std::size_t d = 0; d < n; ++d) r.parts_[d] = product_part(a, b, d);
    return r;
  }
  MSeries& operator+=(const MSeries& o) { return *this = *this + o; }
  MSeries& operator-=(const MSeries& o) { return *this = *this - o; }
  MSeries& operator*=(const MSeries& o) { return *this = *this * o; }

  // Homogeneous degree-d part of a*b, using only parts of degree <= d.
  static Part product_part(const MSeries& a, const MSeries& b, std::size_t d) {
    MSeries acc(a.field_, a.vars_, d + 1);
    Monomial m(a.vars_.size());
    for (std::size_t i = 0; i <= d; ++i) {
      if (i >= a.order() || d - i >= b.order()) continue;
      for (const auto& [ma, ca] : a.parts_[i])
        for (const auto& [mb, cb] : b.parts_[d - i]) {
          for (std::size_t k = 0; k < m.size(); ++k) m[k] = ma[k] + mb[k];
          acc.add_term(m, ca * cb);
        }
    }
    return std::move(acc.parts_[d]);
  }

  MSeries scaled(const Elem& s) const {
    if (s.is_zero()) return MSeries(field_, vars_, order());
    MSeries r = *this;
    for (auto& p : r.parts_)
      for (auto& [m, c] : p) c *= s;
    return r;
  }

  // Formal partial derivative; exact to order - 1.
  MSeries derivative(std::size_t var) const {
    MSeries r(field_, vars_, order() > 0 ? order() - 1 : 0);
    for (std::size_t d = 1; d < parts_.size(); ++d)
      for (const auto& [m, c] : parts_[d]) {
        if (m[var] == 0) continue;
        Monomial n = m;
        n[var] -= 1;
        r.add_term(n, c * field_.from_int(static_cast<long>(m[var])));
      }
    return r;
  }
  MSeries derivative(const std::string& var) const {
    auto it = std::find(vars_.begin(), vars_.end(), var);
    if (it == vars_.end()) throw Error(ErrorKind::VariableMismatch, "no variable " + var);
    return derivative(static_cast<std::size_t>(it - vars_.begin()));
  }

  friend bool operator==(const MSeries& a, const MSeries& b) {
    return a.vars_ == b.vars_ && a.parts_ == b.parts_;
  }

  // Calls f(monomial, coefficient) for every stored term, by ascending degree.
  template <class Fn>
  void for_each(Fn&& f) const {
    for (const auto& p : parts_)
      for (const auto& [m, c] : p) f(m, c);
  }

 private:
  void check(const MSeries& o) const {
    if (vars_ != o.vars_) throw Error(ErrorKind::VariableMismatch, "series over different variables");
  }

  F field_{};
  std::vector<std::string> vars_;
  std::vector<Part> parts_;
};

using QMSeries = MSeries<RationalField>;

}  // namespace pclab
