#pragma once

#include <string>

#include "pclab/arith/upoly.hpp"

namespace pclab {

// Univariate rational function num/den kept reduced with a monic denominator,
// so structural equality is equality of functions.
template <CoefficientField F>
class RatFun {
 public:
  using Elem = typename F::Elem;
  using Poly = UPoly<F>;

  RatFun() = default;
  explicit RatFun(F field) : num_(field), den_(Poly::constant(field, field.one())) {}
  explicit RatFun(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), num_.field().one())) {}
  RatFun(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFun constant(F field, Elem c) { return RatFun(Poly::constant(field, std::move(c))); }

  const F& field() const { return num_.field(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  RatFun operator-() const { return RatFun(-num_, den_, Reduced{}); }

  friend RatFun operator+(const RatFun& a, const RatFun& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
    return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
  friend RatFun operator*(const RatFun& a, const RatFun& b) {
    if (a.is_zero() || b.is_zero()) return RatFun(a.field());
    // cross-cancel before multiplying to keep the gcd small
    Poly g1 = gcd(a.num_, b.den_), g2 = gcd(b.num_, a.den_);
    Poly an = a.num_.divmod(g1).first, bd = b.den_.divmod(g1).first;
    Poly bn = b.num_.divmod(g2).first, ad = a.den_.divmod(g2).first;
    return RatFun(an * bn, ad * bd, Reduced{});
  }
  friend RatFun operator/(const RatFun& a, const RatFun& b) {
    if (b.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function division by zero");
    return a * RatFun(b.den_, b.num_);
  }
  RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
  RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
  RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

  friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  RatFun derivative() const {
    if (is_polynomial()) return RatFun(num_.derivative().scaled(field().one() / den_.lead()));
    return RatFun(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  // Throws DivisionByZero at a pole.
  Elem eval(const Elem& x) const {
    Elem d = den_.eval(x);
    if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "evaluation at a pole");
    return num_.eval(x) / d;
  }

  std::string str(const std::string& var = "z") const {
    if (is_polynomial()) return num_.str(var);
    return "(" + num_.str(var) + ")/(" + den_.str(var) + ")";
  }

 private:
  struct Reduced {};
  RatFun(Poly num, Poly den, Reduced) : num_(std::move(num)), den_(std::move(den)) { make_monic(); }

  void normalize() {
    if (den_.is_zero()) throw Error(ErrorKind::DivisionByZero, "rational function with zero denominator");
    if (num_.is_zero()) {
      den_ = Poly::constant(num_.field(), num_.field().one());
      return;
    }
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.divmod(g).first;
      den_ = den_.divmod(g).first;
    }
    make_monic();
  }

  void make_monic() {
    if (num_.is_zero()) {
      den_ = Poly::constant(num_.field(), num_.field().one());
      return;
    }
    Elem inv = num_.field().one() / den_.lead();
    num_ = num_.scaled(inv);
    den_ = den_.scaled(inv);
  }

  Poly num_;
  Poly den_;
};

using QPoly = UPoly<RationalField>;
using FpPoly = UPoly<PrimeField>;
using QRatFun = RatFun<RationalField>;
using FpRatFun = RatFun<PrimeField>;

// Reduction of a rational function over Q modulo p. Writes f = N/D with N, D in
// Z[z] jointly primitive; BadPrime if D vanishes mod p.
FpRatFun reduce_mod_p(const QRatFun& f, std::uint64_t p);

// Clears denominators of a list of rationals: returns L with L*q_i integral, L > 0 minimal.
Int common_denominator(const std::vector<Rat>& qs);

}  // namespace pclab
