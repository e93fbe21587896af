#pragma once

#include <cstdint>
#include <string>

#include "pclab/arith/rat.hpp"
#include "pclab/error.hpp"

namespace pclab {

// Element of the prime field F_p. The modulus travels with the value.
class Fp {
 public:
  Fp() = default;
  Fp(std::uint64_t residue, std::uint64_t modulus) : v_(residue % modulus), p_(modulus) {}
  static Fp from_signed(long long v, std::uint64_t modulus) {
    long long m = static_cast<long long>(modulus);
    long long r = v % m;
    if (r < 0) r += m;
    return Fp(static_cast<std::uint64_t>(r), modulus);
  }

  std::uint64_t residue() const { return v_; }
  std::uint64_t modulus() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp operator-() const { return Fp(v_ == 0 ? 0 : p_ - v_, p_); }
  Fp& operator+=(const Fp& o) {
    v_ += o.v_;
    if (v_ >= p_) v_ -= p_;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    v_ = v_ >= o.v_ ? v_ - o.v_ : v_ + p_ - o.v_;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    v_ = static_cast<std::uint64_t>(static_cast<unsigned __int128>(v_) * o.v_ % p_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inverse(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  friend bool operator==(const Fp& a, const Fp& b) { return a.v_ == b.v_ && a.p_ == b.p_; }

  Fp pow(std::uint64_t e) const {
    Fp r(1, p_), b = *this;
    while (e) {
      if (e & 1) r *= b;
      b *= b;
      e >>= 1;
    }
    return r;
  }

  Fp inverse() const {
    if (v_ == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero in F_" + std::to_string(p_));
    return pow(p_ - 2);
  }

  std::string str() const { return std::to_string(v_); }

 private:
  std::uint64_t v_ = 0;
  std::uint64_t p_ = 2;
};

// Coefficient domains. Containers hold one of these to manufacture constants.
struct RationalField {
  using Elem = Rat;
  Rat zero() const { return Rat(); }
  Rat one() const { return Rat(1); }
  Rat from_int(long v) const { return Rat(v); }
  std::string name() const { return "QQ"; }
  friend bool operator==(const RationalField&, const RationalField&) = default;
};

struct PrimeField {
  using Elem = Fp;
  std::uint64_t p = 2;
  Fp zero() const { return Fp(0, p); }
  Fp one() const { return Fp(1, p); }
  Fp from_int(long v) const { return Fp::from_signed(v, p); }
  std::string name() const { return "GF(" + std::to_string(p) + ")"; }
  friend bool operator==(const PrimeField&, const PrimeField&) = default;
};

inline std::string to_string(const Rat& q) { return q.str(); }
inline std::string to_string(const Fp& x) { return x.str(); }

// Reduction of a p-integral rational into F_p. Throws BadPrime otherwise.
Fp reduce_rat(const Rat& q, std::uint64_t p);

template <class F>
concept CoefficientField = requires(const F& f, const typename F::Elem& a, long n) {
  { f.zero() } -> std::same_as<typename F::Elem>;
  { f.one() } -> std::same_as<typename F::Elem>;
  { f.from_int(n) } -> std::same_as<typename F::Elem>;
  { a + a } -> std::same_as<typename F::Elem>;
  { a * a } -> std::same_as<typename F::Elem>;
  { a / a } -> std::same_as<typename F::Elem>;
  { a.is_zero() } -> std::same_as<bool>;
};

}  // namespace pclab
