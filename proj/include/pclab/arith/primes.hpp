#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "pclab/arith/rat.hpp"

namespace pclab {

bool is_prime(std::uint64_t n);

// All primes p with 2 <= p <= bound, ascending.
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

// p-adic valuation with a distinguished +infinity (the valuation of zero).
class PadicValuation {
 public:
  static PadicValuation infinity() { return PadicValuation(); }
  static PadicValuation finite(long v) { return PadicValuation(v); }

  bool is_infinite() const { return infinite_; }
  // Only meaningful when finite.
  long value() const { return value_; }

  // v >= 0, i.e. membership in Z_(p); true for infinity.
  bool is_integral() const { return infinite_ || value_ >= 0; }

  friend bool operator==(const PadicValuation&, const PadicValuation&) = default;

 private:
  PadicValuation() : infinite_(true) {}
  explicit PadicValuation(long v) : infinite_(false), value_(v) {}

  bool infinite_ = true;
  long value_ = 0;
};

// Throws NotPrime when p is not prime.
PadicValuation padic_valuation(const Rat& q, std::uint64_t p);

// Exponent of p in n (n != 0). No primality check.
unsigned long multiplicity(const Int& n, std::uint64_t p);

// Distinct prime factors of |n| found by trial division up to `bound`.
std::vector<std::uint64_t> small_prime_factors(const Int& n, std::uint64_t bound);

}  // namespace pclab
