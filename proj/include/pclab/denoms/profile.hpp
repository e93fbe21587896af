#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pclab/arith/mseries.hpp"
#include "pclab/arith/rat.hpp"

namespace pclab::denoms {

struct ProfileRow {
  std::uint64_t p = 2;
  long g = 0;  // g_emp(p) in [-1, M-1]
};

// g_emp(p) is the largest m <= M-1 with a_0..a_m all p-integral, -1 if a_0
// is not. The support is the set of primes with g_emp(p) < M-1.
struct IntegralityProfile {
  std::size_t M = 0;
  std::uint64_t P = 2;
  std::vector<ProfileRow> table;
  std::vector<std::uint64_t> support;

  // Throws InvalidArgument for primes outside the table.
  long g(std::uint64_t p) const;
};

IntegralityProfile profile(const std::vector<Rat>& coeffs, std::uint64_t prime_bound);
IntegralityProfile profile_serial(const std::vector<Rat>& coeffs, std::uint64_t prime_bound);

// Total-degree graded version: g_emp(p) is the largest m < order with every
// coefficient of degree <= m p-integral. Several series are profiled jointly.
IntegralityProfile multivariate_profile(const QMSeries& series, std::uint64_t prime_bound);
IntegralityProfile multivariate_profile(const std::vector<QMSeries>& series, std::uint64_t prime_bound);

struct Verdicts {
  // support empty, or contained in primes <= min(P, M)/2
  bool finite_support = true;
  // min of g_emp(p)/p over primes p in [P/2, P]; empty if no such prime
  std::optional<Rat> omega_linear_floor;
  // some prime in that window is clean to the horizon, so the slope is only a lower bound
  bool saturated = false;
  std::vector<std::string> notes;
};

Verdicts verdicts(const IntegralityProfile& prof);

// "p,g_emp" rows with a header line.
std::string to_csv(const IntegralityProfile& prof);

}  // namespace pclab::denoms
