#include "pclab/arith/primes.hpp"

#include "pclab/error.hpp"

namespace pclab {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mul_mod(r, a, m);
    a = mul_mod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

// Deterministic Miller-Rabin for 64-bit integers.
bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(bound + 1, true);
  sieve[0] = sieve[1] = false;
  for (std::uint64_t i = 2; i * i <= bound; ++i)
    if (sieve[i])
      for (std::uint64_t j = i * i; j <= bound; j += i) sieve[j] = false;
  for (std::uint64_t i = 2; i <= bound; ++i)
    if (sieve[i]) out.push_back(i);
  return out;
}

unsigned long multiplicity(const Int& n, std::uint64_t p) {
  if (n == 0) return 0;
  Int rest;
  Int pz(static_cast<unsigned long>(p));
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), pz.get_mpz_t());
}

PadicValuation padic_valuation(const Rat& q, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (q.is_zero()) return PadicValuation::infinity();
  long up = static_cast<long>(multiplicity(q.num_ref(), p));
  long down = static_cast<long>(multiplicity(q.den_ref(), p));
  return PadicValuation::finite(up - down);
}

std::vector<std::uint64_t> small_prime_factors(const Int& n, std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (n == 0) return out;
  for (auto p : primes_up_to(bound))
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) out.push_back(p);
  return out;
}

}  // namespace pclab
