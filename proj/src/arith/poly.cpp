#include "pclab/arith/poly.hpp"

#include "pclab/arith/primes.hpp"

namespace pclab {

namespace {

FpMPoly reduce_scaled(const QMPoly& f, const Int& scale, const Int& content, std::uint64_t p) {
  PrimeField k{p};
  FpMPoly r(k, f.vars());
  for (const auto& [m, c] : f.terms()) {
    Int v = c.num_ref() * (scale / c.den_ref()) / content;
    r.add_term(m, Fp(mpz_fdiv_ui(v.get_mpz_t(), p), p));
  }
  return r;
}

}  // namespace

PolyFraction<PrimeField> reduce_mod_p(const PolyFraction<RationalField>& f, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  Int scale = 1;
  for (const auto* poly : {&f.num, &f.den})
    for (const auto& [m, c] : poly->terms()) scale = lcm(scale, c.den_ref());
  Int content = 0;
  for (const auto* poly : {&f.num, &f.den})
    for (const auto& [m, c] : poly->terms()) {
      Int v = c.num_ref() * (scale / c.den_ref());
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), v.get_mpz_t());
    }
  if (content == 0) content = 1;
  PolyFraction<PrimeField> r{reduce_scaled(f.num, scale, content, p), reduce_scaled(f.den, scale, content, p)};
  if (r.den.is_zero())
    throw Error(ErrorKind::BadPrime, "denominator " + f.den.str() + " vanishes mod " + std::to_string(p));
  r.normalize();
  return r;
}

FpMPoly reduce_mod_p(const QMPoly& f, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  FpMPoly r(PrimeField{p}, f.vars());
  for (const auto& [m, c] : f.terms()) r.add_term(m, reduce_rat(c, p));
  return r;
}

}  // namespace pclab
