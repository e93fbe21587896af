#include "pclab/arith/ratfun.hpp"

#include "pclab/arith/primes.hpp"

namespace pclab {

Int common_denominator(const std::vector<Rat>& qs) {
  Int l = 1;
  for (const auto& q : qs) l = lcm(l, q.den_ref());
  return l;
}

namespace {

std::vector<Int> integral_scaled(const QPoly& f, const Int& scale) {
  std::vector<Int> out;
  out.reserve(f.coeffs().size());
  for (const auto& c : f.coeffs()) {
    Int v = c.num_ref() * (scale / c.den_ref());
    out.push_back(v);
  }
  return out;
}

FpPoly reduce_ints(const std::vector<Int>& v, std::uint64_t p) {
  PrimeField k{p};
  std::vector<Fp> r;
  r.reserve(v.size());
  for (const auto& x : v) r.emplace_back(mpz_fdiv_ui(x.get_mpz_t(), p), p);
  return FpPoly(k, std::move(r));
}

}  // namespace

FpRatFun reduce_mod_p(const QRatFun& f, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  std::vector<Rat> all = f.num().coeffs();
  all.insert(all.end(), f.den().coeffs().begin(), f.den().coeffs().end());
  Int scale = common_denominator(all);
  auto n = integral_scaled(f.num(), scale);
  auto d = integral_scaled(f.den(), scale);
  Int content = 0;
  for (const auto& x : n) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
  for (const auto& x : d) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_mpz_t());
  for (auto& x : n) x /= content;
  for (auto& x : d) x /= content;
  FpPoly dn = reduce_ints(d, p);
  if (dn.is_zero())
    throw Error(ErrorKind::BadPrime, "denominator of " + f.str() + " vanishes mod " + std::to_string(p));
  return FpRatFun(reduce_ints(n, p), dn);
}

}  // namespace pclab
