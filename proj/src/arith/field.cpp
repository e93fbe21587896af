#include "pclab/arith/field.hpp"

namespace pclab {

Fp reduce_rat(const Rat& q, std::uint64_t p) {
  if (mpz_divisible_ui_p(q.den_ref().get_mpz_t(), p))
    throw Error(ErrorKind::BadPrime, q.str() + " is not " + std::to_string(p) + "-integral");
  unsigned long n = mpz_fdiv_ui(q.num_ref().get_mpz_t(), p);
  unsigned long d = mpz_fdiv_ui(q.den_ref().get_mpz_t(), p);
  return Fp(n, p) / Fp(d, p);
}

}  // namespace pclab
