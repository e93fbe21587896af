#include "pclab/arith/series.hpp"

#include "pclab/arith/ratfun.hpp"

namespace pclab::detail {

std::vector<Rat> rat_convolution(const std::vector<Rat>& a, const std::vector<Rat>& b, std::size_t order) {
  const std::size_t n = std::min({order, a.size(), b.size()});
  std::vector<Rat> out(n);
  if (n == 0) return out;
  std::vector<Rat> ah(a.begin(), a.begin() + static_cast<long>(n));
  std::vector<Rat> bh(b.begin(), b.begin() + static_cast<long>(n));
  Int da = common_denominator(ah), db = common_denominator(bh);
  std::vector<Int> ai(n), bi(n);
  for (std::size_t i = 0; i < n; ++i) {
    ai[i] = ah[i].num_ref() * (da / ah[i].den_ref());
    bi[i] = bh[i].num_ref() * (db / bh[i].den_ref());
  }
  Int den = da * db;
  Int acc;
  for (std::size_t k = 0; k < n; ++k) {
    acc = 0;
    for (std::size_t i = 0; i <= k; ++i) {
      if (ai[i] == 0) continue;
      mpz_addmul(acc.get_mpz_t(), ai[i].get_mpz_t(), bi[k - i].get_mpz_t());
    }
    out[k] = Rat(acc, den);
  }
  return out;
}

}  // namespace pclab::detail
