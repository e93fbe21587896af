#pragma once

#include <vector>

#include "pclab/arith/rat.hpp"

namespace pclab::hyp {

// Parameters of kF(k-1): a has k entries, b has k-1, and b_full is b with 1
// appended. N is the lcm of all parameter denominators.
struct HypParams {
  std::vector<Rat> a;
  std::vector<Rat> b;
  std::vector<Rat> b_full;
  Int N = 1;

  // Validates shapes (InvalidArgument) and rejects b_i in Z_{<=0} (BadParams).
  static HypParams make(std::vector<Rat> a, std::vector<Rat> b);

  std::size_t k() const { return a.size(); }
};

}  // namespace pclab::hyp
