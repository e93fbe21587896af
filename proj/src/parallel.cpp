#include "pclab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace pclab {

int worker_count() {
  if (const char* env = std::getenv("PCLAB_THREADS")) {
    try {
      int n = std::stoi(env);
      if (n > 0) return n;
    } catch (...) {
    }
  }
  return omp_get_max_threads();
}

}  // namespace pclab
