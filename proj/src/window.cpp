#include "pspp/window.hpp"

#include <random>

namespace pspp {

std::vector<Window> random_windows(uint64_t seed, unsigned count, uint64_t range_hi) {
  if (range_hi == 0) throw std::invalid_argument("random_windows: range must be nonempty");
  std::mt19937_64 rng(seed);
  std::vector<Window> out;
  out.reserve(count);
  for (unsigned i = 0; i < count; ++i) {
    // modulo draw keeps the sequence identical across standard libraries
    uint64_t a = rng() % range_hi;
    uint64_t len = 1 + rng() % (range_hi - a);
    out.emplace_back(BigInt(static_cast<unsigned long>(a)), BigInt(static_cast<unsigned long>(len)));
  }
  return out;
}

}  // namespace pspp
