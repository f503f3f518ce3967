// Half-open integer windows (a, a+n_len], evaluation budgets and the
// arithmetic-progression slicing every windowed enumeration is built on.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pspp/arith.hpp"

namespace pspp {

// Raised when a budget or an explicit scan/search limit runs out.
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Caps the number of modular symbol/character evaluations a call may spend.
// Enumerations charge their full cost up front, so an over-budget request
// fails before burning CPU.
struct Budget {
  uint64_t limit = 100'000'000;
  uint64_t used = 0;

  void charge(uint64_t amount) {
    if (amount > limit - used) throw budget_error("evaluation budget exhausted");
    used += amount;
  }
  void charge(const BigInt& amount) {
    if (amount > BigInt(limit - used)) throw budget_error("evaluation budget exhausted");
    used += amount.get_ui();
  }
  static Budget standard() { return Budget{}; }
};

// The integers n with a < n <= a + n_len.
struct Window {
  BigInt a;
  BigInt n_len;

  Window() = default;
  Window(BigInt a_, BigInt len) : a(std::move(a_)), n_len(std::move(len)) {
    if (a < 0) throw std::invalid_argument("window start must be >= 0");
    if (n_len < 0) throw std::invalid_argument("window length must be >= 0");
  }
  BigInt upper() const { return a + n_len; }
  bool empty() const { return n_len == 0; }
};

// Members of the window congruent to `residue` mod `step`.
struct Progression {
  BigInt first;  // smallest member (meaningless when count == 0)
  BigInt count;
};

inline Progression progression_in_window(const Window& w, const BigInt& step, const BigInt& residue) {
  BigInt lo = w.a + 1;
  BigInt r = lo % step;
  BigInt want = residue % step;
  BigInt first = lo + (want >= r ? BigInt(want - r) : BigInt(step + want - r));
  BigInt hi = w.upper();
  if (first > hi) return {BigInt(0), BigInt(0)};
  return {first, (hi - first) / step + 1};
}

// Deterministic windows inside (0, range_hi], for seeded identity sweeps.
std::vector<Window> random_windows(uint64_t seed, unsigned count, uint64_t range_hi);

}  // namespace pspp
