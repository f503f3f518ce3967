// Count reports with histograms plus JSON/CSV rendering shared by the
// library and the CLI.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "pspp/window.hpp"

namespace pspp {

struct IdentityCheck {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool pass = false;
};

// One histogram bucket covering (lo, hi].
struct HistogramBin {
  BigInt lo;
  BigInt hi;
  uint64_t count = 0;
  double model = 0.0;
};

struct CountReport {
  Window window;
  uint64_t count = 0;          // strict members (squares / true powers excluded)
  uint64_t count_closure = 0;  // including squares / true powers
  double density = 0.0;        // heuristic density used for the model column
  double model = 0.0;          // density * window length
  std::vector<HistogramBin> bins;
  std::vector<IdentityCheck> checks;
};

nlohmann::json to_json(const IdentityCheck& c);
nlohmann::json to_json(const CountReport& r);
// Schema: bin_start,bin_end,count,model with LF line endings.
std::string to_csv(const CountReport& r);

// Splits (lo, hi] into `bins` near-equal buckets; counts are filled by callers.
std::vector<HistogramBin> make_bins(const Window& w, unsigned bins, double density);
// Index of the bucket holding the offset-th window member (1-based offset).
void bin_insert(std::vector<HistogramBin>& bins, const BigInt& value);

}  // namespace pspp
