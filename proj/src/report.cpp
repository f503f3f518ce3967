#include "pspp/report.hpp"

#include <sstream>

namespace pspp {

nlohmann::json to_json(const IdentityCheck& c) {
  return {{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"pass", c.pass}};
}

nlohmann::json to_json(const CountReport& r) {
  nlohmann::json bins = nlohmann::json::array();
  for (const auto& b : r.bins) {
    bins.push_back({{"bin_start", dec(b.lo)}, {"bin_end", dec(b.hi)}, {"count", b.count}, {"model", b.model}});
  }
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  return {
      {"window_start", dec(r.window.a)},
      {"window_len", dec(r.window.n_len)},
      {"count", r.count},
      {"count_closure", r.count_closure},
      {"density", r.density},
      {"model", r.model},
      {"bins", bins},
      {"checks", checks},
  };
}

std::string to_csv(const CountReport& r) {
  std::ostringstream out;
  out << "bin_start,bin_end,count,model\n";
  for (const auto& b : r.bins) {
    out << dec(b.lo) << ',' << dec(b.hi) << ',' << b.count << ',' << dec(b.model) << '\n';
  }
  return out.str();
}

std::vector<HistogramBin> make_bins(const Window& w, unsigned bins, double density) {
  if (bins == 0) throw std::invalid_argument("make_bins: need at least one bin");
  std::vector<HistogramBin> out;
  out.reserve(bins);
  for (unsigned i = 0; i < bins; ++i) {
    HistogramBin b;
    b.lo = w.a + (w.n_len * i) / bins;
    b.hi = w.a + (w.n_len * (i + 1)) / bins;
    b.model = density * BigInt(b.hi - b.lo).get_d();
    out.push_back(std::move(b));
  }
  return out;
}

void bin_insert(std::vector<HistogramBin>& bins, const BigInt& value) {
  // values arrive in ascending order almost always; walk from the front
  // bin that can still hold them
  for (auto& b : bins) {
    if (value > b.lo && value <= b.hi) {
      ++b.count;
      return;
    }
  }
  throw std::logic_error("bin_insert: value outside histogram range");
}

}  // namespace pspp
