// Command dispatch for the pspp tool: a RunConfig describes one command
// invocation; dispatch executes it and yields a Report plus the process
// exit code (0 ok, 1 failed identity check, 2 usage, 3 budget).
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pspp/report.hpp"
#include "pspp/window.hpp"

namespace pspp {

enum class Command {
  psq_search,
  psq_pigeonhole,
  psq_count,
  psq_verify_identity,
  ppw_profile,
  ppw_search,
  ppw_count,
  ppw_verify_identity,
  ppw_weighted_sum,
  charsum_rf,
  charsum_sum,
  charsum_bounds,
  charsum_choose_r,
};

enum class OutputFormat { json, csv };

struct RunConfig {
  Command command = Command::psq_search;
  uint64_t x = 0;          // integer threshold (most commands)
  double x_real = 0.0;     // real threshold (choose-r)
  int64_t g = 2;
  std::optional<BigInt> from;
  std::optional<BigInt> len;
  unsigned bins = 8;
  std::optional<BigInt> f;
  uint64_t q = 0;
  unsigned r = 1;
  std::string variant;     // theorem1 | theorem3 | q_g | p_g (per command)
  OutputFormat format = OutputFormat::json;
  uint64_t budget = 100'000'000;
  uint64_t seed = 1;
  std::optional<uint64_t> scan_limit;
  unsigned windows = 10;   // seeded windows for verify-identity
  uint64_t segment = 1u << 20;
};

struct Report {
  std::string command;
  nlohmann::json inputs;
  nlohmann::json outputs;
  std::vector<IdentityCheck> identity_checks;
  double timing_ms = 0.0;
};

struct DispatchResult {
  Report report;
  int exit_code = 0;
};

constexpr int kExitOk = 0;
constexpr int kExitIdentityFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

DispatchResult dispatch(const RunConfig& config);
std::string render(const Report& report, OutputFormat format);

}  // namespace pspp
