// pspp: search, construct, count and cross-check pseudosquares and
// pseudopowers over windows of integers.
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "pspp/cli.hpp"

namespace {

struct RawArgs {
  std::string from;
  std::string len;
  std::string f;
  std::string format = "json";
};

pspp::BigInt parse_big(const std::string& text, const char* flag) {
  try {
    return pspp::BigInt(text);
  } catch (const std::exception&) {
    throw CLI::ValidationError(std::string(flag) + " must be a decimal integer");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pseudosquare / pseudopower toolkit"};
  app.require_subcommand(1);

  pspp::RunConfig config;
  RawArgs raw;

  auto add_common = [&](CLI::App* cmd, bool with_window) {
    cmd->add_option("--budget", config.budget, "evaluation budget");
    cmd->add_option("--format", raw.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    if (with_window) {
      cmd->add_option("--from", raw.from, "window start A (window is (A, A+len])");
      cmd->add_option("--len", raw.len, "window length");
    }
  };

  CLI::App* psq = app.add_subcommand("psq", "pseudosquare commands");
  psq->require_subcommand(1);
  CLI::App* psq_search = psq->add_subcommand("search", "least pseudosquare for the threshold");
  psq_search->add_option("--x", config.x, "prime threshold")->required();
  psq_search->add_option("--scan-limit", config.scan_limit, "candidate bound for the sieve");
  psq_search->add_option("--segment", config.segment, "sieve segment size in candidates");
  add_common(psq_search, false);

  CLI::App* psq_pig = psq->add_subcommand("pigeonhole", "pseudosquare from a prime collision");
  psq_pig->add_option("--x", config.x, "prime threshold")->required();
  psq_pig->add_option("--scan-limit", config.scan_limit, "largest prime to scan");
  add_common(psq_pig, false);

  CLI::App* psq_count = psq->add_subcommand("count", "count pseudosquares in a window");
  psq_count->add_option("--x", config.x, "prime threshold")->required();
  psq_count->add_option("--bins", config.bins, "histogram bins");
  add_common(psq_count, true);

  CLI::App* psq_verify = psq->add_subcommand("verify-identity", "window identities and bounds");
  psq_verify->add_option("--x", config.x, "prime threshold")->required();
  psq_verify->add_option("--seed", config.seed, "seed for random windows");
  psq_verify->add_option("--windows", config.windows, "number of random windows");
  add_common(psq_verify, true);

  CLI::App* ppw = app.add_subcommand("ppw", "pseudopower commands");
  ppw->require_subcommand(1);
  CLI::App* ppw_profile = ppw->add_subcommand("profile", "orders and indices of g");
  ppw_profile->add_option("--g", config.g, "base")->required();
  ppw_profile->add_option("--x", config.x, "prime threshold")->required();
  add_common(ppw_profile, false);

  CLI::App* ppw_search = ppw->add_subcommand("search", "least pseudopower of g");
  ppw_search->add_option("--g", config.g, "base")->required();
  ppw_search->add_option("--x", config.x, "prime threshold")->required();
  ppw_search->add_option("--variant", config.variant, "q_g (default) or p_g");
  add_common(ppw_search, false);

  CLI::App* ppw_count = ppw->add_subcommand("count", "count pseudopowers in a window");
  ppw_count->add_option("--g", config.g, "base")->required();
  ppw_count->add_option("--x", config.x, "prime threshold")->required();
  ppw_count->add_option("--bins", config.bins, "histogram bins");
  add_common(ppw_count, true);

  CLI::App* ppw_verify = ppw->add_subcommand("verify-identity", "period and splitting identities");
  ppw_verify->add_option("--g", config.g, "base")->required();
  ppw_verify->add_option("--x", config.x, "prime threshold")->required();
  add_common(ppw_verify, true);

  CLI::App* ppw_ws = ppw->add_subcommand("weighted-sum", "prime-power weighted character sum");
  ppw_ws->add_option("--g", config.g, "base")->required();
  ppw_ws->add_option("--x", config.x, "prime threshold")->required();
  add_common(ppw_ws, false);

  CLI::App* cs = app.add_subcommand("charsum", "character sum commands");
  cs->require_subcommand(1);
  CLI::App* cs_rf = cs->add_subcommand("rf", "remainder term for a conductor");
  cs_rf->add_option("--x", config.x, "prime threshold")->required();
  cs_rf->add_option("--f", raw.f, "conductor (divisor of the odd primorial)")->required();
  add_common(cs_rf, true);

  CLI::App* cs_sum = cs->add_subcommand("sum", "plain character sum over a window");
  cs_sum->add_option("--q", config.q, "odd squarefree modulus")->required();
  add_common(cs_sum, true);

  CLI::App* cs_bounds = cs->add_subcommand("bounds", "remainder bound calculators");
  cs_bounds->add_option("--x", config.x, "prime threshold (for --f)");
  cs_bounds->add_option("--f", raw.f, "conductor for the window-free bound");
  cs_bounds->add_option("--q", config.q, "squarefree modulus for the iterated bound");
  cs_bounds->add_option("--r", config.r, "iteration depth");
  add_common(cs_bounds, true);

  CLI::App* cs_choose = cs->add_subcommand("choose-r", "iteration depth for a threshold");
  cs_choose->add_option("--x", config.x_real, "threshold (real, may be huge)")->required();
  cs_choose->add_option("--variant", config.variant, "theorem1 (default) or theorem3");
  add_common(cs_choose, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return pspp::kExitUsage;
  }

  if (psq_search->parsed()) config.command = pspp::Command::psq_search;
  if (psq_pig->parsed()) config.command = pspp::Command::psq_pigeonhole;
  if (psq_count->parsed()) config.command = pspp::Command::psq_count;
  if (psq_verify->parsed()) config.command = pspp::Command::psq_verify_identity;
  if (ppw_profile->parsed()) config.command = pspp::Command::ppw_profile;
  if (ppw_search->parsed()) config.command = pspp::Command::ppw_search;
  if (ppw_count->parsed()) config.command = pspp::Command::ppw_count;
  if (ppw_verify->parsed()) config.command = pspp::Command::ppw_verify_identity;
  if (ppw_ws->parsed()) config.command = pspp::Command::ppw_weighted_sum;
  if (cs_rf->parsed()) config.command = pspp::Command::charsum_rf;
  if (cs_sum->parsed()) config.command = pspp::Command::charsum_sum;
  if (cs_bounds->parsed()) config.command = pspp::Command::charsum_bounds;
  if (cs_choose->parsed()) config.command = pspp::Command::charsum_choose_r;

  try {
    if (!raw.from.empty()) config.from = parse_big(raw.from, "--from");
    if (!raw.len.empty()) config.len = parse_big(raw.len, "--len");
    if (!raw.f.empty()) config.f = parse_big(raw.f, "--f");
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return pspp::kExitUsage;
  }
  config.format = raw.format == "csv" ? pspp::OutputFormat::csv : pspp::OutputFormat::json;

  pspp::DispatchResult result = pspp::dispatch(config);
  std::cout << pspp::render(result.report, config.format);
  return result.exit_code;
}
