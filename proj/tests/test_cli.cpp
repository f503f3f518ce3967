#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pspp/cli.hpp"

using namespace pspp;
using nlohmann::json;

namespace {

struct ProcResult {
  int exit_code = -1;
  std::string out;
};

// run the installed binary with the given arguments, capturing stdout
ProcResult run_cli(const std::string& args) {
  ProcResult res;
  std::string cmd = std::string(PSPP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof(buf), pipe)) > 0) res.out.append(buf, got);
  int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

bool all_pass(const Report& report) {
  for (const auto& c : report.identity_checks) {
    if (!c.pass) return false;
  }
  return true;
}

json strip_timing(const Report& report) {
  json j = json::parse(render(report, OutputFormat::json));
  j.erase("timing_ms");
  return j;
}

size_t count_lines(const std::string& text) {
  size_t n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("dispatch: pseudosquare search") {
  RunConfig config;
  config.command = Command::psq_search;
  config.x = 5;
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.command == "psq search");
  CHECK(res.report.outputs["n"] == "241");
  CHECK(res.report.outputs["provenance"] == "sieve_search");
  CHECK(res.report.outputs["residue_mod8"] == 1);
  CHECK(res.report.outputs["symbols"] == json::array({1, 1}));
  CHECK(res.report.outputs["budget_used"].get<uint64_t>() > 0);
  CHECK(all_pass(res.report));
}

TEST_CASE("dispatch: pigeonhole construction") {
  RunConfig config;
  config.command = Command::psq_pigeonhole;
  config.x = 3;
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["n"] == "145");
  CHECK(res.report.outputs["l1"] == 5);
  CHECK(res.report.outputs["l2"] == 29);
  CHECK(res.report.outputs["x_bound"] == "12");
  CHECK(res.report.outputs["within_bound"] == false);
  CHECK(all_pass(res.report));
}

TEST_CASE("dispatch: pseudosquare count") {
  RunConfig config;
  config.command = Command::psq_count;
  config.x = 3;
  config.from = BigInt(0);
  config.len = BigInt(120);
  config.bins = 4;
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["count"] == 2);
  CHECK(res.report.outputs["count_closure"] == 5);
  CHECK(res.report.outputs["bins"].size() == 4);
  CHECK(all_pass(res.report));
}

TEST_CASE("dispatch: pseudosquare identity verification") {
  RunConfig config;
  config.command = Command::psq_verify_identity;
  config.x = 5;
  config.seed = 7;
  config.windows = 3;
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["windows"].size() == 3);
  // 3 checks per window plus the full-period count
  CHECK(res.report.identity_checks.size() == 10);
  CHECK(res.report.identity_checks.back().name == "period_count");
  CHECK(all_pass(res.report));
}

TEST_CASE("dispatch: pseudopower profile") {
  RunConfig config;
  config.command = Command::ppw_profile;
  config.g = 2;
  config.x = 13;
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["i_product"] == "2");
  CHECK(res.report.outputs["l_product"] == "2880");
  CHECK(res.report.outputs["rows"].size() == 5);
  CHECK(res.report.outputs["g_primes"] == json::array({2}));
  REQUIRE(res.report.identity_checks.size() == 1);
  CHECK(res.report.identity_checks[0].name == "order_index_partition");
  CHECK(res.report.identity_checks[0].pass);
}

TEST_CASE("dispatch: pseudopower search both variants") {
  RunConfig config;
  config.command = Command::ppw_search;
  config.g = 2;
  config.x = 7;
  DispatchResult res = dispatch(config);  // empty variant defaults to q_g
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["q_g"] == 11);
  CHECK(res.report.outputs["p_g"] == 11);
  CHECK(all_pass(res.report));

  RunConfig pg;
  pg.command = Command::ppw_search;
  pg.g = 2;
  pg.x = 13;
  pg.variant = "p_g";
  DispatchResult res2 = dispatch(pg);
  CHECK(res2.exit_code == kExitOk);
  CHECK(res2.report.outputs["p_g"] == 23);
  CHECK(!res2.report.outputs.contains("q_g"));
}

TEST_CASE("dispatch: pseudopower count") {
  RunConfig config;
  config.command = Command::ppw_count;
  config.g = 2;
  config.x = 3;
  config.from = BigInt(0);
  config.len = BigInt(30);
  config.bins = 3;
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["count"] == 15);
  CHECK(res.report.outputs["count_closure"] == 20);
  CHECK(all_pass(res.report));
}

TEST_CASE("dispatch: pseudopower identity verification over the full period") {
  RunConfig config;
  config.command = Command::ppw_verify_identity;
  config.g = 2;
  config.x = 13;
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["count_closure"] == "5760");
  CHECK(res.report.outputs["count_true_powers"] == 15);
  CHECK(res.report.outputs["direct_closure_count"] == 5760);
  CHECK(res.report.outputs["terms"] == 30030);
  CHECK(res.report.outputs["p_an"].get<double>() == doctest::Approx(11520.0).epsilon(1e-9));
  REQUIRE(res.report.identity_checks.size() == 5);
  CHECK(all_pass(res.report));
}

TEST_CASE("dispatch: weighted prime-power sum") {
  RunConfig config;
  config.command = Command::ppw_weighted_sum;
  config.g = 2;
  config.x = 3;
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["p_g"] == 5);
  CHECK(res.report.outputs["terms"] == 3);
  CHECK(res.report.outputs["value_re"].get<double>() ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(res.report.outputs["identity_rhs"].get<double>() ==
        doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
  CHECK(all_pass(res.report));
}

TEST_CASE("dispatch: remainder character sum") {
  RunConfig config;
  config.command = Command::charsum_rf;
  config.x = 3;
  config.f = BigInt(3);
  config.from = BigInt(0);
  config.len = BigInt(24);
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["value"] == "0");
  CHECK(res.report.outputs["terms"] == 3);
  CHECK(res.report.outputs["pv_bound"].get<double>() ==
        doctest::Approx(5.708556905378076).epsilon(1e-12));
  CHECK(all_pass(res.report));
}

TEST_CASE("dispatch: plain character sum") {
  RunConfig config;
  config.command = Command::charsum_sum;
  config.q = 15;
  config.from = BigInt(0);
  config.len = BigInt(7);
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["value"] == "2");
  CHECK(res.report.outputs["terms"] == 7);
  CHECK(all_pass(res.report));
}

TEST_CASE("dispatch: bound calculators") {
  RunConfig pv;
  pv.command = Command::charsum_bounds;
  pv.x = 5;
  pv.f = BigInt(15);
  DispatchResult res = dispatch(pv);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["rf_bound"].get<double>() == doctest::Approx(62.9294).epsilon(1e-4));

  RunConfig gr;
  gr.command = Command::charsum_bounds;
  gr.q = 15015;
  gr.r = 1;
  gr.len = BigInt("10000000000000");
  gr.from = BigInt(0);
  DispatchResult res2 = dispatch(gr);
  CHECK(res2.exit_code == kExitOk);
  CHECK(res2.report.outputs["gr_bound"].get<double>() ==
        doctest::Approx(1846597793219.5767).epsilon(1e-9));
  CHECK(res2.report.outputs["vacuous"] == false);
}

TEST_CASE("dispatch: iteration depth chooser") {
  RunConfig config;
  config.command = Command::charsum_choose_r;
  config.x_real = std::exp(100.0);
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitOk);
  CHECK(res.report.outputs["r"] == 2);
  CHECK(res.report.outputs["degenerate"] == false);
  CHECK(res.report.outputs["variant"] == "theorem1");

  config.variant = "theorem3";
  DispatchResult res2 = dispatch(config);
  CHECK(res2.report.outputs["r"] == 1);
  CHECK(res2.report.outputs["variant"] == "theorem3");
}

TEST_CASE("dispatch: usage errors yield exit 2") {
  RunConfig missing_window;
  missing_window.command = Command::psq_count;
  missing_window.x = 3;
  DispatchResult res = dispatch(missing_window);
  CHECK(res.exit_code == kExitUsage);
  CHECK(res.report.outputs.contains("error"));

  RunConfig bad_variant;
  bad_variant.command = Command::ppw_search;
  bad_variant.g = 2;
  bad_variant.x = 7;
  bad_variant.variant = "bogus";
  CHECK(dispatch(bad_variant).exit_code == kExitUsage);

  RunConfig empty_bounds;
  empty_bounds.command = Command::charsum_bounds;
  CHECK(dispatch(empty_bounds).exit_code == kExitUsage);

  RunConfig bad_f;
  bad_f.command = Command::charsum_rf;
  bad_f.x = 3;
  bad_f.f = BigInt(5);  // not a divisor of the odd primorial
  bad_f.from = BigInt(0);
  bad_f.len = BigInt(24);
  CHECK(dispatch(bad_f).exit_code == kExitUsage);

  RunConfig lonely_from;
  lonely_from.command = Command::psq_count;
  lonely_from.x = 3;
  lonely_from.from = BigInt(0);
  CHECK(dispatch(lonely_from).exit_code == kExitUsage);
}

TEST_CASE("dispatch: exhausted budgets yield exit 3") {
  RunConfig config;
  config.command = Command::psq_count;
  config.x = 13;
  config.from = BigInt(0);
  config.len = BigInt(120120);
  config.budget = 100;
  DispatchResult res = dispatch(config);
  CHECK(res.exit_code == kExitBudget);
  CHECK(res.report.outputs.contains("error"));

  RunConfig scan;
  scan.command = Command::psq_search;
  scan.x = 19;
  scan.scan_limit = 100;  // least example lies far beyond
  CHECK(dispatch(scan).exit_code == kExitBudget);
}

TEST_CASE("JSON output round-trips byte-identically") {
  RunConfig config;
  config.command = Command::psq_count;
  config.x = 5;
  config.from = BigInt(0);
  config.len = BigInt(5000);
  config.bins = 4;
  DispatchResult res = dispatch(config);
  std::string text = render(res.report, OutputFormat::json);
  json parsed = json::parse(text);
  CHECK(parsed.dump(2) + "\n" == text);
  CHECK(parsed["outputs"]["count"].is_number());
  CHECK(parsed["inputs"]["x"] == 5);
  CHECK(parsed.contains("timing_ms"));
}

TEST_CASE("repeated dispatches are deterministic") {
  RunConfig config;
  config.command = Command::psq_verify_identity;
  config.x = 5;
  config.seed = 42;
  config.windows = 5;
  json first = strip_timing(dispatch(config).report);
  json second = strip_timing(dispatch(config).report);
  CHECK(first == second);

  RunConfig count;
  count.command = Command::ppw_count;
  count.g = 2;
  count.x = 13;
  count.from = BigInt(0);
  count.len = BigInt(30030);
  CHECK(strip_timing(dispatch(count).report) == strip_timing(dispatch(count).report));
}

TEST_CASE("CSV output for count reports") {
  RunConfig config;
  config.command = Command::psq_count;
  config.x = 3;
  config.from = BigInt(0);
  config.len = BigInt(120);
  config.bins = 4;
  DispatchResult res = dispatch(config);
  std::string csv = render(res.report, OutputFormat::csv);
  CHECK(csv.rfind("bin_start,bin_end,count,model\n", 0) == 0);
  CHECK(count_lines(csv) == 5);  // header + one row per bin

  uint64_t total = 0;
  std::istringstream lines(csv);
  std::string line;
  std::getline(lines, line);  // header
  while (std::getline(lines, line)) {
    size_t c1 = line.find(',');
    size_t c2 = line.find(',', c1 + 1);
    size_t c3 = line.find(',', c2 + 1);
    total += std::stoull(line.substr(c2 + 1, c3 - c2 - 1));
  }
  CHECK(total == res.report.outputs["count"].get<uint64_t>());
}

TEST_CASE("CSV output for scalar reports") {
  RunConfig config;
  config.command = Command::charsum_choose_r;
  config.x_real = 1e6;
  DispatchResult res = dispatch(config);
  std::string csv = render(res.report, OutputFormat::csv);
  CHECK(csv.rfind("key,value\n", 0) == 0);
  CHECK(csv.find("command,charsum choose-r\n") != std::string::npos);
  CHECK(csv.find("degenerate,") != std::string::npos);
}

TEST_CASE("process: search commands succeed end to end") {
  ProcResult res = run_cli("psq search --x 5");
  REQUIRE(res.exit_code == 0);
  json j = json::parse(res.out);
  CHECK(j["outputs"]["n"] == "241");
  CHECK(j["command"] == "psq search");

  ProcResult ppw = run_cli("ppw search --g 2 --x 7");
  REQUIRE(ppw.exit_code == 0);
  CHECK(json::parse(ppw.out)["outputs"]["q_g"] == 11);
}

TEST_CASE("process: csv count output") {
  ProcResult res = run_cli("psq count --x 3 --from 0 --len 120 --format csv");
  REQUIRE(res.exit_code == 0);
  CHECK(res.out.rfind("bin_start,bin_end,count,model\n", 0) == 0);
}

TEST_CASE("process: verification commands pass") {
  ProcResult res = run_cli("ppw verify-identity --g 2 --x 13");
  REQUIRE(res.exit_code == 0);
  json j = json::parse(res.out);
  for (const auto& check : j["identity_checks"]) {
    CHECK(check["pass"] == true);
  }
}

TEST_CASE("process: usage and budget exit codes") {
  CHECK(run_cli("psq count --x 3").exit_code == 2);          // missing window
  CHECK(run_cli("nonsense").exit_code == 2);                 // unknown command
  CHECK(run_cli("psq").exit_code == 2);                      // missing subcommand
  CHECK(run_cli("").exit_code == 2);                         // no arguments at all
  CHECK(run_cli("psq search --x 5 --format xml").exit_code == 2);
  CHECK(run_cli("psq count --x 13 --from 0 --len 120120 --budget 100").exit_code == 3);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("psq search --help").exit_code == 0);
}
