#include "pspp/cli.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "pspp/charsum.hpp"
#include "pspp/pseudopower.hpp"
#include "pspp/pseudosquare.hpp"

namespace pspp {

namespace {

const char* name_of(Command c) {
  switch (c) {
    case Command::psq_search: return "psq search";
    case Command::psq_pigeonhole: return "psq pigeonhole";
    case Command::psq_count: return "psq count";
    case Command::psq_verify_identity: return "psq verify-identity";
    case Command::ppw_profile: return "ppw profile";
    case Command::ppw_search: return "ppw search";
    case Command::ppw_count: return "ppw count";
    case Command::ppw_verify_identity: return "ppw verify-identity";
    case Command::ppw_weighted_sum: return "ppw weighted-sum";
    case Command::charsum_rf: return "charsum rf";
    case Command::charsum_sum: return "charsum sum";
    case Command::charsum_bounds: return "charsum bounds";
    case Command::charsum_choose_r: return "charsum choose-r";
  }
  return "unknown";
}

IdentityCheck check_eq(const std::string& name, const BigInt& lhs, const BigInt& rhs) {
  return {name, dec(lhs), dec(rhs), lhs == rhs};
}

IdentityCheck check_le(const std::string& name, double lhs, double rhs) {
  return {name, dec(lhs), dec(rhs), lhs <= rhs};
}

std::optional<Window> window_from(const RunConfig& config) {
  if (config.from.has_value() != config.len.has_value()) {
    throw std::invalid_argument("--from and --len must be given together");
  }
  if (!config.from) return std::nullopt;
  return Window(*config.from, *config.len);
}

Window require_window(const RunConfig& config) {
  auto w = window_from(config);
  if (!w) throw std::invalid_argument("this command needs --from and --len");
  return *w;
}

nlohmann::json window_json(const Window& w) {
  return {{"from", dec(w.a)}, {"len", dec(w.n_len)}};
}

void put_count_report(Report& report, const CountReport& cr) {
  report.outputs = to_json(cr);
  for (const auto& c : cr.checks) report.identity_checks.push_back(c);
}

PpwVariant ppw_variant(const RunConfig& config) {
  if (config.variant.empty() || config.variant == "q_g") return PpwVariant::q_g;
  if (config.variant == "p_g") return PpwVariant::p_g;
  throw std::invalid_argument("--variant must be q_g or p_g");
}

RVariant r_variant(const RunConfig& config) {
  if (config.variant.empty() || config.variant == "theorem1") return RVariant::theorem1;
  if (config.variant == "theorem3") return RVariant::theorem3;
  throw std::invalid_argument("--variant must be theorem1 or theorem3");
}

// all divisors f > 1 of m2_x, as subset products of the odd basis primes
std::vector<BigInt> proper_conductors(const PrimeBasis& basis) {
  size_t k = basis.odd_count();
  if (k > 20) throw std::invalid_argument("threshold too large to enumerate conductors");
  std::vector<BigInt> out;
  for (uint64_t mask = 1; mask < (1ull << k); ++mask) {
    BigInt f = 1;
    for (size_t i = 0; i < k; ++i) {
      if (mask & (1ull << i)) f *= static_cast<unsigned long>(basis.odd_begin()[i]);
    }
    out.push_back(std::move(f));
  }
  return out;
}

void run_psq_search(const RunConfig& config, Report& report, Budget& budget) {
  PrimeBasis basis = PrimeBasis::build(config.x);
  std::optional<BigInt> bound;
  if (config.scan_limit) bound = BigInt(static_cast<unsigned long>(*config.scan_limit));
  PseudosquareRecord rec = least_pseudosquare(basis, budget, bound, config.segment);
  SymbolVector sv = symbol_vector(rec.n, basis);
  nlohmann::json symbols = nlohmann::json::array();
  for (Symbol s : sv.symbols) symbols.push_back(s);
  report.outputs["n"] = dec(rec.n);
  report.outputs["provenance"] = "sieve_search";
  report.outputs["residue_mod8"] = sv.residue_mod8;
  report.outputs["symbols"] = symbols;
  report.identity_checks.push_back(
      {"is_pseudosquare", is_pseudosquare(rec.n, basis) ? "true" : "false", "true",
       is_pseudosquare(rec.n, basis)});
}

void run_psq_pigeonhole(const RunConfig& config, Report& report, Budget& budget) {
  PrimeBasis basis = PrimeBasis::build(config.x);
  PigeonholeResult res = pigeonhole_pseudosquare(basis, budget, config.scan_limit);
  report.outputs["n"] = dec(res.record.n);
  report.outputs["l1"] = res.l1;
  report.outputs["l2"] = res.l2;
  report.outputs["x_bound"] = dec(res.x_bound);
  report.outputs["within_bound"] = res.within_bound;
  report.outputs["provenance"] = "pigeonhole";
  report.identity_checks.push_back(
      {"is_pseudosquare", is_pseudosquare(res.record.n, basis) ? "true" : "false", "true",
       is_pseudosquare(res.record.n, basis)});
  report.identity_checks.push_back({"primes_distinct", std::to_string(res.l1),
                                    std::to_string(res.l2), res.l1 != res.l2});
}

void run_psq_count(const RunConfig& config, Report& report, Budget& budget) {
  PrimeBasis basis = PrimeBasis::build(config.x);
  Window w = require_window(config);
  put_count_report(report, count_pseudosquares(basis, w, config.bins, budget));
}

void run_psq_verify(const RunConfig& config, Report& report, Budget& budget) {
  PrimeBasis basis = PrimeBasis::build(config.x);
  std::vector<Window> windows;
  if (auto w = window_from(config)) {
    windows.push_back(*w);
  } else {
    windows = random_windows(config.seed, config.windows, 1'000'000);
  }
  const BigInt weight = BigInt(1) << (basis.pi() - 1);
  nlohmann::json per_window = nlohmann::json::array();
  for (size_t idx = 0; idx < windows.size(); ++idx) {
    const Window& w = windows[idx];
    SanResult san = s_an(basis, w, budget);
    MainTerm mt = main_term(basis, w, budget);
    BigInt remainder_sum = 0;
    double worst_ratio = 0.0;
    for (const BigInt& f : proper_conductors(basis)) {
      SumRecord rf = r_f(basis, f, w, budget);
      remainder_sum += rf.value;
      double bound = pv_bounds(basis, f).rf_bound;
      double ratio = BigInt(abs(rf.value)).get_d() / bound;
      worst_ratio = std::max(worst_ratio, ratio);
    }
    std::string tag = "[" + std::to_string(idx) + "]";
    report.identity_checks.push_back(
        check_eq("squarecount" + tag, san.sum.value, weight * san.count_sbar));
    report.identity_checks.push_back(
        check_eq("decomposition" + tag, san.sum.value, BigInt(mt.count) + remainder_sum));
    report.identity_checks.push_back(check_le("remainder_bounds" + tag, worst_ratio, 1.0));
    per_window.push_back({{"window", window_json(w)},
                          {"s_an", dec(san.sum.value)},
                          {"count_sbar", san.count_sbar},
                          {"main_count", mt.count},
                          {"remainder_sum", dec(remainder_sum)}});
  }
  // one full period of the symbol pattern carries an exactly known count
  if (basis.m2_x <= 1'250'000) {
    Window period(BigInt(0), 8 * basis.m2_x);
    SanResult san = s_an(basis, period, budget);
    BigInt expected = 1;
    for (size_t i = 0; i < basis.odd_count(); ++i) {
      expected *= static_cast<unsigned long>((basis.odd_begin()[i] - 1) / 2);
    }
    report.identity_checks.push_back(check_eq("period_count", BigInt(san.count_sbar), expected));
  }
  report.outputs["x"] = config.x;
  report.outputs["windows"] = per_window;
}

void run_ppw_profile(const RunConfig& config, Report& report, Budget&) {
  PrimeBasis basis = PrimeBasis::build(config.x);
  PowerProfile profile = power_profile(config.g, basis);
  nlohmann::json rows = nlohmann::json::array();
  BigInt phi = 1;
  for (const auto& row : profile.rows) {
    rows.push_back({{"p", row.p}, {"order", row.order}, {"index", row.index}});
    phi *= static_cast<unsigned long>(row.p - 1);
  }
  report.outputs["g"] = config.g;
  report.outputs["x"] = config.x;
  report.outputs["rows"] = rows;
  report.outputs["g_primes"] = profile.g_primes;
  report.outputs["i_product"] = dec(profile.i_product);
  report.outputs["l_product"] = dec(profile.l_product);
  report.identity_checks.push_back(
      check_eq("order_index_partition", profile.i_product * profile.l_product, phi));
}

void run_ppw_search(const RunConfig& config, Report& report, Budget& budget) {
  PrimeBasis basis = PrimeBasis::build(config.x);
  PowerProfile profile = power_profile(config.g, basis);
  PpwVariant variant = ppw_variant(config);
  PseudopowerRecord rec = least_pseudopower(profile, basis, variant, budget);
  report.outputs["g"] = config.g;
  report.outputs["x"] = config.x;
  report.outputs[variant == PpwVariant::q_g ? "q_g" : "p_g"] = rec.n;
  report.identity_checks.push_back({"is_pseudopower",
                                    is_pseudopower(rec.n, profile, variant) ? "true" : "false",
                                    "true", is_pseudopower(rec.n, profile, variant)});
  if (variant == PpwVariant::q_g) {
    PseudopowerRecord pg = least_pseudopower(profile, basis, PpwVariant::p_g, budget);
    report.outputs["p_g"] = pg.n;
    uint64_t ag = static_cast<uint64_t>(config.g < 0 ? -config.g : config.g);
    report.identity_checks.push_back(
        check_le("q_within_g_times_p", static_cast<double>(rec.n),
                 static_cast<double>(ag) * static_cast<double>(pg.n)));
  }
}

void run_ppw_count(const RunConfig& config, Report& report, Budget& budget) {
  PrimeBasis basis = PrimeBasis::build(config.x);
  PowerProfile profile = power_profile(config.g, basis);
  Window w = require_window(config);
  put_count_report(report, count_pseudopowers(profile, basis, w, config.bins, budget));
}

void run_ppw_verify(const RunConfig& config, Report& report, Budget& budget) {
  PrimeBasis basis = PrimeBasis::build(config.x);
  PowerProfile profile = power_profile(config.g, basis);
  bool full_period = false;
  Window w;
  if (auto given = window_from(config)) {
    w = *given;
  } else {
    w = Window(BigInt(0), basis.m_x);
    full_period = true;
  }

  PanResult pan = p_an_identity(profile, basis, w, budget);
  double tol = 1e-6 * static_cast<double>(std::max<uint64_t>(1, pan.terms));
  report.identity_checks.push_back(
      check_le("splitting_identity", std::abs(pan.value - profile.i_product.get_d() *
                                                              static_cast<double>(pan.direct)),
               tol));
  report.identity_checks.push_back(check_le("splitting_imaginary", std::abs(pan.raw.imag()), tol));
  report.outputs["p_an"] = pan.value;
  report.outputs["direct_closure_count"] = pan.direct;
  report.outputs["terms"] = pan.terms;

  if (full_period) {
    PeriodCount pc = exact_count_period(profile, basis);
    Budget aux{budget.limit, budget.used};
    CountReport cr = count_pseudopowers(profile, basis, w, 1, aux);
    budget.used = aux.used;
    report.identity_checks.push_back(
        check_eq("period_closure_count", pc.count_closure, BigInt(cr.count_closure)));
    report.identity_checks.push_back(check_eq(
        "period_strict_count", pc.count_closure - pc.count_true_powers, BigInt(cr.count)));
    report.outputs["count_closure"] = dec(pc.count_closure);
    report.outputs["count_true_powers"] = pc.count_true_powers;
  }

  // partition of the character tuples by conductor
  if (profile.rows.size() <= 20) {
    BigInt total = 0;
    size_t k = profile.rows.size();
    for (uint64_t mask = 0; mask < (1ull << k); ++mask) {
      BigInt f = 1;
      for (size_t i = 0; i < k; ++i) {
        if (mask & (1ull << i)) f *= static_cast<unsigned long>(profile.rows[i].p);
      }
      total += conductor_characters(profile, f);
    }
    report.identity_checks.push_back(check_eq("conductor_partition", total, profile.i_product));
  }
  report.outputs["g"] = config.g;
  report.outputs["x"] = config.x;
  report.outputs["window"] = window_json(w);
}

void run_ppw_weighted_sum(const RunConfig& config, Report& report, Budget& budget) {
  PrimeBasis basis = PrimeBasis::build(config.x);
  PowerProfile profile = power_profile(config.g, basis);
  WeightedSum ws = weighted_sum_sg(profile, basis, budget);
  double tol = 1e-6 * static_cast<double>(std::max<uint64_t>(1, ws.terms));
  report.outputs["value_re"] = ws.value.real();
  report.outputs["value_im"] = ws.value.imag();
  report.outputs["identity_rhs"] = ws.identity_rhs;
  report.outputs["p_g"] = ws.p_gx;
  report.outputs["terms"] = ws.terms;
  report.identity_checks.push_back(
      check_le("weighted_identity", std::abs(ws.value.real() - ws.identity_rhs), tol));
  report.identity_checks.push_back(check_le("weighted_imaginary", std::abs(ws.value.imag()), tol));
}

void run_charsum_rf(const RunConfig& config, Report& report, Budget& budget) {
  PrimeBasis basis = PrimeBasis::build(config.x);
  if (!config.f) throw std::invalid_argument("charsum rf needs --f");
  Window w = require_window(config);
  SumRecord rec = r_f(basis, *config.f, w, budget);
  PvBounds pv = pv_bounds(basis, *config.f);
  report.outputs["value"] = dec(rec.value);
  report.outputs["terms"] = rec.terms;
  report.outputs["f"] = dec(rec.modulus_f);
  report.outputs["pv_bound"] = pv.rf_bound;
  report.identity_checks.push_back(
      check_le("pv_remainder_bound", BigInt(abs(rec.value)).get_d(), pv.rf_bound));
}

void run_charsum_sum(const RunConfig& config, Report& report, Budget& budget) {
  if (config.q == 0) throw std::invalid_argument("charsum sum needs --q");
  Window w = require_window(config);
  SumRecord rec = char_sum(config.q, w, budget);
  double qd = static_cast<double>(config.q);
  double pv = std::sqrt(qd) * std::log(qd);
  report.outputs["value"] = dec(rec.value);
  report.outputs["terms"] = rec.terms;
  report.outputs["q"] = config.q;
  report.outputs["pv_bound"] = pv;
  report.identity_checks.push_back(check_le("pv_character_bound", BigInt(abs(rec.value)).get_d(), pv));
}

void run_charsum_bounds(const RunConfig& config, Report& report, Budget&) {
  bool any = false;
  if (config.f) {
    PrimeBasis basis = PrimeBasis::build(config.x);
    PvBounds pv = pv_bounds(basis, *config.f);
    report.outputs["f"] = dec(*config.f);
    report.outputs["rf_bound"] = pv.rf_bound;
    report.outputs["generic_bound"] = pv.generic_bound;
    any = true;
  }
  if (config.q != 0) {
    if (!config.len) throw std::invalid_argument("gr bound needs --len");
    GrBound gr = gr_bound({config.q, *config.len, config.r});
    report.outputs["q"] = config.q;
    report.outputs["r"] = config.r;
    report.outputs["gr_bound"] = gr.value;
    report.outputs["vacuous"] = gr.vacuous;
    any = true;
  }
  if (!any) throw std::invalid_argument("charsum bounds needs --f (with --x) or --q with --r and --len");
}

void run_charsum_choose_r(const RunConfig& config, Report& report, Budget&) {
  ChosenR chosen = choose_r(config.x_real, r_variant(config));
  report.outputs["x"] = config.x_real;
  report.outputs["r"] = chosen.r;
  report.outputs["degenerate"] = chosen.degenerate;
  report.outputs["variant"] = config.variant.empty() ? "theorem1" : config.variant;
}

}  // namespace

DispatchResult dispatch(const RunConfig& config) {
  DispatchResult result;
  Report& report = result.report;
  report.command = name_of(config.command);
  report.inputs["budget"] = config.budget;
  report.inputs["seed"] = config.seed;
  if (config.command == Command::charsum_choose_r) {
    report.inputs["x"] = config.x_real;
  } else if (config.command != Command::charsum_sum && config.command != Command::charsum_bounds) {
    report.inputs["x"] = config.x;
  }
  if (config.from) report.inputs["from"] = dec(*config.from);
  if (config.len) report.inputs["len"] = dec(*config.len);
  if (!config.variant.empty()) report.inputs["variant"] = config.variant;

  Budget budget{config.budget, 0};
  auto t0 = std::chrono::steady_clock::now();
  try {
    switch (config.command) {
      case Command::psq_search: run_psq_search(config, report, budget); break;
      case Command::psq_pigeonhole: run_psq_pigeonhole(config, report, budget); break;
      case Command::psq_count: run_psq_count(config, report, budget); break;
      case Command::psq_verify_identity: run_psq_verify(config, report, budget); break;
      case Command::ppw_profile: run_ppw_profile(config, report, budget); break;
      case Command::ppw_search: run_ppw_search(config, report, budget); break;
      case Command::ppw_count: run_ppw_count(config, report, budget); break;
      case Command::ppw_verify_identity: run_ppw_verify(config, report, budget); break;
      case Command::ppw_weighted_sum: run_ppw_weighted_sum(config, report, budget); break;
      case Command::charsum_rf: run_charsum_rf(config, report, budget); break;
      case Command::charsum_sum: run_charsum_sum(config, report, budget); break;
      case Command::charsum_bounds: run_charsum_bounds(config, report, budget); break;
      case Command::charsum_choose_r: run_charsum_choose_r(config, report, budget); break;
    }
    result.exit_code = kExitOk;
    for (const auto& c : report.identity_checks) {
      if (!c.pass) result.exit_code = kExitIdentityFailure;
    }
  } catch (const budget_error& e) {
    report.outputs["error"] = e.what();
    result.exit_code = kExitBudget;
  } catch (const std::invalid_argument& e) {
    report.outputs["error"] = e.what();
    result.exit_code = kExitUsage;
  } catch (const std::exception& e) {
    report.outputs["error"] = e.what();
    result.exit_code = kExitIdentityFailure;
  }
  report.outputs["budget_used"] = budget.used;
  report.timing_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return result;
}

std::string render(const Report& report, OutputFormat format) {
  if (format == OutputFormat::json) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : report.identity_checks) checks.push_back(to_json(c));
    nlohmann::json j = {
        {"command", report.command},
        {"inputs", report.inputs},
        {"outputs", report.outputs},
        {"identity_checks", checks},
        {"timing_ms", report.timing_ms},
    };
    return j.dump(2) + "\n";
  }
  std::ostringstream out;
  if (report.outputs.contains("bins")) {
    out << "bin_start,bin_end,count,model\n";
    for (const auto& b : report.outputs["bins"]) {
      out << b["bin_start"].get<std::string>() << ',' << b["bin_end"].get<std::string>() << ','
          << b["count"].get<uint64_t>() << ',' << dec(b["model"].get<double>()) << '\n';
    }
    return out.str();
  }
  out << "key,value\n";
  out << "command," << report.command << '\n';
  for (const auto& [key, value] : report.outputs.items()) {
    if (value.is_structured()) continue;
    out << key << ',' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
  }
  for (const auto& c : report.identity_checks) {
    out << "check." << c.name << ',' << (c.pass ? "pass" : "fail") << '\n';
  }
  return out.str();
}

}  // namespace pspp
