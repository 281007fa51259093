// Command-line entry point: demo runs, verification suites, scheme searches
// and metric reports, with human or machine-readable output.
//
// Exit codes: 0 pass, 1 check failure, 2 usage error, 3 resource refusal.

#include <cstdlib>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "anoncomm/census.hpp"
#include "anoncomm/harness.hpp"
#include "anoncomm/report.hpp"
#include "anoncomm/scheme_io.hpp"
#include "anoncomm/search.hpp"
#include "anoncomm/verifier.hpp"

namespace {

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitResource = 3;

using anoncomm::json;

std::uint64_t default_seed() {
  if (const char* env = std::getenv("ANONCOMM_SEED")) return std::strtoull(env, nullptr, 10);
  return 0;
}

void emit(const json& j, const std::string& format, const std::string& human) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

/// Share entropies of an arbitrary scheme, for verify reports.
json generic_metrics(const anoncomm::Scheme& scheme, std::uint64_t cap) {
  const anoncomm::SchemeParams pr = scheme.params();
  anoncomm::DistTable joint(static_cast<std::size_t>(pr.K) * pr.L);
  if (scheme.seed_states() > cap) throw anoncomm::CapExceeded(scheme.seed_states(), cap);
  for (std::uint64_t s = 0; s < scheme.seed_states(); ++s) {
    anoncomm::Outcome o;
    for (const auto& z : scheme.shares(s))
      o.insert(o.end(), z.elems().begin(), z.elems().end());
    joint.add(o);
  }
  std::vector<std::size_t> first(pr.L);
  for (std::uint32_t j = 0; j < pr.L; ++j) first[j] = j;
  const auto h1 = anoncomm::entropy(joint.marginal(first), pr.p);
  const auto hall = anoncomm::entropy(joint, pr.p);
  auto entry = [&](const anoncomm::EntropyValue& h) {
    json e;
    e["value"] = static_cast<double>(h.value) / pr.L;
    e["units"] = "p-ary-units";
    e["exact"] = h.exact;
    if (h.exact)
      e["rational"] =
          anoncomm::Rational(h.exact_value.num, h.exact_value.den * pr.L).str();
    return e;
  };
  json m;
  m["rate"] = anoncomm::rational_field(
      anoncomm::Rational(pr.L, static_cast<std::int64_t>(pr.K) * pr.N),
      "symbols-per-channel-use");
  m["rho"] = entry(h1);
  m["eta"] = entry(hall);
  return m;
}

int cmd_demo(const anoncomm::SchemeParams& params, std::uint32_t rounds,
             const std::string& transport, std::uint64_t seed, bool audit,
             const std::string& format) {
  anoncomm::SimConfig cfg;
  cfg.params = params;
  cfg.rounds = rounds;
  cfg.transport = transport == "stream" ? anoncomm::TransportKind::stream
                                        : anoncomm::TransportKind::in_process;
  cfg.seed = seed;
  cfg.audit = audit;
  const anoncomm::SimulationResult result = anoncomm::run_simulation(cfg);

  std::uint64_t correct = 0, completed = 0;
  for (const auto& log : result.logs) {
    if (log.completed) ++completed;
    if (log.correct) ++correct;
  }

  json j;
  j["command"] = "demo";
  j["params"] = anoncomm::params_json(params);
  j["rounds"] = rounds;
  j["completed_rounds"] = completed;
  j["correct_rounds"] = correct;
  j["messages_sent"] = result.messages_sent;
  j["audit_violations"] = result.audit_violations;
  j["audit"] = audit;

  std::string human;
  if (rounds <= 20) human += anoncomm::serialize_round_logs(result.logs);
  human += "demo: " + std::to_string(correct) + "/" + std::to_string(rounds) +
           " rounds decoded correctly, " + std::to_string(result.audit_violations) +
           " traffic-audit violations\n";
  emit(j, format, human);
  return (correct == rounds && result.audit_violations == 0) ? kExitPass
                                                             : kExitCheckFailure;
}

int cmd_verify(const anoncomm::SchemeParams& params,
               const std::vector<std::string>& checks, const std::string& scheme_path,
               std::uint64_t cap, const std::string& format) {
  std::unique_ptr<anoncomm::Scheme> scheme;
  if (scheme_path.empty())
    scheme = std::make_unique<anoncomm::AdditionScheme>(params);
  else
    scheme = anoncomm::load_scheme(scheme_path, params);

  const std::set<std::string> wanted(checks.begin(), checks.end());
  const bool all = wanted.empty() || wanted.count("all");
  auto selected = [&](const std::string& name) { return all || wanted.count(name); };

  std::vector<anoncomm::CheckReport> reports;
  if (selected("correctness")) reports.push_back(check_correctness(*scheme, cap));
  if (selected("anonymity")) reports.push_back(check_anonymity(*scheme, cap));
  if (selected("security")) reports.push_back(check_security(*scheme, cap));
  if (selected("collusion")) {
    const std::uint32_t K = params.K;
    for (std::uint32_t mask = 0; mask < (1u << K); ++mask) {
      std::set<std::uint32_t> colluders;
      for (std::uint32_t i = 0; i < K; ++i)
        if (mask & (1u << i)) colluders.insert(i + 1);
      if (colluders.size() > K - 2) continue;
      reports.push_back(check_collusion(*scheme, colluders, cap));
    }
  }
  if (selected("transcript-uniform"))
    reports.push_back(check_transcript_uniform(*scheme, cap));
  if (selected("share-determinism"))
    reports.push_back(check_share_determinism(*scheme, cap));
  if (selected("decoder-latin-structure"))
    reports.push_back(check_decoder_latin_structure(*scheme, cap));
  if (reports.empty()) {
    std::cerr << "no known checks selected\n";
    return kExitUsage;
  }

  bool all_pass = true;
  json jreports = json::array();
  std::string human;
  for (const auto& rep : reports) {
    if (rep.verdict == anoncomm::Verdict::fail) all_pass = false;
    jreports.push_back(anoncomm::to_json(rep));
    human += rep.check_name;
    if (rep.info.count("colluders")) human += " " + rep.info.at("colluders");
    human += ": " + std::string(to_string(rep.verdict));
    if (rep.witness) human += "  [" + rep.witness->description + "]";
    human += "\n";
  }

  json j;
  j["command"] = "verify";
  j["params"] = anoncomm::params_json(params);
  j["scheme"] = scheme->name();
  j["metrics"] = generic_metrics(*scheme, cap);
  j["reports"] = jreports;
  j["verdict"] = all_pass ? "pass" : "fail";
  human += std::string("verify: ") + (all_pass ? "pass" : "fail") + "\n";
  emit(j, format, human);
  return all_pass ? kExitPass : kExitCheckFailure;
}

int cmd_search(const std::string& model_name, const anoncomm::SchemeParams& params,
               const std::vector<std::uint32_t>& seed_dims, bool stop_at_first,
               unsigned workers, std::uint64_t cap, const std::string& checkpoint,
               const std::string& format) {
  const anoncomm::SchemeModel model = model_name == "linear"
                                          ? anoncomm::SchemeModel::linear
                                          : anoncomm::SchemeModel::general;
  anoncomm::SearchOptions opt;
  opt.stop_at_first = stop_at_first;
  opt.workers = workers;
  opt.cap = cap;
  opt.checkpoint_path = checkpoint;

  json jresults = json::array();
  std::string human;
  std::optional<std::uint32_t> min_dim;
  for (const auto s : seed_dims) {
    const anoncomm::SearchResult r = anoncomm::search(model, params, s, opt);
    if (r.valid_schemes_found > 0 && !min_dim) min_dim = s;
    jresults.push_back(anoncomm::to_json(r));
    human += "seed_dim " + std::to_string(s) + ": " +
             std::to_string(r.valid_schemes_found) + " valid of " +
             std::to_string(r.space_size) + " candidates";
    if (r.min_rho) human += ", min_rho " + r.min_rho->str();
    if (r.min_eta) human += ", min_eta " + r.min_eta->str();
    human += "\n";
  }
  json j;
  j["command"] = "search";
  j["model"] = model_name;
  j["params"] = anoncomm::params_json(params);
  j["results"] = jresults;
  if (min_dim) {
    j["min_seed_dimension"] = *min_dim;
    human += "min seed dimension with a valid scheme: " + std::to_string(*min_dim) + "\n";
  } else {
    j["min_seed_dimension"] = nullptr;
    human += "no valid scheme found at the searched seed dimensions\n";
  }
  emit(j, format, human);
  return kExitPass;
}

int cmd_census(unsigned workers, const std::string& format) {
  const anoncomm::DecoderCensus census = anoncomm::forced_decoder_census(workers);
  json j;
  j["command"] = "census";
  j["params"] = anoncomm::params_json(anoncomm::SchemeParams{3, 2, 1, 1});
  j["census"] = anoncomm::to_json(census);
  std::string human =
      "decoder census (K=3, p=2): " + std::to_string(census.accepted_decoders.size()) +
      " distinct accepted decoders, " + std::to_string(census.accepted_classes) +
      " accepted scheme classes\n" +
      "all Latin: " + (census.all_latin ? "yes" : "no") +
      ", all match addition up to a constant: " +
      (census.all_match_addition_up_to_constant ? "yes" : "no") +
      ", addition decoder present: " +
      (census.addition_decoder_present ? "yes" : "no") + "\n";
  emit(j, format, human);
  return kExitPass;
}

int cmd_metrics(const anoncomm::SchemeParams& params, std::uint64_t cap,
                const std::string& format) {
  const anoncomm::SchemeMetrics m = anoncomm::metrics(params, cap);
  json j;
  j["command"] = "metrics";
  j["params"] = anoncomm::params_json(params);
  j["metrics"] = anoncomm::to_json(m);
  const std::string human = "rate = " + m.rate.str() + " symbols/channel use\n" +
                            "rho  = " + m.rho.str() + " p-ary units\n" +
                            "eta  = " + m.eta.str() + " p-ary units\n";
  emit(j, format, human);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anonymous communication protocol: demo, verification, search, metrics"};
  app.require_subcommand(1);

  std::uint32_t k = 3, p = 2, l = 1;
  std::uint32_t rounds = 10;
  std::uint64_t seed = default_seed();
  std::uint64_t cap = anoncomm::kDefaultStateCap;
  unsigned workers = 1;
  std::string format = "human";
  std::string transport = "in-process";
  bool audit = false;
  std::string scheme_path;
  std::vector<std::string> checks;
  std::string model = "general";
  std::vector<std::uint32_t> seed_dims;
  bool stop_at_first = false;
  std::string checkpoint;

  auto add_params = [&](CLI::App* sub) {
    sub->add_option("--k", k, "number of transmitters (>= 2)");
    sub->add_option("--p", p, "field prime (2,3,5,7,11,13)");
    sub->add_option("--l", l, "message length in symbols");
    sub->add_option("--max-states", cap, "state-space cap for enumerations");
    sub->add_option("--format", format)->check(CLI::IsMember({"human", "json"}));
    sub->add_option("--workers", workers, "parallel workers");
  };

  CLI::App* demo = app.add_subcommand("demo", "run the protocol as a K+2 actor simulation");
  add_params(demo);
  demo->add_option("--rounds", rounds, "number of rounds");
  demo->add_option("--seed", seed, "generator seed (default: ANONCOMM_SEED or 0)");
  demo->add_option("--transport", transport)
      ->check(CLI::IsMember({"in-process", "stream"}));
  demo->add_flag("--audit", audit, "include theta in round logs");

  CLI::App* verify = app.add_subcommand("verify", "run property checks");
  add_params(verify);
  verify->add_option("--checks", checks,
                     "checks to run (all, correctness, anonymity, security, "
                     "collusion, transcript-uniform, share-determinism, "
                     "decoder-latin-structure)")
      ->delimiter(',');
  verify->add_option("--scheme", scheme_path, "scheme description file (.scheme)");

  CLI::App* search = app.add_subcommand("search", "brute-force scheme search");
  add_params(search);
  search->add_option("--model", model)->check(CLI::IsMember({"general", "linear"}));
  search->add_option("--seed-dims", seed_dims,
                     "seed dimensions to search (default: K-1)")
      ->delimiter(',');
  search->add_flag("--stop-at-first", stop_at_first);
  search->add_option("--checkpoint", checkpoint, "checkpoint file for long searches");

  CLI::App* census =
      app.add_subcommand("census", "decoder census over general schemes at K=3, p=2");
  census->add_option("--format", format)->check(CLI::IsMember({"human", "json"}));
  census->add_option("--workers", workers, "parallel workers");

  CLI::App* metrics = app.add_subcommand("metrics", "rate and randomness metrics");
  add_params(metrics);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    anoncomm::SchemeParams params{k, p, l, l};
    if (demo->parsed()) {
      if (rounds < 1) {
        std::cerr << "usage error: rounds must be >= 1\n";
        return kExitUsage;
      }
      params.validate();
      return cmd_demo(params, rounds, transport, seed, audit, format);
    }
    if (verify->parsed()) {
      params.validate();
      return cmd_verify(params, checks, scheme_path, cap, format);
    }
    if (search->parsed()) {
      params.validate();
      if (seed_dims.empty()) seed_dims.push_back(params.K - 1);
      return cmd_search(model, params, seed_dims, stop_at_first, workers, cap,
                        checkpoint, format);
    }
    if (census->parsed()) return cmd_census(workers, format);
    if (metrics->parsed()) {
      params.validate();
      return cmd_metrics(params, cap, format);
    }
  } catch (const anoncomm::CapExceeded& e) {
    std::cerr << "resource refusal: " << e.what() << "\n";
    return kExitResource;
  } catch (const anoncomm::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
