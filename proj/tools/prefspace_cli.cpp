#include <prefspace/harness.hpp>

#include <CLI11.hpp>

#include <iomanip>
#include <iostream>

using namespace prefspace;

namespace {

constexpr int kOk = 0;
constexpr int kInvariantFailure = 1;
constexpr int kUsage = 2;

int do_run(const std::string& config_path, const std::string& n_range, const std::string& claims,
           const std::optional<std::uint64_t>& seed, const std::optional<int>& samples,
           const std::optional<int>& random_sets, const std::optional<int>& random_cases, const std::string& out,
           bool json, bool full_sweep, bool deterministic, const std::optional<int>& threads) {
  RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
  if (!n_range.empty()) cfg.n_range = parse_n_range(n_range);
  if (!claims.empty()) cfg.claims = split_list(claims);
  if (seed) cfg.seed = *seed;
  if (samples) cfg.samples = *samples;
  if (random_sets) cfg.random_sets = *random_sets;
  if (random_cases) cfg.random_cases = *random_cases;
  if (!out.empty()) cfg.out = out;
  if (full_sweep) cfg.full_sweep = true;
  if (deterministic) cfg.deterministic = true;
  if (threads) cfg.threads = *threads;

  const auto m = run(cfg);
  if (!cfg.out.empty()) write_outputs(m, cfg.out);
  if (json) {
    std::cout << dump(to_json(m));
  } else {
    for (const auto& r : m.runs) {
      const auto& c = r.report;
      std::cout << std::left << std::setw(22) << c.claim << "n=" << std::setw(3) << c.n << std::setw(10)
                << verdict_name(c.verdict) << (c.invariants_ok() ? "ok" : "INVARIANT FAILURE");
      if (!cfg.deterministic) std::cout << "  " << c.runtime_ms << "ms";
      std::cout << '\n';
      for (const auto& f : c.invariant_failures) std::cout << "    " << f << '\n';
    }
    for (const auto& s : m.skipped)
      std::cout << "skipped " << s["claim"].get<std::string>() << " n=" << s["n"] << " (" << s["reason"].get<std::string>()
                << ")\n";
    if (!cfg.out.empty()) std::cout << "wrote " << cfg.out << "/manifest.json\n";
  }
  return m.invariants_ok() ? kOk : kInvariantFailure;
}

int do_list(bool json, const std::string& module) {
  const auto cs = claims_for_module(module);
  if (json) {
    Json a = Json::array();
    for (const auto& c : cs) a.push_back(to_json(c));
    std::cout << dump(a);
  } else {
    std::cout << catalog_text(cs);
  }
  return kOk;
}

int do_ces(double alpha, const std::string& target, const std::string& schedule, const std::string& grid,
           const std::string& out, bool json) {
  std::vector<LimitTarget> targets;
  if (target == "all" || target == "cobb_douglas") targets.push_back(LimitTarget::CobbDouglas);
  if (target == "all" || target == "leontief") targets.push_back(LimitTarget::Leontief);
  if (target == "all" || target == "leontief_weighted") targets.push_back(LimitTarget::LeontiefWeighted);
  if (targets.empty()) throw UsageError("unknown target: " + target);

  std::vector<Bundle<double>> g;
  if (grid.empty()) {
    g = log_grid();
  } else {
    const auto parts = split_list(grid);
    if (parts.size() != 3) throw UsageError("grid is lo,hi,k");
    try {
      g = log_grid(std::stod(parts[0]), std::stod(parts[1]), std::stoi(parts[2]));
    } catch (const DomainError&) {
      throw;
    } catch (const std::exception&) {
      throw UsageError("bad grid: " + grid);
    }
  }
  std::vector<double> sched;
  for (const auto& s : split_list(schedule)) {
    try {
      sched.push_back(std::stod(s));
    } catch (const std::exception&) {
      throw UsageError("bad sigma: " + s);
    }
  }

  Json report{{"alpha", alpha}, {"limits", Json::array()}};
  for (auto t : targets) {
    const auto r = limit_check(t, alpha, g, sched.empty() ? default_schedule(t) : sched);
    report["limits"].push_back(to_json(r));
    if (!out.empty()) {
      std::filesystem::create_directories(out);
      write_file(std::filesystem::path(out) / (std::string("limit_") + target_name(t) + ".csv"), limit_csv(r));
    }
    if (!json) {
      std::cout << target_name(t) << (r.monotone ? " (decreasing)" : " (not decreasing)") << '\n' << limit_csv(r);
    }
  }
  const auto comp = compensation_check(Rational(1, 2), Budget<Rational>{1, 1, 10}, 2, 1, {0.5, 0.1, 0.01});
  report["compensation"] = to_json(comp);
  if (!out.empty()) {
    write_file(std::filesystem::path(out) / "compensation.csv", compensation_csv(comp));
    write_file(std::filesystem::path(out) / "ces.json", dump(report));
  }
  if (json)
    std::cout << dump(report);
  else
    std::cout << "compensation (alpha 1/2, p (1,1) -> (2,1), w 10 -> 15)\n" << compensation_csv(comp);
  return kOk;
}

int do_trace(const TraceRequest& t, const std::string& out) {
  const auto csv = trace(t);
  if (out.empty()) {
    std::cout << csv;
  } else {
    const std::filesystem::path p(out);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
    write_file(p, csv);
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite topologies on preference spaces: claim checkers and demos"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "run claim checkers and write reports");
  std::string config_path, n_range, claims, out;
  std::optional<std::uint64_t> seed;
  std::optional<int> samples, random_sets, random_cases, threads;
  bool json = false, full_sweep = false, deterministic = false;
  run_cmd->add_option("--config", config_path, "JSON config file; flags override it");
  run_cmd->add_option("--n", n_range, "sizes: 3, 2..5 or 2,3,5");
  run_cmd->add_option("--claims", claims, "comma-separated claim ids, or all");
  run_cmd->add_option("--seed", seed, "master seed");
  run_cmd->add_option("--samples", samples, "random probes per oracle call");
  run_cmd->add_option("--random-sets", random_sets, "sampled subsets where exhaustive is too big");
  run_cmd->add_option("--random-cases", random_cases, "random utility pairs / boxes");
  run_cmd->add_option("--out", out, "output directory");
  run_cmd->add_option("--threads", threads, "worker threads");
  run_cmd->add_flag("--json", json, "print the manifest as JSON");
  run_cmd->add_flag("--full-sweep", full_sweep, "check every topology in the theorem4 sweep");
  run_cmd->add_flag("--deterministic", deterministic, "zero runtimes and omit the timestamp");

  auto* list_cmd = app.add_subcommand("list-claims", "list claim ids");
  bool list_json = false;
  std::string module;
  list_cmd->add_flag("--json", list_json, "JSON catalog");
  list_cmd->add_option("--module", module, "only claims of this module");

  auto* ces_cmd = app.add_subcommand("ces", "CES limit and compensation demo");
  double alpha = 0.5;
  std::string target = "all", schedule, grid, ces_out;
  bool ces_json = false;
  ces_cmd->add_option("--alpha", alpha, "weight on good 1");
  ces_cmd->add_option("--target", target, "cobb_douglas, leontief, leontief_weighted or all");
  ces_cmd->add_option("--schedule", schedule, "comma-separated sigmas");
  ces_cmd->add_option("--grid", grid, "lo,hi,k (log grid)");
  ces_cmd->add_option("--out", ces_out, "output directory for CSV and JSON");
  ces_cmd->add_flag("--json", ces_json, "print JSON");

  auto* trace_cmd = app.add_subcommand("trace", "CSV trace of a utility sequence or path");
  TraceRequest tr;
  std::string trace_out;
  trace_cmd->add_option("--construction", tr.construction,
                        "flatten_global, flatten_middle, prop1, prop3_lower, prop3_upper or three_step");
  trace_cmd->add_option("--u", tr.u, "utility vector, e.g. 3,2,1/2");
  trace_cmd->add_option("--v", tr.v, "end utility for three_step");
  trace_cmd->add_option("--x", tr.x, "first anchor alternative");
  trace_cmd->add_option("--y", tr.y, "second anchor alternative");
  trace_cmd->add_option("--depth", tr.depth, "sequence indices 1, 2, 4, ..., 2^depth");
  trace_cmd->add_option("--samples", tr.samples, "path sample count");
  trace_cmd->add_option("--out", trace_out, "CSV file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*run_cmd)
      return do_run(config_path, n_range, claims, seed, samples, random_sets, random_cases, out, json, full_sweep,
                    deterministic, threads);
    if (*list_cmd) return do_list(list_json, module);
    if (*ces_cmd) return do_ces(alpha, target, schedule, grid, ces_out, ces_json);
    if (*trace_cmd) return do_trace(tr, trace_out);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {  // precondition / dimension errors from inputs
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvariantFailure;
  }
  return kUsage;
}
