#pragma once

// Claim catalog, run configuration and the run driver behind the CLI.

#include <prefspace/claims.hpp>
#include <prefspace/econ.hpp>
#include <prefspace/exogenous.hpp>
#include <prefspace/paths.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace prefspace {

inline constexpr const char* kToolName = "prefspace";
inline constexpr const char* kToolVersion = "0.1.0";

// Bad command line or config file; maps to exit status 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ClaimInfo {
  std::string id;
  std::string anchor;
  std::string module;
  int min_n;
  int max_n;
  bool fixed_n;  // runs once, ignoring the n range
  std::string summary;
};

inline const std::vector<ClaimInfo>& claim_catalog() {
  static const std::vector<ClaimInfo> catalog{
      {"box_image", "Lemmas openmap1, openmap2", "final-topology", 2, 5, false,
       "images of open boxes under F are open, over U, U* and U^s"},
      {"basis_sets", "Lemma opensets2", "final-topology", 2, 5, false,
       "agreement sets B(p,A) are open and equal the meet of their pair sets, over U, U* and U^s"},
      {"ces_limits", "CES limits and demand", "econ-demo", 2, 2, true,
       "CES tends to Cobb-Douglas and Leontief; demand oracle; compensation"},
      {"homotopy", "Lemma Upathconnected", "utility-paths", 3, 6, false,
       "three-step paths between random utilities avoid constant functions"},
      {"lemma_locally_strict", "Lemma locally strict", "exogenous-topology", 1, 6, false,
       "strict orders are locally strict in their own contour topology"},
      {"lemma_opensets", "Lemma opensets", "final-topology", 1, 4, false,
       "refinement closure, numeric oracle and Sierpinski continuity agree on openness"},
      {"prop1", "Proposition 1", "final-topology", 2, 5, false,
       "adding any non-strict preference to P^s breaks T1"},
      {"prop3_finite", "Proposition 3", "exogenous-topology", 1, 6, false,
       "P^ci is empty for finite X"},
      {"sequences", "Lemma indifference", "utility-paths", 2, 6, false,
       "flattening and shift sequences keep their order and converge to the declared limit"},
      {"theorem1", "Theorem 1", "final-topology", 2, 6, false, "the final topology on P is trivial"},
      {"theorem2", "Theorem 2", "final-topology", 3, 5, false,
       "basis of T_P*, failure of Hausdorff, path-connectedness"},
      {"theorem3", "Theorem 3", "final-topology", 2, 6, false, "T_P^s is discrete with n! components"},
      {"theorem4_sweep", "Theorem 4", "exogenous-topology", 1, 4, false,
       "P^cls is Hausdorff in the final topology, for every topology on X"},
  };
  return catalog;
}

inline const ClaimInfo& claim_info(const std::string& id) {
  for (const auto& c : claim_catalog())
    if (c.id == id) return c;
  throw UsageError("unknown claim: " + id);
}

inline Json to_json(const ClaimInfo& c) {
  return Json{{"id", c.id},       {"anchor", c.anchor},   {"module", c.module}, {"min_n", c.min_n},
              {"max_n", c.max_n}, {"fixed_n", c.fixed_n}, {"summary", c.summary}};
}

inline std::vector<ClaimInfo> claims_for_module(const std::string& module) {
  std::vector<ClaimInfo> out;
  for (const auto& c : claim_catalog())
    if (module.empty() || c.module == module) out.push_back(c);
  if (out.empty()) throw UsageError("no claims in module: " + module);
  return out;
}

inline std::string catalog_text(const std::vector<ClaimInfo>& cs) {
  std::ostringstream os;
  for (const auto& c : cs) {
    os << std::left << std::setw(22) << c.id << std::setw(28) << c.anchor << std::setw(20) << c.module;
    os << (c.fixed_n ? "fixed" : "n=" + std::to_string(c.min_n) + ".." + std::to_string(c.max_n)) << '\n';
  }
  return os.str();
}

struct RunConfig {
  std::vector<int> n_range{2, 3, 4};
  std::vector<std::string> claims{"all"};
  std::uint64_t seed = 0;
  int samples = 4;
  std::vector<double> epsilons{0.25, 0.05, 0.01};
  int random_sets = 500;
  int random_cases = 1000;
  std::string out;
  bool full_sweep = false;
  bool deterministic = false;  // zero runtimes, drop the timestamp
  int threads = 1;

  CheckOptions options() const {
    CheckOptions o;
    o.seed = seed;
    o.samples = samples;
    o.epsilons = epsilons;
    o.random_sets = random_sets;
    o.random_cases = random_cases;
    return o;
  }

  std::vector<std::string> resolved_claims() const {
    std::vector<std::string> ids;
    for (const auto& c : claims) {
      if (c == "all") {
        for (const auto& info : claim_catalog()) ids.push_back(info.id);
      } else {
        ids.push_back(claim_info(c).id);
      }
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
  }

  void validate() const {
    if (n_range.empty()) throw UsageError("empty n range");
    for (int n : n_range)
      if (n < 1 || n > 8) throw UsageError("n must lie in 1..8, got " + std::to_string(n));
    if (claims.empty()) throw UsageError("no claims requested");
    resolved_claims();
    if (samples < 0 || random_sets < 0 || random_cases < 0) throw UsageError("counts must be nonnegative");
    if (epsilons.empty()) throw UsageError("empty epsilon schedule");
    for (double e : epsilons)
      if (!(e > 0 && e < 1)) throw UsageError("epsilons must lie in (0,1)");
    if (threads < 1) throw UsageError("threads must be positive");
  }
};

// "3", "2..5" or "2,3,5".
inline std::vector<int> parse_n_range(const std::string& s) {
  std::vector<int> out;
  try {
    const auto dots = s.find("..");
    if (dots != std::string::npos) {
      std::size_t used = 0;
      const int lo = std::stoi(s.substr(0, dots), &used);
      if (used != dots) throw UsageError("");
      const std::string rest = s.substr(dots + 2);
      const int hi = std::stoi(rest, &used);
      if (used != rest.size() || hi < lo) throw UsageError("");
      for (int n = lo; n <= hi; ++n) out.push_back(n);
    } else {
      std::stringstream ss(s);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        std::size_t used = 0;
        out.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw UsageError("");
      }
    }
  } catch (const std::exception&) {
    throw UsageError("bad n range: '" + s + "' (use 3, 2..5 or 2,3,5)");
  }
  if (out.empty()) throw UsageError("bad n range: '" + s + "'");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ','))
    if (!tok.empty()) out.push_back(tok);
  return out;
}

inline RunConfig config_from_json(const Json& j) {
  static const std::vector<std::string> known{"n_range", "claims",       "seed",       "samples",
                                              "epsilons", "random_sets", "random_cases", "out",
                                              "full_sweep", "deterministic", "threads"};
  if (!j.is_object()) throw UsageError("config must be a JSON object");
  RunConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (std::find(known.begin(), known.end(), key) == known.end()) throw UsageError("unknown config key: " + key);
      if (key == "n_range")
        c.n_range = value.is_string() ? parse_n_range(value.get<std::string>()) : value.get<std::vector<int>>();
      else if (key == "claims")
        c.claims = value.get<std::vector<std::string>>();
      else if (key == "seed")
        c.seed = value.get<std::uint64_t>();
      else if (key == "samples")
        c.samples = value.get<int>();
      else if (key == "epsilons")
        c.epsilons = value.get<std::vector<double>>();
      else if (key == "random_sets")
        c.random_sets = value.get<int>();
      else if (key == "random_cases")
        c.random_cases = value.get<int>();
      else if (key == "out")
        c.out = value.get<std::string>();
      else if (key == "full_sweep")
        c.full_sweep = value.get<bool>();
      else if (key == "deterministic")
        c.deterministic = value.get<bool>();
      else if (key == "threads")
        c.threads = value.get<int>();
    }
  } catch (const Json::exception& e) {
    throw UsageError(std::string("bad config value: ") + e.what());
  }
  return c;
}

inline RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("malformed config file " + path + ": " + e.what());
  }
  return config_from_json(j);
}

inline Json to_json(const RunConfig& c) {
  return Json{{"n_range", c.n_range},
              {"claims", c.resolved_claims()},
              {"seed", c.seed},
              {"samples", c.samples},
              {"epsilons", c.epsilons},
              {"random_sets", c.random_sets},
              {"random_cases", c.random_cases},
              {"full_sweep", c.full_sweep},
              {"deterministic", c.deterministic}};
}

// Reports over the three utility ambients merged into one.
inline ClaimReport merge_ambients(const std::string& claim, int n, const CheckOptions& o,
                                  const std::function<ClaimReport(Ambient)>& check) {
  Stopwatch clock;
  auto r = detail::start_report(claim, n, "P, P*, P^s", o);
  bool all = true;
  for (Ambient a : {Ambient::U, Ambient::UStar, Ambient::UStrict}) {
    auto sub = check(a);
    all &= sub.verdict == Verdict::Confirmed;
    r.disagreements += sub.disagreements;
    for (const auto& f : sub.invariant_failures) r.invariant_failures.push_back(std::string(ambient_name(a)) + ": " + f);
    auto j = sub.subverdicts;
    j["verdict"] = verdict_name(sub.verdict);
    j["disagreements"] = sub.disagreements;
    r.subverdicts[ambient_name(a)] = j;
    if (!sub.witness.is_null() && r.witness.is_null()) r.witness = Json{{"ambient", ambient_name(a)}, {"detail", sub.witness}};
  }
  r.verdict = verdict_of(all);
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

struct ClaimRun {
  ClaimReport report;
  Json extra = nullptr;  // theorem4 sweep list
};

inline ClaimRun run_claim(const std::string& id, int n, const RunConfig& cfg) {
  const auto o = cfg.options();
  ClaimRun out;
  if (id == "lemma_opensets") out.report = check_lemma_opensets_suite(n, Ambient::U, o);
  else if (id == "theorem1") out.report = check_theorem1(n, o);
  else if (id == "theorem2") out.report = check_theorem2(n, o);
  else if (id == "theorem3") out.report = check_theorem3(n, o);
  else if (id == "prop1") out.report = check_prop1(n, o);
  else if (id == "basis_sets")
    out.report = merge_ambients(id, n, o, [&](Ambient a) { return check_basis_sets(n, a, o); });
  else if (id == "box_image")
    out.report = merge_ambients(id, n, o, [&](Ambient a) { return check_box_images(n, a, o); });
  else if (id == "sequences") out.report = check_sequences(n, o);
  else if (id == "homotopy") out.report = check_homotopy(n, o);
  else if (id == "prop3_finite") out.report = check_prop3_finite(n, o);
  else if (id == "lemma_locally_strict") out.report = check_lemma_locally_strict(n, o);
  else if (id == "theorem4_sweep") {
    const auto sweep = theorem4_sweep(n, o, cfg.full_sweep);
    out.report = summarize_sweep(n, sweep, cfg.full_sweep, o);
    out.extra = sweep_json(sweep);
  } else if (id == "ces_limits") out.report = check_ces(cfg.seed);
  else throw UsageError("unknown claim: " + id);
  return out;
}

struct RunManifest {
  Json config;
  std::vector<ClaimRun> runs;
  Json skipped = Json::array();
  std::int64_t total_runtime_ms = 0;
  std::string generated_at;

  bool invariants_ok() const {
    return std::all_of(runs.begin(), runs.end(), [](const ClaimRun& r) { return r.report.invariants_ok(); });
  }
};

inline Json to_json(const RunManifest& m) {
  Json reports = Json::array();
  int confirmed = 0, refuted = 0;
  for (const auto& r : m.runs) {
    reports.push_back(to_json(r.report));
    (r.report.verdict == Verdict::Confirmed ? confirmed : refuted)++;
  }
  Json j{{"tool", kToolName}, {"version", kToolVersion}};
  if (!m.generated_at.empty()) j["generated_at"] = m.generated_at;
  j["config"] = m.config;
  j["reports"] = reports;
  j["skipped"] = m.skipped;
  j["summary"] = Json{{"reports", m.runs.size()}, {"confirmed", confirmed}, {"refuted", refuted}};
  j["invariants_ok"] = m.invariants_ok();
  j["total_runtime_ms"] = m.total_runtime_ms;
  return j;
}

inline std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

// Jobs run on `threads` workers; results are placed by job index, so the
// manifest does not depend on scheduling.
inline RunManifest run(const RunConfig& cfg) {
  cfg.validate();
  Stopwatch clock;
  RunManifest m;
  m.config = to_json(cfg);

  std::vector<std::pair<std::string, int>> jobs;
  for (const auto& id : cfg.resolved_claims()) {
    const auto& info = claim_info(id);
    if (info.fixed_n) {
      jobs.emplace_back(id, info.min_n);
      continue;
    }
    for (int n : cfg.n_range) {
      if (n < info.min_n || n > info.max_n)
        m.skipped.push_back(Json{{"claim", id}, {"n", n},
                                 {"reason", "outside n=" + std::to_string(info.min_n) + ".." + std::to_string(info.max_n)}});
      else
        jobs.emplace_back(id, n);
    }
  }

  m.runs.resize(jobs.size());
  std::vector<std::exception_ptr> errors(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < jobs.size();) {
      try {
        m.runs[k] = run_claim(jobs[k].first, jobs[k].second, cfg);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const int nthreads = std::min<int>(cfg.threads, static_cast<int>(std::max<std::size_t>(jobs.size(), 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  if (cfg.deterministic) {
    for (auto& r : m.runs) r.report.runtime_ms = 0;
  } else {
    m.total_runtime_ms = clock.elapsed_ms();
    m.generated_at = utc_now();
  }
  return m;
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

inline std::string summary_csv(const RunManifest& m) {
  std::ostringstream os;
  os << "claim,n,verdict,invariants_ok,disagreements,runtime_ms\n";
  for (const auto& r : m.runs)
    os << r.report.claim << ',' << r.report.n << ',' << verdict_name(r.report.verdict) << ','
       << (r.report.invariants_ok() ? "true" : "false") << ',' << r.report.disagreements << ',' << r.report.runtime_ms
       << '\n';
  return os.str();
}

// manifest.json, one <claim>_n<n>.json per report, summary.csv, and the
// theorem 4 sweep lists.
inline void write_outputs(const RunManifest& m, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  write_file(dir / "manifest.json", dump(to_json(m)));
  for (const auto& r : m.runs) {
    const std::string stem = r.report.claim + "_n" + std::to_string(r.report.n);
    write_file(dir / (stem + ".json"), dump(to_json(r.report)));
    if (!r.extra.is_null()) write_file(dir / (stem + "_sweep.json"), dump(r.extra));
  }
  write_file(dir / "summary.csv", summary_csv(m));
}

// ---------------------------------------------------------------------------
// trace subcommand

// "3,1/2,-2" -> rationals
inline UtilityVector<Rational> parse_utility(const std::string& s) {
  UtilityVector<Rational> u;
  for (const auto& tok : split_list(s)) {
    try {
      std::size_t used = 0;
      const auto slash = tok.find('/');
      const std::string num = tok.substr(0, slash);
      const std::int64_t a = std::stoll(num, &used);
      if (used != num.size()) throw UsageError("");
      std::int64_t b = 1;
      if (slash != std::string::npos) {
        const std::string den = tok.substr(slash + 1);
        b = std::stoll(den, &used);
        if (used != den.size() || b == 0) throw UsageError("");
      }
      u.values.emplace_back(a, b);
    } catch (const std::exception&) {
      throw UsageError("bad utility entry '" + tok + "' (integers or p/q)");
    }
  }
  if (u.values.empty()) throw UsageError("empty utility vector");
  return u;
}

struct TraceRequest {
  std::string construction = "flatten_global";
  std::string u;
  std::string v;
  int x = 0;
  int y = 1;
  int depth = 10;    // sequences: n = 1, 2, 4, ..., 2^depth
  int samples = 10;  // paths: s = k / samples
};

inline const std::vector<std::string>& trace_constructions() {
  static const std::vector<std::string> names{"flatten_global", "flatten_middle", "prop1", "prop3_lower",
                                              "prop3_upper",    "three_step"};
  return names;
}

inline std::string trace(const TraceRequest& t) {
  if (t.u.empty()) throw UsageError("trace needs --u");
  const auto u = parse_utility(t.u);
  if (t.construction == "three_step") {
    if (t.v.empty()) throw UsageError("three_step needs --v");
    if (t.samples < 1) throw UsageError("samples must be positive");
    return trace_csv(path_trace(three_step_path(u, parse_utility(t.v)), t.samples), "s");
  }
  if (t.depth < 0 || t.depth > 40) throw UsageError("depth must lie in 0..40");
  auto seq = [&]() -> UtilitySequence<Rational> {
    if (t.construction == "flatten_global") return flatten_global(u);
    if (t.construction == "flatten_middle") return flatten_middle(u, Alternative{t.x}, Alternative{t.y});
    if (t.construction == "prop1") return prop1_sequence(u, Alternative{t.x}, Alternative{t.y});
    if (t.construction == "prop3_lower") return prop3_case_sequence(u, Alternative{t.x}, CollapseSide::Lower);
    if (t.construction == "prop3_upper") return prop3_case_sequence(u, Alternative{t.x}, CollapseSide::Upper);
    throw UsageError("unknown construction: " + t.construction);
  }();
  return trace_csv(verify_sequence(seq, 1e-2, t.depth).trace);
}

}  // namespace prefspace
