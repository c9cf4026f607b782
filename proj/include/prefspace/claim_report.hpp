#pragma once

// Verdict record produced by every claim checker.
//
// `verdict` is the scientific result about the claim. `invariants_ok` is about
// the tool itself: it turns false when two independent computations that must
// agree (combinatorial criterion vs numeric oracle, witness re-validation,
// exact identities) do not. Only the latter drives the process exit status.

#include <prefspace/json_io.hpp>

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

namespace prefspace {

enum class Verdict { Confirmed, Refuted };

inline const char* verdict_name(Verdict v) { return v == Verdict::Confirmed ? "CONFIRMED" : "REFUTED"; }
inline Verdict verdict_of(bool confirmed) { return confirmed ? Verdict::Confirmed : Verdict::Refuted; }

struct ClaimReport {
  std::string claim;
  int n = 0;
  std::string family;
  Verdict verdict = Verdict::Confirmed;
  Json subverdicts = Json::object();
  Json witness = nullptr;
  int oracle_samples = 0;
  std::vector<double> epsilons;
  int disagreements = 0;
  std::uint64_t seed = 0;
  std::int64_t runtime_ms = 0;
  std::vector<std::string> invariant_failures;

  bool invariants_ok() const { return disagreements == 0 && invariant_failures.empty(); }

  // Records a failed internal cross-check.
  void require(bool ok, const std::string& what) {
    if (!ok) invariant_failures.push_back(what);
  }
};

inline Json to_json(const ClaimReport& r) {
  Json j;
  j["claim"] = r.claim;
  j["n"] = r.n;
  j["family"] = r.family;
  j["verdict"] = verdict_name(r.verdict);
  j["subverdicts"] = r.subverdicts;
  j["witness"] = r.witness;
  j["oracle"] = Json{{"samples", r.oracle_samples}, {"epsilons", r.epsilons}, {"disagreements", r.disagreements}};
  j["seed"] = r.seed;
  j["runtime_ms"] = r.runtime_ms;
  j["invariants_ok"] = r.invariants_ok();
  j["invariant_failures"] = r.invariant_failures;
  return j;
}

inline Json to_json(const std::vector<WeakOrder>& ws) {
  Json a = Json::array();
  for (const auto& w : ws) a.push_back(w.to_string());
  return a;
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace prefspace
