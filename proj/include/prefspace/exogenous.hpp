#pragma once

// Topologies on the alternatives themselves: the contour topology of a weak
// order, continuity and local strictness of a weak order against a given
// topology, and checkers for the Hausdorff claim on continuous locally strict
// preferences and for emptiness of the "indifference classes never open"
// family on finite sets.

#include <prefspace/claim_report.hpp>
#include <prefspace/claims.hpp>
#include <prefspace/final_topology.hpp>
#include <prefspace/topology.hpp>

#include <optional>
#include <string>
#include <vector>

namespace prefspace {

// {y : y > x}
inline Mask upper_contour(const WeakOrder& p, int x) {
  Mask m = 0;
  for (int y = 0; y < p.size(); ++y)
    if (p.strict(y, x)) m |= Mask{1} << y;
  return m;
}

// {y : x > y}
inline Mask lower_contour(const WeakOrder& p, int x) {
  Mask m = 0;
  for (int y = 0; y < p.size(); ++y)
    if (p.strict(x, y)) m |= Mask{1} << y;
  return m;
}

// {x : y > x > z}
inline Mask interval(const WeakOrder& p, int y, int z) {
  Mask m = 0;
  for (int x = 0; x < p.size(); ++x)
    if (p.strict(y, x) && p.strict(x, z)) m |= Mask{1} << x;
  return m;
}

inline std::vector<Mask> contour_subbasis(const WeakOrder& p) {
  std::vector<Mask> s;
  for (int x = 0; x < p.size(); ++x) {
    s.push_back(upper_contour(p, x));
    s.push_back(lower_contour(p, x));
  }
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  return s;
}

inline FiniteTopology contour_topology(const WeakOrder& p) {
  check_explicit_size(p.size());
  return generate_from_subbasis(p.size(), contour_subbasis(p));
}

inline void check_dimensions(const WeakOrder& p, const FiniteTopology& t) {
  if (p.size() != t.size()) throw DimensionError("preference and topology sizes differ");
}

inline bool is_continuous_pref(const WeakOrder& p, const FiniteTopology& t) {
  check_dimensions(p, t);
  for (int x = 0; x < p.size(); ++x)
    if (!t.is_open(upper_contour(p, x)) || !t.is_open(lower_contour(p, x))) return false;
  return true;
}

// Whether pairs (x, x) count among the weakly ranked pairs.
enum class Diagonal { Included, Excluded };

inline const char* diagonal_name(Diagonal d) { return d == Diagonal::Included ? "diagonal" : "off_diagonal"; }

// Every weakly ranked pair has a strictly ranked pair in each product
// neighbourhood. Only the minimal neighbourhood N(x) x N(y) needs checking.
inline bool is_locally_strict(const WeakOrder& p, const FiniteTopology& t, Diagonal d = Diagonal::Included) {
  check_dimensions(p, t);
  const int n = p.size();
  std::vector<Mask> nb(static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x) nb[static_cast<std::size_t>(x)] = t.minimal_neighborhood(x);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!p.weak(x, y) || (x == y && d == Diagonal::Excluded)) continue;
      bool found = false;
      for (int a : mask_members(nb[static_cast<std::size_t>(x)]))
        for (int b : mask_members(nb[static_cast<std::size_t>(y)])) found = found || p.strict(a, b);
      if (!found) return false;
    }
  return true;
}

// Same predicate over every open set of the product topology on X x X
// (point (a, b) is bit a * n + b). Independent of the minimal-neighbourhood
// shortcut; limited to n <= 3 so the product fits an explicit topology.
inline bool is_locally_strict_exhaustive(const WeakOrder& p, const FiniteTopology& t, Diagonal d = Diagonal::Included) {
  check_dimensions(p, t);
  const int n = p.size();
  if (n * n > kMaxExplicitGround) throw SizeError("product topology too large for explicit check");
  std::vector<Mask> rectangles;
  for (Mask u : t.opens())
    for (Mask v : t.opens()) {
      Mask r = 0;
      for (int a : mask_members(u))
        for (int b : mask_members(v)) r |= Mask{1} << (a * n + b);
      rectangles.push_back(r);
    }
  const auto product = generate_from_subbasis(n * n, rectangles);
  Mask strict_pairs = 0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.strict(a, b)) strict_pairs |= Mask{1} << (a * n + b);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (!p.weak(x, y) || (x == y && d == Diagonal::Excluded)) continue;
      for (Mask w : product.opens())
        if (has(w, x * n + y) && (w & strict_pairs) == 0) return false;
    }
  return true;
}

inline std::vector<WeakOrder> pcls_family(int n, const FiniteTopology& t, Diagonal d = Diagonal::Included) {
  std::vector<WeakOrder> out;
  for (const auto& p : enumerate_preferences(n, Family::All))
    if (is_continuous_pref(p, t) && is_locally_strict(p, t, d)) out.push_back(p);
  return out;
}

// Intersection of the contour sets that contain x: a sequence converges to x
// iff it eventually lies strictly between every z above x and z' below x.
inline Mask convergence_neighborhood(const WeakOrder& p, int x) {
  Mask m = full_mask(p.size());
  for (int z = 0; z < p.size(); ++z) {
    if (p.strict(z, x)) m &= lower_contour(p, z);
    if (p.strict(x, z)) m &= upper_contour(p, z);
  }
  return m;
}

// a > x > b with nothing strictly between a and x or between x and b.
inline bool is_isolated(Alternative x, const WeakOrder& p) {
  if (x.index < 0 || x.index >= p.size()) throw PreconditionError("alternative out of range");
  bool above = false, below = false;
  for (int a = 0; a < p.size(); ++a) {
    if (p.strict(a, x.index) && interval(p, a, x.index) == 0) above = true;
    if (p.strict(x.index, a) && interval(p, x.index, a) == 0) below = true;
  }
  return above && below;
}

// No nonempty subset of an indifference class is open in the contour topology.
inline bool pci_membership(const WeakOrder& p) {
  const auto t = contour_topology(p);
  for (const auto& cls : p.classes()) {
    const Mask c = mask_of(cls);
    for (Mask g = c; g; g = (g - 1) & c)
      if (t.is_open(g)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Checkers

struct HausdorffOnFamily {
  std::size_t size = 0;
  bool vacuous = true;
  bool discrete_in_nontrivial = true;  // subspace of the P* topology
  bool discrete_in_all = true;         // subspace of the P topology
  std::optional<std::pair<WeakOrder, WeakOrder>> witness;
};

inline bool discrete_subspace(const PrefSpace& space, const std::vector<WeakOrder>& members,
                              std::optional<std::pair<WeakOrder, WeakOrder>>* witness) {
  std::vector<int> idx;
  for (const auto& w : members)
    if (auto i = space.index_of(w)) idx.push_back(*i);
  const auto sub = space.preorder.restrict_to(idx);
  for (int a = 0; a < sub.size(); ++a)
    for (int b = 0; b < sub.size(); ++b)
      if (a != b && sub.leq(a, b)) {
        if (witness && !*witness)
          *witness = std::make_pair(space.family[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])],
                                    space.family[static_cast<std::size_t>(idx[static_cast<std::size_t>(b)])]);
        return false;
      }
  return true;
}

inline HausdorffOnFamily hausdorff_on(const std::vector<WeakOrder>& fam, const PrefSpace& all, const PrefSpace* star) {
  HausdorffOnFamily h;
  h.size = fam.size();
  h.vacuous = fam.empty();
  std::vector<WeakOrder> nontrivial;
  for (const auto& w : fam)
    if (!w.is_total_indifference()) nontrivial.push_back(w);
  if (star) h.discrete_in_nontrivial = discrete_subspace(*star, nontrivial, &h.witness);
  h.discrete_in_all = discrete_subspace(all, fam, &h.witness);
  return h;
}

inline Json hausdorff_json(const HausdorffOnFamily& h, const std::vector<WeakOrder>& fam) {
  Json j{{"pcls_size", h.size},
         {"pcls", to_json(fam)},
         {"vacuous", h.vacuous},
         {"verdict", verdict_name(verdict_of(h.discrete_in_nontrivial))},
         {"discrete_in_P*", h.discrete_in_nontrivial},
         {"discrete_in_P", h.discrete_in_all}};
  if (h.witness) j["comparable_pair"] = Json::array({h.witness->first.to_string(), h.witness->second.to_string()});
  return j;
}

// Both readings of local strictness are computed; the verdict needs both to
// give a discrete (hence Hausdorff) subspace.
inline ClaimReport check_theorem4(int n, const FiniteTopology& t, const CheckOptions& opts = {}) {
  Stopwatch clock;
  if (t.size() != n) throw DimensionError("topology size differs from n");
  detail::require_size(n, 1, std::min(opts.cap, 5), "theorem4");
  auto r = detail::start_report("theorem4", n, "P^cls", opts);
  const auto all = final_topology(Family::All, n, opts.cap);
  std::optional<PrefSpace> star;
  if (n >= 2) star = final_topology(Family::NonTrivial, n, opts.cap);

  bool ok = true;
  for (Diagonal d : {Diagonal::Included, Diagonal::Excluded}) {
    const auto fam = pcls_family(n, t, d);
    const auto h = hausdorff_on(fam, all, star ? &*star : nullptr);
    r.subverdicts[diagonal_name(d)] = hausdorff_json(h, fam);
    ok = ok && h.discrete_in_nontrivial;
    r.require(h.discrete_in_nontrivial == h.discrete_in_all || std::any_of(fam.begin(), fam.end(), [](const auto& w) {
                return w.is_total_indifference();
              }),
              "P and P* subspaces disagree");
    if (!h.discrete_in_nontrivial && r.witness.is_null())
      r.witness = Json{{"reading", diagonal_name(d)},
                       {"coarse", h.witness->first.to_string()},
                       {"fine", h.witness->second.to_string()}};
  }
  r.subverdicts["topology"] = to_json(t);
  r.verdict = verdict_of(ok);
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

struct SweepEntry {
  std::size_t topology_index = 0;
  FiniteTopology topology;
  ClaimReport report;
};

// All topologies on n points, or a seeded sample of `sample` of them
// (sorted by index) unless `full` is set. Sampling applies from n = 4 on.
inline std::vector<SweepEntry> theorem4_sweep(int n, const CheckOptions& opts = {}, bool full = false, int sample = 64) {
  auto tops = enumerate_topologies(n);
  std::vector<std::size_t> picks(tops.size());
  std::iota(picks.begin(), picks.end(), std::size_t{0});
  if (n >= 4 && !full && sample < static_cast<int>(tops.size())) {
    Rng rng(opts.seed);
    rng.shuffle(picks);
    picks.resize(static_cast<std::size_t>(sample));
    std::sort(picks.begin(), picks.end());
  }
  std::vector<SweepEntry> out;
  for (std::size_t i : picks) out.push_back({i, tops[i], check_theorem4(n, tops[i], opts)});
  return out;
}

inline Json sweep_json(const std::vector<SweepEntry>& sweep) {
  Json a = Json::array();
  for (const auto& e : sweep) {
    const auto& diag = e.report.subverdicts["diagonal"];
    const auto& off = e.report.subverdicts["off_diagonal"];
    a.push_back(Json{{"topology_index", e.topology_index},
                     {"opens", to_json(e.topology)["opens"]},
                     {"pcls_size", diag["pcls_size"]},
                     {"verdict", verdict_name(e.report.verdict)},
                     {"vacuous", diag["vacuous"]},
                     {"off_diagonal_pcls_size", off["pcls_size"]},
                     {"off_diagonal_vacuous", off["vacuous"]}});
  }
  return a;
}

// Summary report over a sweep.
inline ClaimReport summarize_sweep(int n, const std::vector<SweepEntry>& sweep, bool full, const CheckOptions& opts = {}) {
  auto r = detail::start_report("theorem4_sweep", n, "P^cls", opts);
  int confirmed = 0, vacuous = 0, off_vacuous = 0;
  std::int64_t ms = 0;
  for (const auto& e : sweep) {
    confirmed += e.report.verdict == Verdict::Confirmed;
    vacuous += e.report.subverdicts["diagonal"]["vacuous"].get<bool>();
    off_vacuous += e.report.subverdicts["off_diagonal"]["vacuous"].get<bool>();
    ms += e.report.runtime_ms;
    for (const auto& f : e.report.invariant_failures) r.invariant_failures.push_back(f);
    if (e.report.verdict == Verdict::Refuted && r.witness.is_null())
      r.witness = Json{{"topology_index", e.topology_index}, {"detail", e.report.witness}};
  }
  r.subverdicts["topologies_checked"] = sweep.size();
  r.subverdicts["mode"] = full || n < 4 ? "full" : "sampled";
  r.subverdicts["confirmed"] = confirmed;
  r.subverdicts["vacuous_diagonal"] = vacuous;
  r.subverdicts["vacuous_off_diagonal"] = off_vacuous;
  r.subverdicts["nonvacuous_off_diagonal"] = static_cast<int>(sweep.size()) - off_vacuous;
  r.subverdicts["sweep"] = sweep_json(sweep);
  r.verdict = verdict_of(confirmed == static_cast<int>(sweep.size()));
  r.runtime_ms = ms;
  return r;
}

// The example 0~1 > 2 with contour topology {∅, X, {0,1}, {2}}.
inline bool contour_example_reproduced() {
  const auto p = WeakOrder::from_classes(3, {{0, 1}, {2}});
  const auto t = contour_topology(p);
  return t.opens() == std::vector<Mask>{0b000, 0b011, 0b100, 0b111} && !pci_membership(p) && !is_locally_strict(p, t) &&
         !is_locally_strict(p, t, Diagonal::Excluded);
}

inline ClaimReport check_prop3_finite(int n, const CheckOptions& opts = {}) {
  Stopwatch clock;
  detail::require_size(n, 1, opts.cap, "prop3_finite");
  auto r = detail::start_report("prop3_finite", n, "P", opts);
  int members = 0, checked = 0;
  Json witness = nullptr;
  for (const auto& p : enumerate_preferences(n, Family::All, opts.cap)) {
    ++checked;
    if (pci_membership(p)) {
      ++members;
      if (witness.is_null()) witness = Json{{"preference", p.to_string()}};
    }
  }
  const bool example = contour_example_reproduced();
  r.subverdicts["preferences_checked"] = checked;
  r.subverdicts["pci_size"] = members;
  r.subverdicts["contour_example_reproduced"] = example;
  r.require(example, "contour topology of 0~1>2 not reproduced");
  r.verdict = verdict_of(members == 0);
  r.witness = witness;
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

inline ClaimReport check_lemma_locally_strict(int n, const CheckOptions& opts = {}) {
  Stopwatch clock;
  detail::require_size(n, 1, opts.cap, "lemma_locally_strict");
  auto r = detail::start_report("lemma_locally_strict", n, "P", opts);
  int premises = 0, failures = 0;
  Json witness = nullptr;
  for (const auto& p : enumerate_preferences(n, Family::All, opts.cap)) {
    if (!pci_membership(p)) continue;
    ++premises;
    if (!is_locally_strict(p, contour_topology(p))) {
      ++failures;
      if (witness.is_null()) witness = Json{{"preference", p.to_string()}};
    }
  }
  r.subverdicts["pci_members"] = premises;
  r.subverdicts["vacuous"] = premises == 0;
  r.subverdicts["negative_control"] = contour_example_reproduced();
  r.require(contour_example_reproduced(), "negative control 0~1>2 misclassified");
  r.verdict = verdict_of(failures == 0);
  r.witness = witness;
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

}  // namespace prefspace
