#pragma once

// Claim checkers for the quotient topology on preference families and for the
// explicit sequence and path constructions. Each returns a ClaimReport; a
// REFUTED verdict always carries a witness that was re-checked numerically.

#include <prefspace/claim_report.hpp>
#include <prefspace/final_topology.hpp>
#include <prefspace/paths.hpp>
#include <prefspace/random.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

namespace prefspace {

struct CheckOptions {
  std::uint64_t seed = 0;
  int samples = 4;                                // random probes per oracle call
  std::vector<double> epsilons{0.25, 0.05, 0.01};
  int random_sets = 500;                          // sampled subsets where exhaustive is too big
  int random_cases = 1000;                        // random (u, v) pairs, boxes, budgets
  int cap = kDefaultEnumerationCap;

  OracleParams oracle(std::uint64_t salt = 0) const { return OracleParams{samples, epsilons, seed + salt}; }
};

namespace detail {

inline ClaimReport start_report(const std::string& claim, int n, const std::string& family, const CheckOptions& o) {
  ClaimReport r;
  r.claim = claim;
  r.n = n;
  r.family = family;
  r.oracle_samples = o.samples;
  r.epsilons = o.epsilons;
  r.seed = o.seed;
  return r;
}

inline Json oracle_witness_json(const OracleWitness& w) {
  return Json{{"u", to_json(w.u)["values"]},
              {"perturbation", w.perturbation},
              {"source", w.source.to_string()},
              {"reached", w.reached.to_string()}};
}

inline void require_size(int n, int lo, int cap, const std::string& claim) {
  if (n < lo) throw ScopeError(claim + " needs n >= " + std::to_string(lo));
  if (n > cap) throw SizeError(claim + ": n=" + std::to_string(n) + " exceeds cap " + std::to_string(cap));
}

inline const SpecPreorder& sierpinski_preorder() {
  static const SpecPreorder s = specialization(sierpinski_space());
  return s;
}

// Entries k/4 with |k| <= spread.
inline UtilityVector<Rational> random_rational_vector(Rng& rng, int n, int spread = 8) {
  UtilityVector<Rational> u;
  for (int i = 0; i < n; ++i) u.values.emplace_back(rng.integer(-spread, spread), 4);
  return u;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Openness: refinement closure vs numeric oracle vs Sierpiński indicator

struct OpennessVotes {
  bool closure = false;
  bool oracle = false;
  bool sierpinski = false;
  std::size_t probes = 0;
  std::optional<OracleWitness> witness;
  bool witness_valid = true;

  bool agree() const { return closure == oracle && oracle == sierpinski; }
};

inline OpennessVotes openness_votes(const PrefSpace& space, const Bits& g, Ambient ambient, const OracleParams& params) {
  OpennessVotes v;
  v.closure = is_refinement_closed(space, g);
  const auto members = space.members(g);
  auto o = openness_oracle_numeric(members, ambient, space.n, params);
  v.oracle = o.numeric_open;
  v.probes = o.probes;
  v.witness = o.witness;
  if (o.witness) v.witness_valid = witness_valid(*o.witness, members, ambient);
  v.sierpinski = is_continuous_map(space.preorder, detail::sierpinski_preorder(),
                                   [&](int i) { return g.test(static_cast<std::size_t>(i)) ? 1 : 0; });
  return v;
}

inline void check_space_matches(const PrefSpace& space, Ambient ambient) {
  if (space.family != enumerate_preferences(space.n, ambient_family(ambient), std::max(space.n, kDefaultEnumerationCap)))
    throw PreconditionError("space family does not match the ambient utility set");
}

inline ClaimReport check_lemma_opensets(const std::vector<WeakOrder>& g, const PrefSpace& space, Ambient ambient,
                                        const CheckOptions& opts = {}) {
  Stopwatch clock;
  check_space_matches(space, ambient);
  auto r = detail::start_report("lemma_opensets", space.n, space.label, opts);
  const auto v = openness_votes(space, space.subset(g), ambient, opts.oracle());
  r.subverdicts["closure_open"] = v.closure;
  r.subverdicts["oracle_open"] = v.oracle;
  r.subverdicts["sierpinski_continuous"] = v.sierpinski;
  r.subverdicts["probes"] = v.probes;
  r.verdict = verdict_of(v.agree());
  r.disagreements = v.agree() ? 0 : 1;
  if (v.witness) r.subverdicts["oracle_witness"] = detail::oracle_witness_json(*v.witness);
  if (!v.agree()) r.witness = Json{{"set", to_json(g)}};
  r.require(v.witness_valid, "oracle witness failed re-validation");
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

// Exhaustive over all subsets when the family has at most 16 members,
// otherwise `random_sets` seeded subsets: half raw random subsets of random
// density, half refinement closures of sparse random subsets.
inline ClaimReport check_lemma_opensets_suite(int n, Ambient ambient, const CheckOptions& opts = {}) {
  Stopwatch clock;
  detail::require_size(n, ambient == Ambient::UStar ? 2 : 1, std::min(opts.cap, 4), "lemma_opensets");
  const auto space = final_topology(ambient_family(ambient), n);
  auto r = detail::start_report("lemma_opensets", n, space.label, opts);

  std::vector<Bits> sets;
  const bool exhaustive = space.size() <= 16;
  if (exhaustive) {
    for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << space.size()); ++pick)
      sets.emplace_back(static_cast<std::size_t>(space.size()), pick);
  } else {
    Rng rng(opts.seed);
    sets.push_back(space.empty_set());
    sets.push_back(space.full_set());
    for (int k = 0; k < opts.random_sets; ++k) {
      Bits b = space.empty_set();
      const double density = k % 2 == 0 ? rng.uniform() : 0.05 * rng.uniform();
      for (int i = 0; i < space.size(); ++i)
        if (rng.coin(density)) b.set(static_cast<std::size_t>(i));
      sets.push_back(k % 2 == 0 ? b : up_closure(space.preorder, b));
    }
  }

  std::size_t opens = 0, probes = 0;
  int bad_witnesses = 0;
  Json first_disagreement = nullptr;
  for (std::size_t k = 0; k < sets.size(); ++k) {
    const auto v = openness_votes(space, sets[k], ambient, opts.oracle(k));
    probes += v.probes;
    opens += v.closure;
    if (!v.witness_valid) ++bad_witnesses;
    if (!v.agree()) {
      ++r.disagreements;
      if (first_disagreement.is_null())
        first_disagreement = Json{{"set", to_json(space.members(sets[k]))},
                                  {"closure", v.closure},
                                  {"oracle", v.oracle},
                                  {"sierpinski", v.sierpinski}};
    }
  }
  r.subverdicts["mode"] = exhaustive ? "exhaustive" : "sampled";
  r.subverdicts["ambient"] = ambient_name(ambient);
  r.subverdicts["sets_tested"] = sets.size();
  r.subverdicts["open_sets"] = opens;
  r.subverdicts["probes"] = probes;
  r.verdict = verdict_of(r.disagreements == 0);
  r.witness = first_disagreement;
  r.require(bad_witnesses == 0, std::to_string(bad_witnesses) + " oracle witnesses failed re-validation");
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------------------
// Triviality of the topology on P

inline ClaimReport check_theorem1(int n, const CheckOptions& opts = {}) {
  Stopwatch clock;
  detail::require_size(n, 2, opts.cap, "theorem1");
  const auto space = final_topology(Family::All, n, opts.cap);
  auto r = detail::start_report("theorem1", n, space.label, opts);

  // Collect proper nonempty refinement-closed sets.
  std::set<Bits> found;
  const bool exhaustive = space.size() <= 16;
  if (exhaustive) {
    for (std::uint64_t pick = 1; pick + 1 < (std::uint64_t{1} << space.size()); ++pick) {
      Bits b(static_cast<std::size_t>(space.size()), pick);
      if (is_refinement_closed(space, b)) found.insert(b);
    }
  } else {
    Rng rng(opts.seed);
    for (int k = 0; k < opts.random_sets; ++k) {
      Bits b = space.empty_set();
      const double density = 0.1 * rng.uniform();
      for (int i = 0; i < space.size(); ++i)
        if (rng.coin(density)) b.set(static_cast<std::size_t>(i));
      b = up_closure(space.preorder, b);
      if (b.any() && b != space.full_set()) found.insert(b);
    }
  }
  r.subverdicts["scan"] = exhaustive ? "exhaustive" : "sampled";
  r.subverdicts["proper_open_sets_found"] = found.size();

  const bool trivial = found.empty();
  r.subverdicts["topology_trivial"] = trivial;
  if (!trivial) {
    // Smallest witness, first in scan order among equals.
    const Bits* best = &*found.begin();
    for (const auto& b : found)
      if (b.count() < best->count()) best = &b;
    const auto members = space.members(*best);
    const auto o = openness_oracle_numeric(members, Ambient::U, n, opts.oracle());
    r.witness = Json{{"open_set", to_json(members)}, {"oracle_open", o.open}, {"oracle_probes", o.probes}};
    r.require(o.open, "witness open set rejected by numeric oracle");
    if (!o.closure_agrees) ++r.disagreements;
    // The indicator of the witness is a nonconstant continuous map into the
    // Sierpiński space, so continuous maps out of P need not be constant.
    const bool continuous = is_continuous_map(space.preorder, detail::sierpinski_preorder(),
                                              [&](int i) { return best->test(static_cast<std::size_t>(i)) ? 1 : 0; });
    r.subverdicts["nonconstant_continuous_map_to_sierpinski"] = continuous;
    r.require(continuous, "indicator of open witness is not continuous");
  }

  const auto strict = space.subset(enumerate_preferences(n, Family::Strict));
  r.subverdicts["strict_family_open"] = is_refinement_closed(space, strict);

  // Total indifference lies in the closure of every singleton; the flattening
  // sequence u/n gives the numeric evidence.
  const int tie = *space.index_of(WeakOrder::total_indifference(n));
  bool glue = true;
  int sequences_ok = 0;
  for (int i = 0; i < space.size(); ++i) {
    glue = glue && space.preorder.leq(tie, i);
    const auto seq = flatten_global(realize<Rational>(space.family[static_cast<std::size_t>(i)]));
    sequences_ok += verify_sequence(seq, 1e-3, 10).passed;
  }
  r.subverdicts["indifference_in_every_singleton_closure"] = verdict_name(verdict_of(glue));
  r.subverdicts["flattening_sequences_passed"] = sequences_ok;
  r.require(sequences_ok == space.size(), "a flattening sequence failed verification");
  r.require(glue, "total indifference missing from a singleton closure");

  r.verdict = verdict_of(trivial);
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------------------
// Basis, separation and connectivity of the topology on P*

inline std::vector<Bits> basis_members(const std::vector<BasisElement>& bs) {
  std::vector<Bits> out;
  for (const auto& b : bs) out.push_back(b.members);
  return out;
}

inline bool is_union_of(const std::vector<Bits>& family, const Bits& g) {
  Bits acc(g.size());
  for (const auto& b : family)
    if (b.is_subset_of(g)) acc |= b;
  return acc == g;
}

inline ClaimReport check_theorem2(int n, const CheckOptions& opts = {}) {
  Stopwatch clock;
  detail::require_size(n, 3, opts.cap, "theorem2");
  const auto space = final_topology(Family::NonTrivial, n, opts.cap);
  auto r = detail::start_report("theorem2", n, space.label, opts);
  const auto basis = basis_members(basis_family(space));

  // (a) basis
  const auto check = is_basis(basis, space.preorder);
  Json basis_sub{{"verdict", verdict_name(verdict_of(check.ok))}, {"basis_sets", basis.size()}};
  if (!check.ok) {
    const auto& [g, x] = *check.witness;
    const auto members = space.members(g);
    const auto o = openness_oracle_numeric(members, Ambient::UStar, n, opts.oracle());
    bool inside = false;  // independent re-check: no basis set sits between x and G
    for (const auto& b : basis) inside = inside || (b.test(static_cast<std::size_t>(x)) && b.is_subset_of(g));
    r.witness = Json{{"open_set", to_json(members)},
                     {"point", space.family[static_cast<std::size_t>(x)].to_string()},
                     {"oracle_open", o.open},
                     {"basis_set_between", inside}};
    r.require(o.open && !inside, "basis witness failed re-validation");
    if (!o.closure_agrees) ++r.disagreements;
  }
  // The set the basis question hinges on: everything refining 0 > (1 ~ ... ~ n-1).
  {
    std::vector<int> rest(static_cast<std::size_t>(n - 1));
    std::iota(rest.begin(), rest.end(), 1);
    const auto top = WeakOrder::from_classes(n, {{0}, rest});
    const int i = *space.index_of(top);
    const Bits& g = space.preorder.up(i);
    basis_sub["critical_instance"] = Json{{"set", to_json(space.members(g))},
                                          {"open", is_refinement_closed(space, g)},
                                          {"union_of_basis_sets", is_union_of(basis, g)}};
  }
  r.subverdicts["basis"] = basis_sub;

  // (b) separation
  const auto flags = separation_axioms(space.preorder);
  std::vector<int> tail;
  for (int k = 3; k < n; ++k) tail.push_back(k);
  std::vector<std::vector<int>> coarse_classes{{0}, {1, 2}}, fine_classes{{0}, {1}, {2}};
  for (int k : tail) {
    coarse_classes.push_back({k});
    fine_classes.push_back({k});
  }
  const auto coarse = WeakOrder::from_classes(n, coarse_classes);
  const auto fine = WeakOrder::from_classes(n, fine_classes);
  const bool in_closure = space.preorder.leq(*space.index_of(coarse), *space.index_of(fine));
  const auto seq = prop1_sequence(realize<Rational>(coarse), Alternative{2}, Alternative{1});
  const auto seq_report = verify_sequence(seq, 1e-2, 10);
  r.require(seq_report.passed && seq.promised_order == fine, "non-T1 sequence evidence failed");
  r.subverdicts["hausdorff"] = Json{{"verdict", verdict_name(verdict_of(!flags.t2))},
                                    {"t0", flags.t0},
                                    {"t1", flags.t1},
                                    {"t2", flags.t2},
                                    {"coarse", coarse.to_string()},
                                    {"fine", fine.to_string()},
                                    {"coarse_in_closure_of_fine", in_closure},
                                    {"sequence_evidence", seq_report.passed}};

  // (c) connectivity
  const auto conn = connectivity(space.preorder);
  r.subverdicts["path_connected"] = Json{{"verdict", verdict_name(verdict_of(conn.path_connected))},
                                         {"components", conn.components.size()}};

  r.verdict = verdict_of(check.ok && !flags.t2 && conn.path_connected);
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------------------
// Discreteness of the topology on P^s

inline std::int64_t factorial(int n) { return n <= 1 ? 1 : n * factorial(n - 1); }

inline ClaimReport check_theorem3(int n, const CheckOptions& opts = {}) {
  Stopwatch clock;
  detail::require_size(n, 2, opts.cap, "theorem3");
  const auto space = final_topology(Family::Strict, n, opts.cap);
  auto r = detail::start_report("theorem3", n, space.label, opts);

  bool discrete = true;
  for (int i = 0; i < space.size(); ++i)
    for (int j = 0; j < space.size(); ++j)
      if (i != j && space.preorder.leq(i, j)) discrete = false;

  bool singletons_open = true;
  std::size_t probes = 0;
  for (int i = 0; i < space.size(); ++i) {
    Bits b = space.empty_set();
    b.set(static_cast<std::size_t>(i));
    const bool closed = is_refinement_closed(space, b);
    if (n <= 5) {
      const auto o = openness_oracle_numeric(space.members(b), Ambient::UStrict, n, opts.oracle(static_cast<std::uint64_t>(i)));
      probes += o.probes;
      if (o.numeric_open != closed) ++r.disagreements;
      singletons_open = singletons_open && o.open;
    } else {
      singletons_open = singletons_open && closed;
    }
  }
  const auto flags = separation_axioms(space.preorder);
  const auto conn = connectivity(space.preorder);
  const bool components_ok = static_cast<std::int64_t>(conn.components.size()) == factorial(n);
  const bool basis_ok = is_basis(basis_members(basis_family(space)), space.preorder).ok;

  r.subverdicts["discrete"] = discrete;
  r.subverdicts["singletons_open"] = singletons_open;
  r.subverdicts["oracle_probes"] = probes;
  r.subverdicts["t0"] = flags.t0;
  r.subverdicts["t1"] = flags.t1;
  r.subverdicts["t2"] = flags.t2;
  r.subverdicts["components"] = conn.components.size();
  r.subverdicts["totally_path_disconnected"] = conn.totally_path_disconnected;
  r.subverdicts["basis"] = basis_ok;
  bool extra = true;
  if (n == 2) {
    // With two alternatives the nonconstant vectors split into u0 > u1 and
    // u0 < u1, so P* itself is disconnected.
    const auto star = final_topology(Family::NonTrivial, 2);
    extra = !connectivity(star.preorder).connected;
    r.subverdicts["nonconstant_family_disconnected"] = extra;
  }
  const bool ok = discrete && singletons_open && flags.t0 && flags.t1 && flags.t2 && components_ok &&
                  conn.totally_path_disconnected && basis_ok && extra;
  r.verdict = verdict_of(ok);
  if (!ok) r.witness = Json{{"components", conn.components.size()}, {"expected", factorial(n)}};
  r.require(flags.t2 == discrete, "T2 flag disagrees with discreteness");
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------------------
// Adding any non-strict preference to P^s breaks T1

// u + r/k where r breaks every tie of represent(u) the way `target` does.
inline UtilitySequence<Rational> strict_refinement_sequence(const WeakOrder& coarse, const WeakOrder& target) {
  if (!refines(target, coarse)) throw PreconditionError("target must refine the limit order");
  const int n = coarse.size();
  const auto u = realize<Rational>(coarse);
  UtilitySequence<Rational> s;
  s.construction = "strict_refinement";
  s.generator = [u, target, n](std::int64_t k) {
    UtilityVector<Rational> out = u;
    for (int i = 0; i < n; ++i) out[i] += Rational(target.class_count() - 1 - target.rank(i), std::int64_t{n} * k);
    return out;
  };
  s.declared_limit = u;
  s.promised_order = target;
  s.promised_limit_order = coarse;
  return s;
}

inline ClaimReport check_prop1(int n, const CheckOptions& opts = {}) {
  Stopwatch clock;
  detail::require_size(n, 2, opts.cap, "prop1");
  auto r = detail::start_report("prop1", n, "P^s+1", opts);
  const auto strict = enumerate_preferences(n, Family::Strict, opts.cap);

  int checked = 0, in_pstar = 0, failing_t1 = 0, evidence_ok = 0;
  Json first_counterexample = nullptr;
  Json examples = Json::array();
  for (const auto& w : enumerate_preferences(n, Family::All, opts.cap)) {
    if (w.is_strict()) continue;
    ++checked;
    in_pstar += !w.is_total_indifference();
    auto fam = strict;
    fam.push_back(w);
    const auto space = final_topology(fam, "P^s+1");
    const bool t1 = separation_axioms(space.preorder).t1;
    const int wi = *space.index_of(w);
    std::optional<WeakOrder> above;
    for (int j = 0; j < space.size() && !above; ++j)
      if (j != wi && space.preorder.leq(wi, j)) above = space.family[static_cast<std::size_t>(j)];

    bool ok = true;
    if (above) ok = verify_sequence(strict_refinement_sequence(w, *above), 1e-3, 10).passed;
    for (const auto& seq : prop1_sequences_all_ties(realize<Rational>(w))) ok = ok && verify_sequence(seq, 1e-2, 10).passed;
    evidence_ok += ok;

    if (!t1 && above) {
      ++failing_t1;
      if (examples.size() < 3)
        examples.push_back(Json{{"preference", w.to_string()}, {"in_closure_of", above->to_string()}});
    } else if (first_counterexample.is_null()) {
      first_counterexample = Json{{"preference", w.to_string()}, {"t1", t1}};
    }
  }
  r.subverdicts["nonstrict_checked"] = checked;
  r.subverdicts["nonstrict_in_nontrivial_family"] = in_pstar;
  r.subverdicts["fail_t1"] = failing_t1;
  r.subverdicts["sequence_evidence_ok"] = evidence_ok;
  r.subverdicts["examples"] = examples;
  r.require(evidence_ok == checked, "sequence evidence failed for some preference");
  r.verdict = verdict_of(failing_t1 == checked);
  r.witness = first_counterexample;
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------------------
// Basis sets are open; pairwise intersection identity

inline ClaimReport check_basis_sets(int n, Ambient ambient, const CheckOptions& opts = {}) {
  Stopwatch clock;
  detail::require_size(n, 2, std::min(opts.cap, 5), "basis_sets");
  const auto space = final_topology(ambient_family(ambient), n, opts.cap);
  auto r = detail::start_report("basis_sets", n, space.label, opts);
  const auto basis = basis_family(space);

  int closed = 0, oracle_open = 0;
  Json witness = nullptr;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const auto& b = basis[k];
    const bool c = is_refinement_closed(space, b.members);
    closed += c;
    if (n <= 4) {
      const auto o = openness_oracle_numeric(space.members(b.members), ambient, n, opts.oracle(k));
      oracle_open += o.numeric_open;
      if (o.numeric_open != c) ++r.disagreements;
    }
    if (!c && witness.is_null())
      witness = Json{{"anchor", b.anchor.to_string()}, {"alternatives", mask_members(b.alternatives)}};
  }

  int identities = 0, identity_failures = 0;
  for (const auto& anchor : space.family)
    for (Mask a = 0; a <= full_mask(n); ++a) {
      if (popcount(a) >= 3 && strictly_ranks(anchor, a)) {
        ++identities;
        if (!pairwise_intersection_identity(anchor, a, space)) {
          ++identity_failures;
          if (witness.is_null())
            witness = Json{{"anchor", anchor.to_string()}, {"alternatives", mask_members(a)}, {"identity", false}};
        }
      }
      if (a == full_mask(n)) break;
    }
  r.subverdicts["ambient"] = ambient_name(ambient);
  r.subverdicts["basis_sets"] = basis.size();
  r.subverdicts["refinement_closed"] = closed;
  r.subverdicts["oracle_open"] = n <= 4 ? Json(oracle_open) : Json("skipped");
  r.subverdicts["intersection_identities"] = identities;
  r.subverdicts["intersection_failures"] = identity_failures;
  r.verdict = verdict_of(closed == static_cast<int>(basis.size()) && identity_failures == 0);
  r.witness = witness;
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------------------
// Images of open boxes

struct BoxSample {
  Box box;
  std::vector<std::optional<std::pair<double, double>>> coords;
};

inline BoxSample random_box(Rng& rng, int n) {
  BoxSample s{Box::from_doubles({}), {}};
  for (int i = 0; i < n; ++i) {
    if (rng.coin(0.2)) {
      s.coords.emplace_back();
      continue;
    }
    const double lo = static_cast<double>(rng.integer(0, 6)) / 2.0;
    const double hi = lo + static_cast<double>(rng.integer(1, 4)) / 2.0;
    s.coords.emplace_back(std::pair{lo, hi});
  }
  s.box = Box::from_doubles(s.coords);
  return s;
}

// Constrained intervals share a point.
inline bool common_intersection(const std::vector<std::optional<std::pair<double, double>>>& coords) {
  double lo = -1e300, hi = 1e300;
  for (const auto& c : coords)
    if (c) {
      lo = std::max(lo, c->first);
      hi = std::min(hi, c->second);
    }
  return lo < hi;
}

inline Json box_json(const std::vector<std::optional<std::pair<double, double>>>& coords) {
  Json a = Json::array();
  for (const auto& c : coords) a.push_back(c ? Json::array({c->first, c->second}) : Json(nullptr));
  return a;
}

inline ClaimReport check_box_images(int n, Ambient ambient, const CheckOptions& opts = {}) {
  Stopwatch clock;
  detail::require_size(n, ambient == Ambient::UStar ? 2 : 1, std::min(opts.cap, 5), "box_image");
  const auto space = final_topology(ambient_family(ambient), n, opts.cap);
  auto r = detail::start_report("box_image", n, space.label, opts);
  std::set<Bits> bsets;
  for (const auto& b : basis_family(space)) bsets.insert(b.members);

  Rng rng(opts.seed);
  int open = 0, case2 = 0, case2_full = 0, case1 = 0, case1_bset = 0, sampled = 0;
  Json open_witness = nullptr, case1_witness = nullptr;
  for (int k = 0; k < opts.random_cases; ++k) {
    const auto s = random_box(rng, n);
    const auto img = image_of_box(s.box, n, ambient);
    const auto g = space.subset(img);
    const bool is_open_img = is_refinement_closed(space, g);
    open += is_open_img;
    if (!is_open_img && open_witness.is_null()) open_witness = Json{{"box", box_json(s.coords)}, {"image", to_json(img)}};
    if (common_intersection(s.coords)) {
      ++case2;
      case2_full += g == space.full_set();
    } else {
      ++case1;
      const bool form = bsets.count(g) > 0;
      case1_bset += form;
      if (!form && case1_witness.is_null()) case1_witness = Json{{"box", box_json(s.coords)}, {"image", to_json(img)}};
    }
    // Soundness against direct sampling.
    for (int t = 0; t < 20; ++t) {
      UtilityVector<double> u;
      for (const auto& c : s.coords) u.values.push_back(c ? rng.uniform(c->first, c->second) : rng.uniform(-5, 10));
      if (!s.box.contains(u) || !in_ambient(u, ambient)) continue;
      ++sampled;
      if (!std::binary_search(img.begin(), img.end(), represent(u))) ++r.disagreements;
    }
  }
  r.subverdicts["ambient"] = ambient_name(ambient);
  r.subverdicts["boxes"] = opts.random_cases;
  r.subverdicts["images_open"] = open;
  r.subverdicts["common_point_boxes"] = case2;
  r.subverdicts["common_point_full_image"] = case2_full;
  r.subverdicts["disjoint_boxes"] = case1;
  r.subverdicts["disjoint_boxes_basis_form"] = case1_bset;
  r.subverdicts["basis_form"] = verdict_name(verdict_of(case1_bset == case1));
  r.subverdicts["basis_form_witness"] = case1_witness;
  r.subverdicts["sampled_points"] = sampled;
  r.verdict = verdict_of(open == opts.random_cases && case2_full == case2);
  r.witness = open_witness;
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

// ---------------------------------------------------------------------------
// Sequences and paths

template <typename T>
bool order_constant_up_to(const UtilitySequence<T>& seq, std::int64_t max_n) {
  for (std::int64_t k = 1; k <= max_n; ++k)
    if (represent(seq(k)) != seq.promised_order) return false;
  return true;
}

inline ClaimReport check_sequences(int n, const CheckOptions& opts = {}) {
  Stopwatch clock;
  detail::require_size(n, 2, 8, "sequences");
  auto r = detail::start_report("sequences", n, "U", opts);
  Rng rng(opts.seed);
  struct Tally {
    int run = 0, passed = 0;
  };
  std::map<std::string, Tally> tally;
  int boundary_cases = 0;
  Json witness = nullptr;
  auto record = [&](const UtilitySequence<Rational>& seq, const UtilityVector<Rational>& u) {
    const auto rep = verify_sequence(seq, 1e-2, 10);
    const bool ok = rep.passed && order_constant_up_to(seq, 1024);
    auto& t = tally[seq.construction];
    ++t.run;
    t.passed += ok;
    if (!ok && witness.is_null())
      witness = Json{{"construction", seq.construction}, {"u", to_json(u)["values"]}, {"deviation", rep.final_deviation}};
  };
  const int count = std::max(1, opts.random_cases / 10);
  for (int k = 0; k < count; ++k) {
    const auto u = detail::random_rational_vector(rng, n, 4);
    const auto p = represent(u);
    record(flatten_global(u), u);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        bool between = false;
        for (int z = 0; z < n; ++z) between = between || (p.strict(x, z) && p.strict(z, y));
        if (between) {
          const auto seq = flatten_middle(u, Alternative{x}, Alternative{y});
          boundary_cases += !seq.boundary_alternatives.empty();
          record(seq, u);
        }
      }
    for (const auto& seq : prop1_sequences_all_ties(u)) record(seq, u);
    for (int x = 0; x < n; ++x)
      if (p.rank(x) != 0 && p.rank(x) != p.class_count() - 1) {
        record(prop3_case_sequence(u, Alternative{x}, CollapseSide::Lower), u);
        record(prop3_case_sequence(u, Alternative{x}, CollapseSide::Upper), u);
      }
  }
  bool all = true;
  for (const auto& [name, t] : tally) {
    r.subverdicts[name] = Json{{"run", t.run}, {"passed", t.passed}};
    all = all && t.run == t.passed;
  }
  r.subverdicts["flatten_middle_boundary_inputs"] = boundary_cases;
  r.verdict = verdict_of(all);
  r.witness = witness;
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

inline ClaimReport check_homotopy(int n, const CheckOptions& opts = {}, int samples = 100) {
  Stopwatch clock;
  detail::require_size(n, 3, 8, "homotopy");
  auto r = detail::start_report("homotopy", n, "U*", opts);
  Rng rng(opts.seed);
  int pairs = 0, endpoints = 0, waypoints = 0, nonconstant = 0;
  Json witness = nullptr;
  while (pairs < opts.random_cases) {
    const auto u = detail::random_rational_vector(rng, n);
    const auto v = detail::random_rational_vector(rng, n);
    if (u.is_constant() || v.is_constant()) continue;
    ++pairs;
    const auto path = three_step_path(u, v);
    endpoints += path(Rational(0)) == u && path(Rational(1)) == v;
    // Waypoints recomputed from their closed forms.
    auto w1 = v, w2 = v;
    w1[path.x] = u[path.x];
    w1[path.y] = u[path.y];
    w2[path.y] = v[path.x];
    waypoints += path(Rational(1, 3)) == w1 && path(Rational(2, 3)) == w2;
    bool ok = true;
    for (int k = 0; k <= samples && ok; ++k) ok = !path(Rational(k, samples)).is_constant();
    nonconstant += ok;
    if (!ok && witness.is_null()) witness = Json{{"u", to_json(u)["values"]}, {"v", to_json(v)["values"]}};
  }

  // Strict endpoints ranking a pair oppositely: any path between them hits a
  // tie on that pair, so it leaves the strict vectors.
  int controls = 0, crossings = 0;
  for (int k = 0; k < 100; ++k) {
    auto u = detail::random_rational_vector(rng, n, 1000);
    if (!u.is_injective()) continue;
    auto v = u;
    std::swap(v[0], v[1]);
    ++controls;
    const bool straight = first_tie_crossing<Rational>(LinearPath<Rational>{u, v}, 0, 1, samples).has_value();
    const bool stepped = first_tie_crossing<Rational>(three_step_path(u, v), 0, 1, samples).has_value();
    crossings += straight && stepped;
  }
  r.subverdicts["pairs"] = pairs;
  r.subverdicts["samples_per_path"] = samples + 1;
  r.subverdicts["endpoints_exact"] = endpoints;
  r.subverdicts["waypoints_exact"] = waypoints;
  r.subverdicts["nonconstant_paths"] = nonconstant;
  r.subverdicts["strict_controls"] = controls;
  r.subverdicts["strict_controls_leaving_strict_set"] = crossings;
  r.require(crossings == controls, "a path between oppositely ranked strict vectors stayed strict");
  r.verdict = verdict_of(endpoints == pairs && waypoints == pairs && nonconstant == pairs);
  r.witness = witness;
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

}  // namespace prefspace
