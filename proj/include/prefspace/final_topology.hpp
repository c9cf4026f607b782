#pragma once

// The quotient topology that the representation map induces on a family of
// weak orders, with the basis sets B(anchor, A), images of open boxes, and a
// numeric openness oracle that probes preimages directly in utility space.

#include <prefspace/errors.hpp>
#include <prefspace/order.hpp>
#include <prefspace/random.hpp>
#include <prefspace/topology.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace prefspace {

using ExactRational = boost::multiprecision::cpp_rational;

// A family of weak orders with the specialization preorder of its final
// topology: leq(i, j) iff family[j] refines family[i]. Open sets are exactly
// the refinement-closed subsets.
struct PrefSpace {
  int n = 0;
  std::string label;
  std::vector<WeakOrder> family;
  SpecPreorder preorder;

  int size() const { return static_cast<int>(family.size()); }

  std::optional<int> index_of(const WeakOrder& w) const {
    auto it = std::lower_bound(family.begin(), family.end(), w);
    if (it == family.end() || *it != w) return std::nullopt;
    return static_cast<int>(it - family.begin());
  }

  Bits subset(const std::vector<WeakOrder>& members) const {
    Bits b(static_cast<std::size_t>(size()));
    for (const auto& w : members) {
      auto i = index_of(w);
      if (!i) throw PreconditionError("weak order " + w.to_string() + " is not in the family");
      b.set(static_cast<std::size_t>(*i));
    }
    return b;
  }

  std::vector<WeakOrder> members(const Bits& b) const {
    std::vector<WeakOrder> out;
    for (int i : bits_members(b)) out.push_back(family[static_cast<std::size_t>(i)]);
    return out;
  }

  Bits empty_set() const { return Bits(static_cast<std::size_t>(size())); }
  Bits full_set() const { return ~empty_set(); }
};

inline PrefSpace final_topology(std::vector<WeakOrder> family, std::string label = "subset") {
  if (family.empty()) throw PreconditionError("empty preference family");
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  const int n = family.front().size();
  for (const auto& w : family)
    if (w.size() != n) throw DimensionError("family mixes ground-set sizes");
  PrefSpace s;
  s.n = n;
  s.label = std::move(label);
  s.family = std::move(family);
  s.preorder = SpecPreorder::from_predicate(s.size(), [&](int i, int j) {
    return refines(s.family[static_cast<std::size_t>(j)], s.family[static_cast<std::size_t>(i)]);
  });
  return s;
}

inline PrefSpace final_topology(Family f, int n, int cap = kDefaultEnumerationCap) {
  auto fam = enumerate_preferences(n, f, cap);
  if (fam.empty()) throw ScopeError(std::string("family ") + family_name(f) + " is empty at n=" + std::to_string(n));
  return final_topology(std::move(fam), family_name(f));
}

inline bool is_refinement_closed(const PrefSpace& s, const Bits& g) { return is_open(s.preorder, g); }

// ---------------------------------------------------------------------------
// Basis sets B(anchor, A)

struct BasisElement {
  WeakOrder anchor;
  Mask alternatives = 0;
  Bits members;
};

inline bool strictly_ranks(const WeakOrder& w, Mask a) {
  auto xs = mask_members(a);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (w.indifferent(xs[i], xs[j])) return false;
  return true;
}

// Members strict on A that rank A exactly as the anchor does.
inline BasisElement basis_element(const WeakOrder& anchor, Mask a, const PrefSpace& space) {
  if (anchor.size() != space.n) throw DimensionError("anchor size does not match space");
  if (a & ~full_mask(space.n)) throw PreconditionError("alternative set out of range");
  if (!strictly_ranks(anchor, a)) throw PreconditionError("anchor is indifferent on a pair of A");
  auto xs = mask_members(a);
  BasisElement b{anchor, a, space.empty_set()};
  for (int i = 0; i < space.size(); ++i) {
    const auto& w = space.family[static_cast<std::size_t>(i)];
    bool agrees = true;
    for (std::size_t p = 0; p < xs.size() && agrees; ++p)
      for (std::size_t q = 0; q < xs.size() && agrees; ++q)
        if (p != q) agrees = anchor.strict(xs[p], xs[q]) == w.strict(xs[p], xs[q]) && !w.indifferent(xs[p], xs[q]);
    if (agrees) b.members.set(static_cast<std::size_t>(i));
  }
  return b;
}

// Every B(anchor, A) with anchor in the family; duplicates removed.
inline std::vector<BasisElement> basis_family(const PrefSpace& space) {
  std::vector<BasisElement> out;
  std::set<Bits> seen;
  for (const auto& anchor : space.family)
    for (Mask a = 0; a <= full_mask(space.n); ++a) {
      if (popcount(a) != 1 && strictly_ranks(anchor, a)) {
        auto b = basis_element(anchor, a, space);
        if (seen.insert(b.members).second) out.push_back(std::move(b));
      }
      if (a == full_mask(space.n)) break;
    }
  return out;
}

inline bool pairwise_intersection_identity(const WeakOrder& anchor, Mask a, const PrefSpace& space) {
  auto whole = basis_element(anchor, a, space);
  Bits meet = space.full_set();
  auto xs = mask_members(a);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      meet &= basis_element(anchor, mask_of({xs[i], xs[j]}), space).members;
  return meet == whole.members;
}

// ---------------------------------------------------------------------------
// Open boxes and their images under the representation map

enum class Ambient { U, UStar, UStrict };

inline const char* ambient_name(Ambient a) {
  switch (a) {
    case Ambient::U: return "U";
    case Ambient::UStar: return "U*";
    case Ambient::UStrict: return "U^s";
  }
  return "?";
}

inline Family ambient_family(Ambient a) {
  switch (a) {
    case Ambient::U: return Family::All;
    case Ambient::UStar: return Family::NonTrivial;
    case Ambient::UStrict: return Family::Strict;
  }
  return Family::All;
}

// Open interval (lo, hi); a missing bound is infinite.
struct OpenInterval {
  std::optional<ExactRational> lo;
  std::optional<ExactRational> hi;
};

class Box {
 public:
  Box() = default;

  // nullopt coordinates are unconstrained.
  explicit Box(std::vector<std::optional<OpenInterval>> coords) : coords_(std::move(coords)) {
    for (const auto& c : coords_)
      if (c && c->lo && c->hi && !(*c->lo < *c->hi)) throw PreconditionError("box interval is empty");
  }

  static Box from_doubles(const std::vector<std::optional<std::pair<double, double>>>& coords) {
    std::vector<std::optional<OpenInterval>> out;
    for (const auto& c : coords) {
      if (!c) {
        out.emplace_back();
        continue;
      }
      OpenInterval iv;
      if (std::isfinite(c->first)) iv.lo = ExactRational(c->first);
      if (std::isfinite(c->second)) iv.hi = ExactRational(c->second);
      out.emplace_back(iv);
    }
    return Box(std::move(out));
  }

  int size() const { return static_cast<int>(coords_.size()); }
  const std::optional<OpenInterval>& operator[](int i) const { return coords_[static_cast<std::size_t>(i)]; }

  bool contains(const UtilityVector<double>& u) const {
    for (int i = 0; i < size(); ++i) {
      const auto& c = (*this)[i];
      if (!c) continue;
      ExactRational v(u[i]);
      if (c->lo && !(*c->lo < v)) return false;
      if (c->hi && !(v < *c->hi)) return false;
    }
    return true;
  }

 private:
  std::vector<std::optional<OpenInterval>> coords_;
};

// A pattern is realizable iff, sweeping from the worst class upward, the
// infimum of feasible values stays strictly below each class's common upper
// bound. All constraints are strict, so the feasible set of every class is
// an open interval (max(lower bounds, infimum below), min upper bound).
inline bool pattern_realizable(const WeakOrder& w, const Box& box) {
  auto cls = w.classes();
  std::optional<ExactRational> floor_below;  // infimum of values of the class below
  for (auto c = cls.rbegin(); c != cls.rend(); ++c) {
    std::optional<ExactRational> lo = floor_below, hi;
    for (int x : *c) {
      const auto& iv = box[x];
      if (!iv) continue;
      if (iv->lo && (!lo || *lo < *iv->lo)) lo = iv->lo;
      if (iv->hi && (!hi || *iv->hi < *hi)) hi = iv->hi;
    }
    if (lo && hi && !(*lo < *hi)) return false;
    floor_below = lo;
  }
  return true;
}

inline std::vector<WeakOrder> image_of_box(const Box& box, int n, Ambient ambient) {
  if (box.size() != n) throw DimensionError("box dimension does not match n");
  std::vector<WeakOrder> out;
  for (auto& w : enumerate_preferences(n, ambient_family(ambient)))
    if (pattern_realizable(w, box)) out.push_back(std::move(w));
  return out;
}

// ---------------------------------------------------------------------------
// Numeric openness oracle
//
// For each member of G, utility vectors realizing it are perturbed by vectors
// of magnitude below epsilon. Probe points use two realizations: integer class
// gaps, and a near-degenerate one with gaps of 2*epsilon. Perturbations have
// entries in [-epsilon/2, epsilon/2], so no strict comparison can flip; what
// the probes explore is every way of breaking ties. The perturbation set is
//   * all 2^n sign patterns (+-epsilon/2),
//   * one graded perturbation per weak order w on n points, which breaks ties
//     of the realized order exactly as w does,
//   * `samples` uniform random perturbations.
// G's preimage is reported not open as soon as a perturbed vector stays in the
// ambient set but represents an order outside G.

struct OracleParams {
  int samples = 4;
  std::vector<double> epsilons{0.25, 0.05, 0.01};
  std::uint64_t seed = 0;
};

struct OracleWitness {
  UtilityVector<double> u;
  std::vector<double> perturbation;
  WeakOrder source;
  WeakOrder reached;
};

struct OracleResult {
  bool numeric_open = true;     // verdict of the probes alone
  bool closure_agrees = true;   // refinement-closure criterion gives the same answer
  bool open = true;             // numeric_open, confirmed by the closure criterion
  std::size_t probes = 0;
  std::optional<OracleWitness> witness;
};

inline bool in_ambient(const UtilityVector<double>& v, Ambient a) {
  switch (a) {
    case Ambient::U: return true;
    case Ambient::UStar: return !v.is_constant();
    case Ambient::UStrict: return v.is_injective();
  }
  return true;
}

namespace detail {

inline std::vector<std::vector<double>> probe_directions(int n, Rng& rng, int samples) {
  std::vector<std::vector<double>> dirs;  // entries in [-1, 1], scaled by epsilon/2 later
  for (Mask s = 0; s <= full_mask(n); ++s) {
    std::vector<double> d(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i)] = has(s, i) ? 1.0 : -1.0;
    dirs.push_back(std::move(d));
    if (s == full_mask(n)) break;
  }
  for (const auto& w : enumerate_preferences(n, Family::All, std::max(n, kDefaultEnumerationCap))) {
    std::vector<double> d(static_cast<std::size_t>(n));
    const int m = w.class_count();
    for (int i = 0; i < n; ++i)
      d[static_cast<std::size_t>(i)] = m == 1 ? 0.0 : 1.0 - 2.0 * w.rank(i) / (m - 1);
    dirs.push_back(std::move(d));
  }
  for (int k = 0; k < samples; ++k) {
    std::vector<double> d(static_cast<std::size_t>(n));
    for (auto& v : d) v = rng.uniform(-1.0, 1.0);
    dirs.push_back(std::move(d));
  }
  return dirs;
}

}  // namespace detail

inline bool closure_criterion(const std::vector<WeakOrder>& g, Ambient ambient, int n) {
  std::set<WeakOrder> in(g.begin(), g.end());
  auto fam = enumerate_preferences(n, ambient_family(ambient));
  for (const auto& member : g)
    for (const auto& w : fam)
      if (!in.count(w) && refines(w, member)) return false;
  return true;
}

inline OracleResult openness_oracle_numeric(const std::vector<WeakOrder>& g, Ambient ambient, int n,
                                            const OracleParams& params = {}) {
  if (n < 1) throw PreconditionError("n must be positive");
  if (ambient == Ambient::UStar && n == 1) throw ScopeError("U* is empty when n = 1");
  if (params.samples < 0) throw PreconditionError("samples must be nonnegative");
  if (params.epsilons.empty()) throw PreconditionError("epsilon schedule is empty");
  for (std::size_t i = 0; i < params.epsilons.size(); ++i) {
    if (!(params.epsilons[i] > 0)) throw PreconditionError("epsilons must be positive");
    if (i && !(params.epsilons[i] < params.epsilons[i - 1])) throw PreconditionError("epsilons must decrease");
  }
  for (const auto& w : g) {
    if (w.size() != n) throw DimensionError("member of G has wrong size");
    if (!in_family(w, ambient_family(ambient)))
      throw PreconditionError("member " + w.to_string() + " is not realizable in " + ambient_name(ambient));
  }

  std::set<WeakOrder> in(g.begin(), g.end());
  Rng rng(params.seed);
  const auto dirs = detail::probe_directions(n, rng, params.samples);

  OracleResult r;
  for (const auto& member : in) {
    for (double eps : params.epsilons) {
      for (double gap : {1.0, 2.0 * eps}) {
        const auto u = realize<double>(member, gap);
        for (const auto& d : dirs) {
          UtilityVector<double> v = u;
          std::vector<double> delta(d.size());
          for (std::size_t i = 0; i < d.size(); ++i) {
            delta[i] = 0.5 * eps * d[i];
            v.values[i] += delta[i];
          }
          ++r.probes;
          if (!in_ambient(v, ambient)) continue;
          auto reached = represent(v);
          if (!in.count(reached)) {
            r.numeric_open = false;
            r.witness = OracleWitness{u, delta, member, reached};
            break;
          }
        }
        if (!r.numeric_open) break;
      }
      if (!r.numeric_open) break;
    }
    if (!r.numeric_open) break;
  }
  r.closure_agrees = r.numeric_open == closure_criterion(g, ambient, n);
  r.open = r.numeric_open && r.closure_agrees;
  return r;
}

// Re-checks a witness on its own: the perturbed vector must leave G.
inline bool witness_valid(const OracleWitness& w, const std::vector<WeakOrder>& g, Ambient ambient) {
  UtilityVector<double> v = w.u;
  for (std::size_t i = 0; i < v.values.size(); ++i) v.values[i] += w.perturbation[i];
  if (!in_ambient(v, ambient) || represent(w.u) != w.source) return false;
  return std::find(g.begin(), g.end(), represent(v)) == g.end() &&
         std::find(g.begin(), g.end(), w.source) != g.end();
}

}  // namespace prefspace
