#pragma once

// Finite topological spaces, in two representations:
//
//  * FiniteTopology: an explicit family of open sets over a ground set of at
//    most kMaxExplicitGround points, each open stored as a bitmask.
//  * SpecPreorder: the specialization preorder of an Alexandrov topology.
//    leq(i, j) holds iff i lies in the closure of {j}, equivalently iff every
//    open set containing i also contains j. Open sets are the up-sets.
//
// Every finite topology is Alexandrov, so the two carry the same information;
// the preorder form scales to families with hundreds of points.

#include <prefspace/errors.hpp>

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace prefspace {

using Mask = std::uint32_t;
using Bits = boost::dynamic_bitset<>;

inline constexpr int kMaxExplicitGround = 12;

inline Mask full_mask(int n) { return n >= 32 ? ~Mask{0} : ((Mask{1} << n) - 1); }
inline bool has(Mask m, int i) { return (m >> i) & 1u; }
inline int popcount(Mask m) { return std::popcount(m); }

inline std::vector<int> mask_members(Mask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i);
  return out;
}

inline Mask mask_of(const std::vector<int>& members) {
  Mask m = 0;
  for (int i : members) m |= Mask{1} << i;
  return m;
}

inline std::vector<int> bits_members(const Bits& b) {
  std::vector<int> out;
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i)) out.push_back(static_cast<int>(i));
  return out;
}

inline void check_explicit_size(int n) {
  if (n < 0) throw PreconditionError("negative ground size");
  if (n > kMaxExplicitGround)
    throw SizeError("explicit topologies are limited to " + std::to_string(kMaxExplicitGround) + " points");
}

class FiniteTopology {
 public:
  FiniteTopology() = default;

  // Validates the axioms: contains empty and full set, closed under pairwise
  // union and intersection.
  static FiniteTopology from_opens(int n, std::vector<Mask> opens) {
    check_explicit_size(n);
    const Mask full = full_mask(n);
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    for (Mask m : opens)
      if (m & ~full) throw PreconditionError("open set out of range");
    auto contains = [&](Mask m) { return std::binary_search(opens.begin(), opens.end(), m); };
    if (!contains(0) || !contains(full)) throw PreconditionError("topology must contain empty and full set");
    for (Mask a : opens)
      for (Mask b : opens)
        if (!contains(a | b) || !contains(a & b)) throw PreconditionError("family is not closed under union/intersection");
    FiniteTopology t;
    t.n_ = n;
    t.opens_ = std::move(opens);
    return t;
  }

  static FiniteTopology discrete(int n) {
    check_explicit_size(n);
    std::vector<Mask> all(std::size_t{1} << n);
    std::iota(all.begin(), all.end(), Mask{0});
    FiniteTopology t;
    t.n_ = n;
    t.opens_ = std::move(all);
    return t;
  }

  static FiniteTopology trivial(int n) {
    check_explicit_size(n);
    FiniteTopology t;
    t.n_ = n;
    t.opens_ = n == 0 ? std::vector<Mask>{0} : std::vector<Mask>{0, full_mask(n)};
    return t;
  }

  int size() const { return n_; }
  Mask full() const { return full_mask(n_); }
  const std::vector<Mask>& opens() const { return opens_; }
  bool is_open(Mask s) const {
    if (s & ~full()) throw std::out_of_range("subset out of range");
    return std::binary_search(opens_.begin(), opens_.end(), s);
  }

  // Smallest open set containing x.
  Mask minimal_neighborhood(int x) const {
    Mask m = full();
    for (Mask o : opens_)
      if (has(o, x)) m &= o;
    return m;
  }

  friend bool operator==(const FiniteTopology&, const FiniteTopology&) = default;

 private:
  int n_ = 0;
  std::vector<Mask> opens_;
};

class SpecPreorder {
 public:
  SpecPreorder() = default;

  // Builds from an arbitrary relation; takes the reflexive-transitive closure.
  static SpecPreorder from_relation(int n, const std::vector<std::pair<int, int>>& pairs) {
    SpecPreorder p(n);
    for (auto [i, j] : pairs) {
      if (i < 0 || j < 0 || i >= n || j >= n) throw PreconditionError("relation pair out of range");
      p.up_[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(j));
    }
    p.close();
    return p;
  }

  // leq(i, j) := pred(i, j); pred must already be reflexive and transitive.
  template <typename Pred>
  static SpecPreorder from_predicate(int n, Pred&& pred) {
    SpecPreorder p(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (pred(i, j)) p.up_[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(j));
    p.rebuild_down();
    return p;
  }

  int size() const { return n_; }
  bool leq(int i, int j) const { return up_[static_cast<std::size_t>(i)].test(static_cast<std::size_t>(j)); }

  // {j : leq(i, j)}: the smallest open set containing i.
  const Bits& up(int i) const { return up_[static_cast<std::size_t>(i)]; }
  // {j : leq(j, i)}: the closure of {i}.
  const Bits& down(int i) const { return down_[static_cast<std::size_t>(i)]; }

  bool is_reflexive() const {
    for (int i = 0; i < n_; ++i)
      if (!leq(i, i)) return false;
    return true;
  }
  bool is_transitive() const {
    for (int i = 0; i < n_; ++i)
      for (int j : bits_members(up(i)))
        if (!up(j).is_subset_of(up(i))) return false;
    return true;
  }
  bool is_antisymmetric() const {
    for (int i = 0; i < n_; ++i)
      for (int j : bits_members(up(i)))
        if (j != i && leq(j, i)) return false;
    return true;
  }

  // Subspace on the given points, reindexed in the given order.
  SpecPreorder restrict_to(const std::vector<int>& points) const {
    const int m = static_cast<int>(points.size());
    return from_predicate(m, [&](int a, int b) {
      return leq(points[static_cast<std::size_t>(a)], points[static_cast<std::size_t>(b)]);
    });
  }

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n_; ++i)
      for (int j : bits_members(up(i))) out.emplace_back(i, j);
    return out;
  }

  friend bool operator==(const SpecPreorder& a, const SpecPreorder& b) { return a.n_ == b.n_ && a.up_ == b.up_; }

 private:
  explicit SpecPreorder(int n) : n_(n), up_(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n))) {
    for (int i = 0; i < n; ++i) up_[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(i));
  }

  void close() {
    // Warshall on bit rows
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        if (leq(i, k)) up_[static_cast<std::size_t>(i)] |= up_[static_cast<std::size_t>(k)];
    rebuild_down();
  }

  void rebuild_down() {
    down_.assign(static_cast<std::size_t>(n_), Bits(static_cast<std::size_t>(n_)));
    for (int i = 0; i < n_; ++i)
      for (int j : bits_members(up(i))) down_[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(i));
  }

  int n_ = 0;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
};

struct SierpinskiPoint {
  int value = 0;  // 0 or 1
  friend auto operator<=>(const SierpinskiPoint&, const SierpinskiPoint&) = default;
};

// Points {0, 1}, opens {∅, {1}, {0,1}}.
inline FiniteTopology sierpinski_space() { return FiniteTopology::from_opens(2, {0b00, 0b10, 0b11}); }

// ---------------------------------------------------------------------------
// Construction

// Closes under finite intersections, then under unions.
inline FiniteTopology generate_from_subbasis(int n, const std::vector<Mask>& subbasis) {
  check_explicit_size(n);
  const Mask full = full_mask(n);
  for (Mask s : subbasis)
    if (s & ~full) throw PreconditionError("subbasis member out of range");

  std::set<Mask> basis{full};
  for (Mask s : subbasis) {
    std::vector<Mask> add;
    for (Mask b : basis) add.push_back(b & s);
    basis.insert(add.begin(), add.end());
  }

  std::set<Mask> opens{0};
  for (Mask b : basis) {
    std::vector<Mask> add;
    for (Mask o : opens) add.push_back(o | b);
    opens.insert(add.begin(), add.end());
  }
  return FiniteTopology::from_opens(n, {opens.begin(), opens.end()});
}

// All topologies on n labelled points (n <= 4), by brute force over candidate
// families of subsets. Ordered by their sorted open lists.
inline std::vector<FiniteTopology> enumerate_topologies(int n) {
  if (n < 0) throw PreconditionError("negative size");
  if (n > 4) throw SizeError("enumerate_topologies supports n <= 4");
  const Mask full = full_mask(n);
  std::vector<Mask> middle;  // proper nonempty subsets
  for (Mask s = 1; s < full; ++s) middle.push_back(s);
  std::vector<FiniteTopology> out;
  const std::uint64_t combos = std::uint64_t{1} << middle.size();
  for (std::uint64_t pick = 0; pick < combos; ++pick) {
    std::vector<Mask> opens{0, full};
    for (std::size_t k = 0; k < middle.size(); ++k)
      if ((pick >> k) & 1u) opens.push_back(middle[k]);
    std::sort(opens.begin(), opens.end());
    opens.erase(std::unique(opens.begin(), opens.end()), opens.end());
    bool ok = true;
    for (std::size_t a = 0; a < opens.size() && ok; ++a)
      for (std::size_t b = a + 1; b < opens.size() && ok; ++b)
        ok = std::binary_search(opens.begin(), opens.end(), opens[a] | opens[b]) &&
             std::binary_search(opens.begin(), opens.end(), opens[a] & opens[b]);
    if (ok) out.push_back(FiniteTopology::from_opens(n, std::move(opens)));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.opens() < b.opens(); });
  return out;
}

inline SpecPreorder specialization(const FiniteTopology& t) {
  std::vector<Mask> nbhd(static_cast<std::size_t>(t.size()));
  for (int i = 0; i < t.size(); ++i) nbhd[static_cast<std::size_t>(i)] = t.minimal_neighborhood(i);
  return SpecPreorder::from_predicate(t.size(), [&](int i, int j) { return has(nbhd[static_cast<std::size_t>(i)], j); });
}

// The up-sets of a preorder, as an explicit topology.
inline FiniteTopology alexandrov_topology(const SpecPreorder& p) {
  const int n = p.size();
  check_explicit_size(n);
  std::vector<Mask> up(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) up[static_cast<std::size_t>(i)] = mask_of(bits_members(p.up(i)));
  std::vector<Mask> opens;
  for (Mask s = 0; s <= full_mask(n); ++s) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (has(s, i)) ok = (up[static_cast<std::size_t>(i)] & ~s) == 0;
    if (ok) opens.push_back(s);
    if (s == full_mask(n)) break;
  }
  return FiniteTopology::from_opens(n, std::move(opens));
}

// ---------------------------------------------------------------------------
// Open sets and closure

inline bool is_open(const FiniteTopology& t, Mask s) { return t.is_open(s); }

inline bool is_open(const SpecPreorder& p, const Bits& s) {
  if (static_cast<int>(s.size()) != p.size()) throw std::out_of_range("subset size does not match space");
  for (auto y = s.find_first(); y != Bits::npos; y = s.find_next(y))
    if (!p.up(static_cast<int>(y)).is_subset_of(s)) return false;
  return true;
}

// Intersection of all closed sets containing s.
inline Mask closure(const FiniteTopology& t, Mask s) {
  if (s & ~t.full()) throw std::out_of_range("subset out of range");
  Mask c = t.full();
  for (Mask o : t.opens())
    if ((o & s) == 0) c &= ~o;
  return c;
}

inline Bits closure(const SpecPreorder& p, const Bits& s) {
  if (static_cast<int>(s.size()) != p.size()) throw std::out_of_range("subset size does not match space");
  Bits c(s.size());
  for (auto j = s.find_first(); j != Bits::npos; j = s.find_next(j)) c |= p.down(static_cast<int>(j));
  return c;
}

// Smallest open set containing s.
inline Bits up_closure(const SpecPreorder& p, const Bits& s) {
  Bits c(s.size());
  for (auto j = s.find_first(); j != Bits::npos; j = s.find_next(j)) c |= p.up(static_cast<int>(j));
  return c;
}

// ---------------------------------------------------------------------------
// Separation and connectivity

struct SeparationFlags {
  bool t0 = false;
  bool t1 = false;
  bool t2 = false;
  friend bool operator==(const SeparationFlags&, const SeparationFlags&) = default;
};

// For finite spaces T1 and T2 both reduce to discreteness.
inline SeparationFlags separation_axioms(const SpecPreorder& p) {
  SeparationFlags f;
  f.t0 = p.is_antisymmetric();
  bool discrete = true;
  for (int i = 0; i < p.size() && discrete; ++i) discrete = p.up(i).count() == 1;
  f.t1 = discrete;
  f.t2 = discrete;
  return f;
}

inline SeparationFlags separation_axioms(const FiniteTopology& t) { return separation_axioms(specialization(t)); }

// Direct Hausdorff test on explicit opens, independent of the preorder route.
inline bool is_hausdorff_explicit(const FiniteTopology& t) {
  for (int a = 0; a < t.size(); ++a)
    for (int b = a + 1; b < t.size(); ++b) {
      bool separated = false;
      for (Mask oa : t.opens()) {
        if (!has(oa, a)) continue;
        for (Mask ob : t.opens())
          if (has(ob, b) && (oa & ob) == 0) {
            separated = true;
            break;
          }
        if (separated) break;
      }
      if (!separated) return false;
    }
  return true;
}

struct Connectivity {
  bool connected = false;
  bool path_connected = false;
  bool totally_path_disconnected = false;
  std::vector<std::vector<int>> components;
};

// Components of the comparability graph of the specialization preorder.
// A finite space is path-connected iff it is connected.
inline Connectivity connectivity(const SpecPreorder& p) {
  const int n = p.size();
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  };
  for (int i = 0; i < n; ++i)
    for (int j : bits_members(p.up(i))) {
      int a = find(i), b = find(j);
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  std::vector<std::vector<int>> by_root(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) by_root[static_cast<std::size_t>(find(i))].push_back(i);
  Connectivity c;
  for (auto& comp : by_root)
    if (!comp.empty()) c.components.push_back(std::move(comp));
  c.connected = c.components.size() <= 1;
  c.path_connected = c.connected;
  c.totally_path_disconnected = std::all_of(c.components.begin(), c.components.end(),
                                            [](const auto& comp) { return comp.size() == 1; });
  return c;
}

inline Connectivity connectivity(const FiniteTopology& t) { return connectivity(specialization(t)); }

// Path from `to` back to `from` where from ∈ cl{to}: s < 1 maps to `to`,
// s = 1 maps to `from`. Preimages of opens are [0,1) or [0,1], both open.
struct SpecializationPath {
  int from = 0;
  int to = 0;
  int operator()(double s) const { return s < 1.0 ? to : from; }
};

inline std::optional<SpecializationPath> specialization_path(const SpecPreorder& p, int from, int to) {
  if (!p.leq(from, to)) return std::nullopt;
  return SpecializationPath{from, to};
}

// Continuity between Alexandrov spaces is monotonicity of specialization.
template <typename Map>
bool is_continuous_map(const SpecPreorder& domain, const SpecPreorder& codomain, Map&& f) {
  for (int i = 0; i < domain.size(); ++i)
    for (int j : bits_members(domain.up(i)))
      if (!codomain.leq(f(i), f(j))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Bases

template <typename Set>
struct BasisCheck {
  bool ok = true;
  std::optional<std::pair<Set, int>> witness;  // (open set, point) with no member p ∈ B ⊆ G
};

inline BasisCheck<Bits> is_basis(const std::vector<Bits>& family, const SpecPreorder& p) {
  BasisCheck<Bits> r;
  for (const Bits& b : family) {
    if (!is_open(p, b)) {
      for (int x : bits_members(b))
        if (!p.up(x).is_subset_of(b)) {
          r.ok = false;
          r.witness = std::make_pair(b, x);
          return r;
        }
    }
  }
  // every open G ∋ x contains up(x), so up(x) is the hardest case.
  for (int x = 0; x < p.size(); ++x) {
    const Bits& g = p.up(x);
    bool found = false;
    for (const Bits& b : family)
      if (b.test(static_cast<std::size_t>(x)) && b.is_subset_of(g)) {
        found = true;
        break;
      }
    if (!found) {
      r.ok = false;
      r.witness = std::make_pair(g, x);
      return r;
    }
  }
  return r;
}

inline BasisCheck<Mask> is_basis(const std::vector<Mask>& family, const FiniteTopology& t) {
  BasisCheck<Mask> r;
  for (Mask b : family)
    if (!t.is_open(b)) {
      r.ok = false;
      r.witness = std::make_pair(b, mask_members(b).empty() ? -1 : mask_members(b).front());
      return r;
    }
  for (Mask g : t.opens())
    for (int x : mask_members(g)) {
      bool found = std::any_of(family.begin(), family.end(),
                               [&](Mask b) { return has(b, x) && (b & ~g) == 0; });
      if (!found) {
        r.ok = false;
        r.witness = std::make_pair(g, x);
        return r;
      }
    }
  return r;
}

}  // namespace prefspace
