#pragma once

// Alternatives, weak orders, utility vectors and the representation map.
//
// A weak order is stored as a dense rank vector: rank 0 is the best
// indifference class. Two weak orders are equal iff their rank vectors are
// equal, which makes the canonical form exact.

#include <prefspace/errors.hpp>

#include <boost/rational.hpp>

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace prefspace {

using Rational = boost::rational<std::int64_t>;

inline constexpr int kDefaultEnumerationCap = 6;

struct Alternative {
  int index = 0;
  friend auto operator<=>(const Alternative&, const Alternative&) = default;
};

template <typename T = double>
struct UtilityVector {
  std::vector<T> values;

  UtilityVector() = default;
  explicit UtilityVector(std::vector<T> v) : values(std::move(v)) {}
  UtilityVector(std::initializer_list<T> v) : values(v) {}

  int size() const { return static_cast<int>(values.size()); }
  const T& operator[](int i) const { return values[static_cast<std::size_t>(i)]; }
  T& operator[](int i) { return values[static_cast<std::size_t>(i)]; }

  bool is_constant() const {
    return std::adjacent_find(values.begin(), values.end(), std::not_equal_to<>{}) == values.end();
  }
  bool is_injective() const {
    auto sorted = values;
    std::sort(sorted.begin(), sorted.end());
    return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
  }

  friend bool operator==(const UtilityVector&, const UtilityVector&) = default;
};

class WeakOrder {
 public:
  WeakOrder() = default;

  // Any integer scores; smaller score means better. Normalized to dense ranks.
  static WeakOrder from_ranks(const std::vector<int>& scores) {
    std::vector<int> distinct = scores;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    WeakOrder w;
    w.rank_.reserve(scores.size());
    for (int s : scores) {
      w.rank_.push_back(static_cast<int>(std::lower_bound(distinct.begin(), distinct.end(), s) -
                                         distinct.begin()));
    }
    w.class_count_ = static_cast<int>(distinct.size());
    return w;
  }

  // Classes best-first; must partition {0..n-1}.
  static WeakOrder from_classes(int n, const std::vector<std::vector<int>>& classes) {
    if (n < 1) throw PreconditionError("weak order needs at least one alternative");
    std::vector<int> rank(static_cast<std::size_t>(n), -1);
    for (std::size_t c = 0; c < classes.size(); ++c) {
      if (classes[c].empty()) throw PreconditionError("empty indifference class");
      for (int x : classes[c]) {
        if (x < 0 || x >= n) throw PreconditionError("alternative out of range");
        if (rank[static_cast<std::size_t>(x)] != -1) throw PreconditionError("classes overlap");
        rank[static_cast<std::size_t>(x)] = static_cast<int>(c);
      }
    }
    if (std::find(rank.begin(), rank.end(), -1) != rank.end())
      throw PreconditionError("classes do not cover the ground set");
    WeakOrder w;
    w.rank_ = std::move(rank);
    w.class_count_ = static_cast<int>(classes.size());
    return w;
  }

  static WeakOrder total_indifference(int n) { return from_ranks(std::vector<int>(static_cast<std::size_t>(n), 0)); }

  int size() const { return static_cast<int>(rank_.size()); }
  int class_count() const { return class_count_; }
  int rank(int x) const { return rank_[static_cast<std::size_t>(x)]; }
  const std::vector<int>& ranks() const { return rank_; }

  bool strict(int x, int y) const { return rank(x) < rank(y); }
  bool weak(int x, int y) const { return rank(x) <= rank(y); }
  bool indifferent(int x, int y) const { return rank(x) == rank(y); }

  bool is_total_indifference() const { return class_count_ == 1; }
  bool is_strict() const { return class_count_ == size(); }

  std::vector<std::vector<int>> classes() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(class_count_));
    for (int x = 0; x < size(); ++x) out[static_cast<std::size_t>(rank(x))].push_back(x);
    return out;
  }

  // "2>0~1": classes best-first, members ascending.
  std::string to_string() const {
    std::ostringstream os;
    auto cls = classes();
    for (std::size_t c = 0; c < cls.size(); ++c) {
      if (c) os << '>';
      for (std::size_t i = 0; i < cls[c].size(); ++i) {
        if (i) os << '~';
        os << cls[c][i];
      }
    }
    return os.str();
  }

  friend bool operator==(const WeakOrder& a, const WeakOrder& b) { return a.rank_ == b.rank_; }
  friend auto operator<=>(const WeakOrder& a, const WeakOrder& b) { return a.rank_ <=> b.rank_; }

 private:
  std::vector<int> rank_;
  int class_count_ = 0;
};

enum class Family { All, NonTrivial, Strict };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::All: return "P";
    case Family::NonTrivial: return "P*";
    case Family::Strict: return "P^s";
  }
  return "?";
}

inline bool in_family(const WeakOrder& w, Family f) {
  switch (f) {
    case Family::All: return true;
    case Family::NonTrivial: return !w.is_total_indifference();
    case Family::Strict: return w.is_strict();
  }
  return false;
}

template <typename T>
WeakOrder represent(const UtilityVector<T>& u) {
  const int n = u.size();
  std::vector<int> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return u[b] < u[a]; });
  std::vector<int> rank(static_cast<std::size_t>(n), 0);
  int r = 0;
  for (int k = 1; k < n; ++k) {
    if (u[idx[static_cast<std::size_t>(k)]] < u[idx[static_cast<std::size_t>(k - 1)]]) ++r;
    rank[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] = r;
  }
  return WeakOrder::from_ranks(rank);
}

// Lexicographic order on rank vectors; total indifference comes first.
inline std::vector<WeakOrder> enumerate_preferences(int n, Family family,
                                                    int cap = kDefaultEnumerationCap) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  if (n > cap) throw SizeError("enumeration size " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  std::vector<WeakOrder> out;
  std::vector<int> rank(static_cast<std::size_t>(n), 0);
  std::vector<int> used(static_cast<std::size_t>(n), 0);
  // odometer over {0..n-1}^n keeping only dense rank vectors
  while (true) {
    std::fill(used.begin(), used.end(), 0);
    int top = -1;
    for (int r : rank) {
      used[static_cast<std::size_t>(r)] = 1;
      top = std::max(top, r);
    }
    bool dense = true;
    for (int r = 0; r <= top; ++r) dense = dense && used[static_cast<std::size_t>(r)];
    if (dense) {
      auto w = WeakOrder::from_ranks(rank);
      if (in_family(w, family)) out.push_back(std::move(w));
    }
    int pos = n - 1;
    while (pos >= 0 && rank[static_cast<std::size_t>(pos)] == n - 1) rank[static_cast<std::size_t>(pos--)] = 0;
    if (pos < 0) break;
    ++rank[static_cast<std::size_t>(pos)];
  }
  return out;
}

// fine breaks ties of coarse: every strict pair of coarse is strict in fine.
inline bool refines(const WeakOrder& fine, const WeakOrder& coarse) {
  if (fine.size() != coarse.size()) throw DimensionError("refines: ground sets differ");
  const int n = fine.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (coarse.strict(x, y) && !fine.strict(x, y)) return false;
  return true;
}

inline WeakOrder opposite(const WeakOrder& p) {
  std::vector<int> r = p.ranks();
  for (int& v : r) v = -v;
  return WeakOrder::from_ranks(r);
}

// Canonical utility realization: best class gets the largest value, classes
// separated by `gap`.
template <typename T = double>
UtilityVector<T> realize(const WeakOrder& p, T gap = T(1), T base = T(0)) {
  UtilityVector<T> u;
  u.values.reserve(static_cast<std::size_t>(p.size()));
  for (int x = 0; x < p.size(); ++x) u.values.push_back(base + gap * T(p.class_count() - 1 - p.rank(x)));
  return u;
}

// A strictly increasing function known on a finite table of points.
template <typename T = double>
class MonotoneMap {
 public:
  MonotoneMap() = default;
  explicit MonotoneMap(std::vector<std::pair<T, T>> table) : table_(std::move(table)) {
    std::sort(table_.begin(), table_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < table_.size(); ++i) {
      if (!(table_[i - 1].first < table_[i].first)) throw PreconditionError("monotone map: duplicate key");
      if (!(table_[i - 1].second < table_[i].second)) throw PreconditionError("monotone map: not strictly increasing");
    }
  }

  static MonotoneMap identity_on(const UtilityVector<T>& u) {
    std::vector<T> keys = u.values;
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<std::pair<T, T>> t;
    for (const T& k : keys) t.emplace_back(k, k);
    return MonotoneMap(std::move(t));
  }

  const std::vector<std::pair<T, T>>& table() const { return table_; }

  T operator()(const T& x) const {
    auto it = std::lower_bound(table_.begin(), table_.end(), x,
                               [](const auto& e, const T& v) { return e.first < v; });
    if (it == table_.end() || it->first != x) throw std::domain_error("monotone map: value not covered by table");
    return it->second;
  }

 private:
  std::vector<std::pair<T, T>> table_;
};

template <typename T>
UtilityVector<T> apply_monotone(const MonotoneMap<T>& f, const UtilityVector<T>& u) {
  UtilityVector<T> out;
  out.values.reserve(u.values.size());
  for (const T& v : u.values) out.values.push_back(f(v));
  return out;
}

// Squash into a bounded range by a strictly increasing map. arctan for
// floating point; t/(1+|t|) keeps rationals exact (range (-1,1)).
inline UtilityVector<double> normalize_bounded(const UtilityVector<double>& u) {
  UtilityVector<double> out = u;
  for (double& v : out.values) v = std::atan(v);
  return out;
}

template <typename I>
UtilityVector<boost::rational<I>> normalize_bounded(const UtilityVector<boost::rational<I>>& u) {
  UtilityVector<boost::rational<I>> out = u;
  for (auto& v : out.values) v = v / (boost::rational<I>(1) + abs(v));
  return out;
}

template <typename T>
double to_double(const T& v) {
  return static_cast<double>(v);
}
template <typename I>
double to_double(const boost::rational<I>& v) {
  return boost::rational_cast<double>(v);
}

}  // namespace prefspace
