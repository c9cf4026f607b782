#pragma once

// Explicit sequences and paths in utility space: sequences whose every term
// represents one weak order while their limit represents a strictly coarser
// one, and a three-segment path joining two nonconstant utility vectors
// without passing through a constant vector.
//
// Everything is templated on the scalar so the affine formulas can be run in
// exact rational arithmetic.

#include <prefspace/errors.hpp>
#include <prefspace/order.hpp>

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace prefspace {

template <typename T>
struct UtilitySequence {
  std::string construction;
  std::function<UtilityVector<T>(std::int64_t)> generator;  // defined for n >= 1
  UtilityVector<T> declared_limit;
  WeakOrder promised_order;        // represented by every term
  WeakOrder promised_limit_order;  // represented by the limit
  // Alternatives whose branch assignment depends on reading the case split
  // with weak vs strict inequalities (only flatten_middle fills this).
  std::vector<int> boundary_alternatives;

  UtilityVector<T> operator()(std::int64_t n) const { return generator(n); }
};

namespace detail {

template <typename T>
void check_alternative(const UtilityVector<T>& u, Alternative a) {
  if (a.index < 0 || a.index >= u.size()) throw PreconditionError("alternative out of range");
}

}  // namespace detail

// u_n = normalize_bounded(u) / n, converging to the zero vector.
template <typename T>
UtilitySequence<T> flatten_global(const UtilityVector<T>& u) {
  auto bounded = normalize_bounded(u);
  UtilitySequence<T> s;
  s.construction = "flatten_global";
  s.generator = [bounded](std::int64_t n) {
    UtilityVector<T> out = bounded;
    for (auto& v : out.values) v = v / T(n);
    return out;
  };
  s.declared_limit = UtilityVector<T>(std::vector<T>(u.values.size(), T(0)));
  s.promised_order = represent(u);
  s.promised_limit_order = WeakOrder::total_indifference(u.size());
  return s;
}

// Pulls every alternative strictly between x and y toward u(y).
template <typename T>
UtilitySequence<T> flatten_middle(const UtilityVector<T>& u, Alternative x, Alternative y) {
  detail::check_alternative(u, x);
  detail::check_alternative(u, y);
  const auto p = represent(u);
  auto between = [&](int z) { return p.strict(x.index, z) && p.strict(z, y.index); };
  bool any = false;
  for (int z = 0; z < u.size(); ++z) any = any || between(z);
  if (!p.strict(x.index, y.index) || !any)
    throw PreconditionError("flatten_middle needs x strictly above y with an alternative strictly between");

  UtilitySequence<T> s;
  s.construction = "flatten_middle";
  const T uy = u[y.index];
  s.generator = [u, uy, p, x, y](std::int64_t n) {
    UtilityVector<T> out = u;
    for (int z = 0; z < u.size(); ++z)
      if (p.strict(x.index, z) && p.strict(z, y.index)) out[z] = (T(n - 1) * uy + u[z]) / T(n);
    return out;
  };
  s.declared_limit = u;
  for (int z = 0; z < u.size(); ++z)
    if (between(z)) s.declared_limit[z] = uy;
  s.promised_order = p;
  s.promised_limit_order = represent(s.declared_limit);
  for (int z = 0; z < u.size(); ++z)
    if (z != x.index && z != y.index && (p.indifferent(z, x.index) || p.indifferent(z, y.index)))
      s.boundary_alternatives.push_back(z);
  return s;
}

// Breaks the tie x ~ y by 2/n: x and everything strictly below it drop,
// y and everything strictly above it rise. Other members of the tied class
// stay put, so only this tie is refined. Converges back to u.
template <typename T>
UtilitySequence<T> prop1_sequence(const UtilityVector<T>& u, Alternative x, Alternative y) {
  detail::check_alternative(u, x);
  detail::check_alternative(u, y);
  const auto p = represent(u);
  if (x == y || !p.indifferent(x.index, y.index)) throw PreconditionError("prop1_sequence needs two tied alternatives");

  UtilitySequence<T> s;
  s.construction = "prop1_sequence";
  s.generator = [u, p, x, y](std::int64_t n) {
    UtilityVector<T> out = u;
    const T shift = T(2) / T(n);
    for (int z = 0; z < u.size(); ++z) {
      if (z == x.index || p.strict(x.index, z))
        out[z] = u[z] - shift;
      else if (z == y.index || p.strict(z, y.index))
        out[z] = u[z] + shift;
    }
    return out;
  };
  s.declared_limit = u;
  std::vector<int> score(static_cast<std::size_t>(u.size()));
  for (int z = 0; z < u.size(); ++z) score[static_cast<std::size_t>(z)] = 3 * p.rank(z) + (z == y.index ? 0 : z == x.index ? 2 : 1);
  s.promised_order = WeakOrder::from_ranks(score);
  s.promised_limit_order = p;
  return s;
}

// One sequence per tied pair (x < y).
template <typename T>
std::vector<UtilitySequence<T>> prop1_sequences_all_ties(const UtilityVector<T>& u) {
  const auto p = represent(u);
  std::vector<UtilitySequence<T>> out;
  for (int x = 0; x < u.size(); ++x)
    for (int y = x + 1; y < u.size(); ++y)
      if (p.indifferent(x, y)) out.push_back(prop1_sequence(u, Alternative{x}, Alternative{y}));
  return out;
}

enum class CollapseSide { Lower, Upper };

// Compresses the weak lower (or upper) contour of x onto u(x).
template <typename T>
UtilitySequence<T> prop3_case_sequence(const UtilityVector<T>& u, Alternative x, CollapseSide side) {
  detail::check_alternative(u, x);
  const auto p = represent(u);
  const int r = p.rank(x.index);
  if (r == 0 || r == p.class_count() - 1) throw PreconditionError("prop3_case_sequence needs x neither maximal nor minimal");

  auto affected = [p, x, side](int z) {
    return side == CollapseSide::Lower ? p.weak(x.index, z) : p.weak(z, x.index);
  };
  UtilitySequence<T> s;
  s.construction = side == CollapseSide::Lower ? "prop3_lower" : "prop3_upper";
  const T ux = u[x.index];
  s.generator = [u, ux, affected](std::int64_t n) {
    UtilityVector<T> out = u;
    for (int z = 0; z < u.size(); ++z)
      if (affected(z)) out[z] = (u[z] + T(n - 1) * ux) / T(n);
    return out;
  };
  s.declared_limit = u;
  for (int z = 0; z < u.size(); ++z)
    if (affected(z)) s.declared_limit[z] = ux;
  s.promised_order = p;
  s.promised_limit_order = represent(s.declared_limit);
  return s;
}

// ---------------------------------------------------------------------------
// Three-segment path through nonconstant vectors

template <typename T>
struct UtilityPath {
  int x = 0;
  int y = 0;
  int c = 0;
  UtilityVector<T> start;
  UtilityVector<T> end;
  UtilityVector<T> w1;  // after segment one
  UtilityVector<T> w2;  // after segment two
  static constexpr int segment_count = 3;

  // Each segment occupies a third of [0, 1].
  UtilityVector<T> operator()(const T& s) const {
    const T k = T(3) * s;
    if (k <= T(1)) return step1(k);
    if (k <= T(2)) return step2(k - T(1));
    return step3(k - T(2));
  }

  // x and y frozen, everything else moves from u to v.
  UtilityVector<T> step1(const T& t) const {
    UtilityVector<T> out = start;
    for (int z = 0; z < start.size(); ++z)
      if (z != x && z != y) out[z] = (T(1) - t) * start[z] + t * end[z];
    return out;
  }
  // x moves to v(x); y moves to v(x) as well.
  UtilityVector<T> step2(const T& t) const {
    UtilityVector<T> out = w1;
    out[x] = (T(1) - t) * start[x] + t * end[x];
    out[y] = (T(1) - t) * start[y] + t * end[x];
    return out;
  }
  // y moves from v(x) to v(y).
  UtilityVector<T> step3(const T& t) const {
    UtilityVector<T> out = w2;
    out[y] = (T(1) - t) * w2[y] + t * end[y];
    return out;
  }
};

// Anchors: first (x, y, c) in lexicographic order with u(x) != u(y),
// c != y and v(x) != v(c).
template <typename T>
UtilityPath<T> three_step_path(const UtilityVector<T>& u, const UtilityVector<T>& v) {
  if (u.size() != v.size()) throw DimensionError("three_step_path: dimension mismatch");
  if (u.size() < 3) throw ScopeError("three_step_path needs at least three alternatives");
  if (u.is_constant() || v.is_constant()) throw PreconditionError("three_step_path needs nonconstant endpoints");
  const int n = u.size();
  UtilityPath<T> path;
  path.start = u;
  path.end = v;
  bool found = false;
  for (int x = 0; x < n && !found; ++x)
    for (int y = 0; y < n && !found; ++y) {
      if (y == x || u[x] == u[y]) continue;
      for (int c = 0; c < n && !found; ++c)
        if (c != y && v[x] != v[c]) {
          path.x = x;
          path.y = y;
          path.c = c;
          found = true;
        }
    }
  if (!found) throw PreconditionError("three_step_path: no anchors found");  // unreachable for n >= 3
  path.w1 = path.step1(T(1));
  path.w2 = path.step2(T(1));
  return path;
}

// First sample s = k/samples where t(s)(x) - t(s)(y) is zero or has the
// opposite sign from s = 0.
template <typename T, typename Path>
std::optional<T> first_tie_crossing(const Path& path, int x, int y, int samples) {
  const auto d0 = path(T(0))[x] - path(T(0))[y];
  for (int k = 1; k <= samples; ++k) {
    const T s = T(k) / T(samples);
    const auto v = path(s);
    const auto d = v[x] - v[y];
    if (d == T(0) || (d0 > T(0)) != (d > T(0))) return s;
  }
  return std::nullopt;
}

// Straight segment (1 - s) u + s v.
template <typename T>
struct LinearPath {
  UtilityVector<T> start;
  UtilityVector<T> end;
  UtilityVector<T> operator()(const T& s) const {
    UtilityVector<T> out = start;
    for (int z = 0; z < start.size(); ++z) out[z] = (T(1) - s) * start[z] + s * end[z];
    return out;
  }
};

// ---------------------------------------------------------------------------
// Verification

struct TraceRow {
  std::string index;  // "1", "2", ..., or "limit"
  std::vector<double> values;
  WeakOrder order;
};

struct SequenceReport {
  std::string construction;
  bool converged = false;
  double final_deviation = 0.0;
  bool order_constant = false;
  bool limit_order_ok = false;
  bool limit_is_coarsening = false;
  bool passed = false;
  std::vector<TraceRow> trace;
};

// Probes n = 1, 2, 4, ..., 2^depth.
template <typename T>
SequenceReport verify_sequence(const UtilitySequence<T>& seq, double tolerance, int depth) {
  if (!(tolerance > 0)) throw PreconditionError("tolerance must be positive");
  if (depth < 0 || depth > 60) throw PreconditionError("depth must be in [0, 60]");
  SequenceReport r;
  r.construction = seq.construction;
  r.order_constant = true;
  auto as_doubles = [](const UtilityVector<T>& v) {
    std::vector<double> out;
    for (const auto& x : v.values) out.push_back(to_double(x));
    return out;
  };
  for (int k = 0; k <= depth; ++k) {
    const std::int64_t n = std::int64_t{1} << k;
    const auto un = seq(n);
    const auto order = represent(un);
    r.order_constant = r.order_constant && order == seq.promised_order;
    r.trace.push_back({std::to_string(n), as_doubles(un), order});
    if (k == depth) {
      double dev = 0.0;
      for (int i = 0; i < un.size(); ++i) dev = std::max(dev, std::abs(to_double(un[i] - seq.declared_limit[i])));
      r.final_deviation = dev;
      r.converged = dev <= tolerance;
    }
  }
  const auto limit_order = represent(seq.declared_limit);
  r.trace.push_back({"limit", as_doubles(seq.declared_limit), limit_order});
  r.limit_order_ok = limit_order == seq.promised_limit_order;
  r.limit_is_coarsening = refines(seq.promised_order, limit_order);
  r.passed = r.converged && r.order_constant && r.limit_order_ok && r.limit_is_coarsening;
  return r;
}

// Columns: n, v0..v{k-1}, weak_order.
inline std::string trace_csv(const std::vector<TraceRow>& rows, const std::string& index_column = "n") {
  std::ostringstream os;
  os.precision(17);
  const std::size_t width = rows.empty() ? 0 : rows.front().values.size();
  os << index_column;
  for (std::size_t i = 0; i < width; ++i) os << ",v" << i;
  os << ",weak_order\n";
  for (const auto& row : rows) {
    os << row.index;
    for (double v : row.values) os << ',' << v;
    os << ',' << row.order.to_string() << '\n';
  }
  return os.str();
}

template <typename T>
std::vector<TraceRow> path_trace(const UtilityPath<T>& path, int samples) {
  std::vector<TraceRow> rows;
  for (int k = 0; k <= samples; ++k) {
    const T s = T(k) / T(samples);
    const auto v = path(s);
    std::vector<double> vals;
    for (const auto& x : v.values) vals.push_back(to_double(x));
    std::ostringstream idx;
    idx.precision(17);
    idx << to_double(s);
    rows.push_back({idx.str(), std::move(vals), represent(v)});
  }
  return rows;
}

}  // namespace prefspace
