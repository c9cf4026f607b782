#pragma once

// JSON encodings of the value types. Decoders validate and throw
// PreconditionError on malformed input.

#include <prefspace/errors.hpp>
#include <prefspace/order.hpp>
#include <prefspace/topology.hpp>

#include <nlohmann/json.hpp>

#include <cmath>
#include <string>
#include <vector>

namespace prefspace {

using Json = nlohmann::ordered_json;

inline Json to_json(const WeakOrder& w) { return Json{{"n", w.size()}, {"classes", w.classes()}}; }

template <typename T>
Json to_json(const UtilityVector<T>& u) {
  Json values = Json::array();
  for (const auto& v : u.values) values.push_back(to_double(v));
  return Json{{"values", values}};
}

inline Json to_json(const FiniteTopology& t) {
  Json opens = Json::array();
  for (Mask o : t.opens()) opens.push_back(mask_members(o));
  return Json{{"n", t.size()}, {"opens", opens}};
}

inline Json to_json(const SpecPreorder& p) {
  Json leq = Json::array();
  for (const auto& [i, j] : p.pairs()) leq.push_back(Json::array({i, j}));
  return Json{{"n", p.size()}, {"leq", leq}};
}

namespace detail {

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw PreconditionError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

}  // namespace detail

inline WeakOrder weak_order_from_json(const Json& j) {
  return detail::guarded("WeakOrder", [&] {
    return WeakOrder::from_classes(j.at("n").get<int>(), j.at("classes").get<std::vector<std::vector<int>>>());
  });
}

inline UtilityVector<double> utility_from_json(const Json& j) {
  return detail::guarded("UtilityVector", [&] {
    UtilityVector<double> u(j.at("values").get<std::vector<double>>());
    for (double v : u.values)
      if (!std::isfinite(v)) throw PreconditionError("utility values must be finite");
    return u;
  });
}

inline FiniteTopology topology_from_json(const Json& j) {
  return detail::guarded("FiniteTopology", [&] {
    const int n = j.at("n").get<int>();
    check_explicit_size(n);
    std::vector<Mask> opens;
    for (const auto& o : j.at("opens")) {
      auto members = o.get<std::vector<int>>();
      for (int m : members)
        if (m < 0 || m >= n) throw PreconditionError("open set member out of range");
      opens.push_back(mask_of(members));
    }
    return FiniteTopology::from_opens(n, std::move(opens));
  });
}

inline SpecPreorder preorder_from_json(const Json& j) {
  return detail::guarded("SpecPreorder", [&] {
    const int n = j.at("n").get<int>();
    std::vector<std::pair<int, int>> pairs;
    for (const auto& e : j.at("leq")) {
      auto p = e.get<std::vector<int>>();
      if (p.size() != 2 || p[0] < 0 || p[1] < 0 || p[0] >= n || p[1] >= n)
        throw PreconditionError("leq entry must be an in-range pair");
      pairs.emplace_back(p[0], p[1]);
    }
    return SpecPreorder::from_relation(n, pairs);
  });
}

}  // namespace prefspace
