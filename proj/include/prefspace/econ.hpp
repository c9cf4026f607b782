#pragma once

// Two-good consumer demand: CES, Cobb-Douglas and Leontief utilities, their
// closed-form demands, a golden-section oracle on the budget line, and the
// sigma -> 1 / sigma -> 0 limit and compensation checks.
//
// sigma is the primary CES parameter, rho = 1/sigma - 1. sigma = 1 and
// sigma = 0 are never evaluated through the CES formula; use the explicit kinds.

#include <prefspace/claim_report.hpp>
#include <prefspace/errors.hpp>
#include <prefspace/order.hpp>
#include <prefspace/random.hpp>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace prefspace {

enum class UtilityKind { Ces, CobbDouglas, Leontief };

inline const char* kind_name(UtilityKind k) {
  switch (k) {
    case UtilityKind::Ces: return "ces";
    case UtilityKind::CobbDouglas: return "cobb_douglas";
    case UtilityKind::Leontief: return "leontief";
  }
  return "?";
}

struct Preference {
  UtilityKind kind = UtilityKind::CobbDouglas;
  double alpha = 0.5;
  double sigma = 1;  // CES only

  double rho() const { return 1 / sigma - 1; }
};

inline void check_alpha(double alpha) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("alpha must lie in (0,1)");
}

inline Preference ces(double alpha, double sigma) {
  check_alpha(alpha);
  if (!(sigma > 0) || sigma == 1 || !std::isfinite(sigma)) throw DomainError("ces needs sigma in (0,1) or (1,inf)");
  return {UtilityKind::Ces, alpha, sigma};
}
inline Preference ces_rho(double alpha, double rho) {
  if (!(rho > -1) || rho == 0) throw DomainError("ces needs rho > -1, rho != 0");
  return ces(alpha, 1 / (1 + rho));
}
inline Preference cobb_douglas(double alpha) {
  check_alpha(alpha);
  return {UtilityKind::CobbDouglas, alpha, 1};
}
inline Preference leontief(double alpha) {
  check_alpha(alpha);
  return {UtilityKind::Leontief, alpha, 0};
}

template <typename T>
struct Budget {
  T p1, p2, w;

  void validate() const {
    if (!(p1 > T(0) && p2 > T(0) && w > T(0))) throw DomainError("prices and wealth must be positive");
  }
};

template <typename T>
struct Bundle {
  T x1, x2;
  bool operator==(const Bundle&) const = default;
};

namespace detail {

// log(exp(a) + exp(b))
template <typename F>
F log_add(F a, F b) {
  const F m = std::max(a, b);
  return m + std::log1p(std::exp(std::min(a, b) - m));
}

// log of the CES aggregate at strictly positive log-quantities la, lb.
template <typename F>
F ces_log(F alpha, F rho, F la, F lb) {
  if (std::fabs(rho) < F(0.5)) {
    // near Cobb-Douglas: the inner sum is 1 + O(rho)
    const F inner = alpha * std::expm1(-rho * la) + (1 - alpha) * std::expm1(-rho * lb);
    return -std::log1p(inner) / rho;
  }
  return -log_add(std::log(alpha) - rho * la, std::log1p(-alpha) - rho * lb) / rho;
}

}  // namespace detail

// log U, or -inf where U = 0.
template <typename F>
F log_utility(const Preference& p, F x1, F x2) {
  if (!(x1 >= 0 && x2 >= 0)) throw DomainError("bundle must be nonnegative");
  const F a = p.alpha;
  const F ninf = -std::numeric_limits<F>::infinity();
  switch (p.kind) {
    case UtilityKind::CobbDouglas:
      if (x1 == 0 || x2 == 0) return ninf;
      return a * std::log(x1) + (1 - a) * std::log(x2);
    case UtilityKind::Leontief: {
      const F m = std::min(a * x1, (1 - a) * x2);
      return m == 0 ? ninf : std::log(m);
    }
    case UtilityKind::Ces: {
      const F rho = F(1) / F(p.sigma) - 1;
      if (x1 == 0 || x2 == 0) {
        if (rho > 0) throw DomainError("ces with rho > 0 needs a strictly positive bundle");
        if (x1 == 0 && x2 == 0) return ninf;
        // only one term survives: (c x^{-rho})^{-1/rho} = c^{-1/rho} x
        return x1 == 0 ? std::log1p(-a) * (-1 / rho) + std::log(x2) : std::log(a) * (-1 / rho) + std::log(x1);
      }
      return detail::ces_log(a, rho, F(std::log(x1)), F(std::log(x2)));
    }
  }
  return ninf;
}

template <typename F>
F utility(const Preference& p, F x1, F x2) {
  if (p.kind == UtilityKind::Leontief) {
    if (!(x1 >= 0 && x2 >= 0)) throw DomainError("bundle must be nonnegative");
    return std::min(F(p.alpha) * x1, (1 - F(p.alpha)) * x2);
  }
  return std::exp(log_utility(p, x1, x2));
}

inline double utility(const Preference& p, Bundle<double> x) { return utility(p, x.x1, x.x2); }

// Closed forms. Cobb-Douglas and Leontief are generic so they run exactly
// over rationals.
template <typename T>
Bundle<T> cobb_douglas_demand(const T& alpha, const Budget<T>& b) {
  b.validate();
  return {alpha * b.w / b.p1, (T(1) - alpha) * b.w / b.p2};
}

template <typename T>
Bundle<T> leontief_demand(const T& alpha, const Budget<T>& b) {
  b.validate();
  // alpha x1 = (1 - alpha) x2 on the budget line
  const T d = (T(1) - alpha) * b.p1 + alpha * b.p2;
  return {(T(1) - alpha) * b.w / d, alpha * b.w / d};
}

inline Bundle<double> demand(const Preference& p, const Budget<double>& b) {
  b.validate();
  switch (p.kind) {
    case UtilityKind::CobbDouglas: return cobb_douglas_demand(p.alpha, b);
    case UtilityKind::Leontief: return leontief_demand(p.alpha, b);
    case UtilityKind::Ces: {
      // x1/x2 = (alpha p2 / ((1 - alpha) p1))^sigma; written as shares to
      // stay finite when the ratio over- or underflows
      const double lr = p.sigma * (std::log(p.alpha) - std::log1p(-p.alpha) + std::log(b.p2) - std::log(b.p1));
      // spend share on good 1: p1 x1 / w = 1 / (1 + p2 / (p1 r)); each share
      // from its own logistic so neither loses digits near 0 or 1
      const double z = std::log(b.p2) - std::log(b.p1) - lr;
      return {b.w / (b.p1 * (1 + std::exp(z))), b.w / (b.p2 * (1 + std::exp(-z)))};
    }
  }
  return {0, 0};
}

namespace detail {

// Plain textbook formulas, evaluated at high precision so cancellation near
// sigma = 1 does not matter. Kept apart from log_utility on purpose.
template <typename F>
F oracle_log_utility(const Preference& p, const F& x1, const F& x2) {
  using std::exp;
  using std::log;
  using std::pow;
  const F a(p.alpha);
  switch (p.kind) {
    case UtilityKind::CobbDouglas: return a * log(x1) + (1 - a) * log(x2);
    case UtilityKind::Leontief: {
      const F l = a * x1, r = (1 - a) * x2;
      return log(l < r ? l : r);
    }
    case UtilityKind::Ces: {
      const F rho = F(1) / F(p.sigma) - 1;
      return -log(a * pow(x1, -rho) + (1 - a) * pow(x2, -rho)) / rho;
    }
  }
  return F(0);
}

}  // namespace detail

// Golden-section search over the expenditure share t on good 1 in 113-bit
// floats. Uses only utility evaluations. Double precision stalls near
// sqrt(eps) on flat optima (large sigma, extreme shares), far above 1e-8.
inline Bundle<double> demand_oracle(const Preference& p, const Budget<double>& b, int iterations = 110) {
  b.validate();
  using F = boost::multiprecision::cpp_bin_float_quad;
  const F w = b.w, p1 = b.p1, p2 = b.p2;
  auto f = [&](const F& t) { return detail::oracle_log_utility<F>(p, t * w / p1, (1 - t) * w / p2); };
  const F g = (boost::multiprecision::sqrt(F(5)) - 1) / 2;
  F lo = 0, hi = 1;
  F c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  F fc = f(c), fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc < fd) {
      lo = c;
      c = d;
      fc = fd;
      d = lo + g * (hi - lo);
      fd = f(d);
    } else {
      hi = d;
      d = c;
      fd = fc;
      c = hi - g * (hi - lo);
      fc = f(c);
    }
  }
  const F t = (lo + hi) / 2;
  return {static_cast<double>(t * w / p1), static_cast<double>((1 - t) * w / p2)};
}

inline double relative_error(Bundle<double> a, Bundle<double> ref) {
  return std::max(std::fabs(a.x1 - ref.x1) / std::fabs(ref.x1), std::fabs(a.x2 - ref.x2) / std::fabs(ref.x2));
}

// Logarithmic k-by-k grid on [lo, hi]^2.
inline std::vector<Bundle<double>> log_grid(double lo = 0.1, double hi = 10, int k = 21) {
  if (!(lo > 0 && hi > lo) || k < 2) throw DomainError("grid needs 0 < lo < hi and k >= 2");
  std::vector<double> axis;
  for (int i = 0; i < k; ++i) axis.push_back(std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * i / (k - 1)));
  std::vector<Bundle<double>> g;
  for (double a : axis)
    for (double b : axis) g.push_back({a, b});
  return g;
}

// Leontief is the sigma -> 0 limit min(x1, x2): the weights alpha^(-1/rho)
// tend to 1, so the CES does not approach min(alpha x1, (1 - alpha) x2).
// LeontiefWeighted compares against that weighted form anyway.
enum class LimitTarget { CobbDouglas, Leontief, LeontiefWeighted };

inline const char* target_name(LimitTarget t) {
  switch (t) {
    case LimitTarget::CobbDouglas: return "cobb_douglas";
    case LimitTarget::Leontief: return "leontief";
    case LimitTarget::LeontiefWeighted: return "leontief_weighted";
  }
  return "?";
}

inline double target_utility(LimitTarget t, double alpha, Bundle<double> x) {
  switch (t) {
    case LimitTarget::CobbDouglas: return utility(cobb_douglas(alpha), x);
    case LimitTarget::Leontief: return std::min(x.x1, x.x2);
    case LimitTarget::LeontiefWeighted: return utility(leontief(alpha), x);
  }
  return 0;
}

inline std::vector<double> default_schedule(LimitTarget t) {
  if (t == LimitTarget::CobbDouglas) return {1.5, 1.1, 1.01, 1.001};
  return {0.5, 0.1, 0.01, 0.001};
}

struct LimitReport {
  LimitTarget target = LimitTarget::CobbDouglas;
  double alpha = 0.5;
  std::vector<double> sigmas;
  std::vector<double> deviations;
  bool monotone = false;
  double tolerance = 0;
  bool passed = false;
};

inline LimitReport limit_check(LimitTarget target, double alpha, const std::vector<Bundle<double>>& grid,
                               const std::vector<double>& schedule, double tolerance = 1e-2) {
  check_alpha(alpha);
  LimitReport r;
  r.target = target;
  r.alpha = alpha;
  r.tolerance = tolerance;
  for (double s : schedule) {
    const Preference p = ces(alpha, s);
    double dev = 0;
    for (const auto& x : grid) {
      if (!(x.x1 > 0 && x.x2 > 0)) throw DomainError("grid must be strictly positive");
      dev = std::max(dev, std::fabs(utility(p, x) - target_utility(target, alpha, x)));
    }
    r.sigmas.push_back(s);
    r.deviations.push_back(dev);
  }
  r.monotone = std::is_sorted(r.deviations.rbegin(), r.deviations.rend()) &&
               std::adjacent_find(r.deviations.begin(), r.deviations.end()) == r.deviations.end();
  r.passed = r.monotone && !r.deviations.empty() && r.deviations.back() <= tolerance;
  return r;
}

inline std::string limit_csv(const LimitReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "sigma,max_abs_deviation\n";
  for (std::size_t i = 0; i < r.sigmas.size(); ++i) os << r.sigmas[i] << ',' << r.deviations[i] << '\n';
  return os.str();
}

inline Json to_json(const LimitReport& r) {
  return Json{{"target", target_name(r.target)}, {"alpha", r.alpha},       {"sigmas", r.sigmas},
              {"deviations", r.deviations},     {"monotone", r.monotone}, {"tolerance", r.tolerance},
              {"passed", r.passed}};
}

struct CompensationRow {
  double sigma;  // 0 marks the Leontief row
  Bundle<double> before, after;
  double deviation;
};

struct CompensationReport {
  double alpha = 0.5;
  Budget<Rational> before{}, after{};
  Bundle<Rational> leontief_before{}, leontief_after{};
  bool leontief_exact = false;
  std::vector<CompensationRow> rows;
  bool decreasing = false;
};

// Prices move from b.p to (q1, q2); wealth is reset so the old Leontief
// bundle is just affordable.
inline CompensationReport compensation_check(const Rational& alpha, const Budget<Rational>& b, const Rational& q1,
                                             const Rational& q2, const std::vector<double>& sigmas) {
  if (!(alpha > 0 && alpha < 1)) throw DomainError("alpha must lie in (0,1)");
  b.validate();
  CompensationReport r;
  r.alpha = to_double(alpha);
  r.before = b;
  r.leontief_before = leontief_demand(alpha, b);
  r.after = Budget<Rational>{q1, q2, q1 * r.leontief_before.x1 + q2 * r.leontief_before.x2};
  r.after.validate();
  r.leontief_after = leontief_demand(alpha, r.after);
  r.leontief_exact = r.leontief_after == r.leontief_before;

  auto dbl = [](const Budget<Rational>& x) { return Budget<double>{to_double(x.p1), to_double(x.p2), to_double(x.w)}; };
  auto dev = [](Bundle<double> a, Bundle<double> c) { return std::max(std::fabs(a.x1 - c.x1), std::fabs(a.x2 - c.x2)); };
  auto to_d = [](Bundle<Rational> x) { return Bundle<double>{to_double(x.x1), to_double(x.x2)}; };
  r.rows.push_back({0, to_d(r.leontief_before), to_d(r.leontief_after),
                    dev(to_d(r.leontief_before), to_d(r.leontief_after))});
  for (double s : sigmas) {
    const Preference p = ces(r.alpha, s);
    const auto x = demand(p, dbl(r.before)), y = demand(p, dbl(r.after));
    r.rows.push_back({s, x, y, dev(x, y)});
  }
  // larger sigma, larger deviation
  std::vector<std::pair<double, double>> by_sigma;
  for (std::size_t i = 1; i < r.rows.size(); ++i) by_sigma.emplace_back(r.rows[i].sigma, r.rows[i].deviation);
  std::sort(by_sigma.begin(), by_sigma.end());
  r.decreasing = true;
  for (std::size_t i = 1; i < by_sigma.size(); ++i) r.decreasing &= by_sigma[i - 1].second < by_sigma[i].second;
  return r;
}

inline std::string compensation_csv(const CompensationReport& r) {
  std::ostringstream os;
  os.precision(17);
  os << "sigma,x1_before,x2_before,x1_after,x2_after,deviation\n";
  for (const auto& row : r.rows)
    os << row.sigma << ',' << row.before.x1 << ',' << row.before.x2 << ',' << row.after.x1 << ',' << row.after.x2
       << ',' << row.deviation << '\n';
  return os.str();
}

inline Json to_json(const CompensationReport& r) {
  Json rows = Json::array();
  for (const auto& row : r.rows)
    rows.push_back(Json{{"sigma", row.sigma},
                        {"before", {row.before.x1, row.before.x2}},
                        {"after", {row.after.x1, row.after.x2}},
                        {"deviation", row.deviation}});
  return Json{{"alpha", r.alpha},
              {"prices_before", {to_double(r.before.p1), to_double(r.before.p2)}},
              {"prices_after", {to_double(r.after.p1), to_double(r.after.p2)}},
              {"wealth_before", to_double(r.before.w)},
              {"wealth_after", to_double(r.after.w)},
              {"leontief_exact", r.leontief_exact},
              {"ces_deviation_decreasing", r.decreasing},
              {"rows", rows}};
}

inline CompensationReport default_compensation() {
  return compensation_check(Rational(1, 2), Budget<Rational>{1, 1, 10}, 2, 1, {0.5, 0.1, 0.01});
}

// 10 alphas x 10 sigmas x 10 budgets, plus the two explicit kinds.
struct OracleLattice {
  int cases = 0;
  double max_relative_error = 0;
  double max_walras_residual = 0;  // closed form, relative to w
  double max_oracle_walras_residual = 0;
};

inline std::vector<Budget<double>> lattice_budgets() {
  std::vector<Budget<double>> out;
  for (int k = 0; k < 10; ++k) out.push_back({0.5 + 0.35 * k, 3.0 - 0.27 * k, 1.0 + 2.5 * k});
  return out;
}

inline std::vector<double> lattice_sigmas() { return {0.1, 0.25, 0.5, 0.75, 0.9, 1.1, 1.5, 2, 3, 5}; }

inline OracleLattice oracle_lattice() {
  OracleLattice r;
  auto visit = [&](const Preference& p, const Budget<double>& b) {
    const auto x = demand(p, b), y = demand_oracle(p, b);
    ++r.cases;
    r.max_relative_error = std::max(r.max_relative_error, relative_error(y, x));
    r.max_walras_residual = std::max(r.max_walras_residual, std::fabs(b.p1 * x.x1 + b.p2 * x.x2 - b.w) / b.w);
    r.max_oracle_walras_residual =
        std::max(r.max_oracle_walras_residual, std::fabs(b.p1 * y.x1 + b.p2 * y.x2 - b.w) / b.w);
  };
  for (int a = 0; a < 10; ++a) {
    const double alpha = 0.05 + 0.1 * a;
    for (const auto& b : lattice_budgets()) {
      for (double s : lattice_sigmas()) visit(ces(alpha, s), b);
      visit(cobb_douglas(alpha), b);
      visit(leontief(alpha), b);
    }
  }
  return r;
}

// Random rational budget and alpha; the share p1 x1 / w must be alpha exactly.
inline int cobb_douglas_share_failures(Rng& rng, int cases) {
  int bad = 0;
  for (int i = 0; i < cases; ++i) {
    const Rational alpha(rng.integer(1, 99), 100);
    const Budget<Rational> b{Rational(rng.integer(1, 1000), rng.integer(1, 50)),
                             Rational(rng.integer(1, 1000), rng.integer(1, 50)),
                             Rational(rng.integer(1, 10000), rng.integer(1, 50))};
    const auto x = cobb_douglas_demand(alpha, b);
    if (b.p1 * x.x1 / b.w != alpha || b.p1 * x.x1 + b.p2 * x.x2 != b.w) ++bad;
  }
  return bad;
}

// Everything the demo asserts, as one report.
inline ClaimReport check_ces(std::uint64_t seed = 0, int budgets = 1000) {
  Stopwatch clock;
  ClaimReport r;
  r.claim = "ces_limits";
  r.n = 2;
  r.family = "CES";
  r.seed = seed;
  Rng rng(seed);

  const auto grid = log_grid();
  const auto cd = limit_check(LimitTarget::CobbDouglas, 0.5, grid, default_schedule(LimitTarget::CobbDouglas));
  const auto le = limit_check(LimitTarget::Leontief, 0.5, grid, default_schedule(LimitTarget::Leontief));
  r.subverdicts["cobb_douglas_limit"] = to_json(cd);
  r.subverdicts["leontief_limit"] = to_json(le);
  // the weighted form: at (1,1) the CES is 1 for every sigma, the target 1/2
  const auto lw = limit_check(LimitTarget::LeontiefWeighted, 0.5, grid, default_schedule(LimitTarget::Leontief));
  auto lw_json = to_json(lw);
  lw_json["verdict"] = verdict_name(verdict_of(lw.passed));
  r.subverdicts["leontief_weighted_limit"] = lw_json;
  if (!lw.passed) {
    const Bundle<double> x{1, 1};
    Json ces_values = Json::array();
    for (double s : lw.sigmas) ces_values.push_back(utility(ces(0.5, s), x));
    r.witness = Json{{"bundle", {x.x1, x.x2}},
                     {"sigmas", lw.sigmas},
                     {"ces_values", ces_values},
                     {"weighted_leontief_value", utility(leontief(0.5), x)},
                     {"unweighted_leontief_value", std::min(x.x1, x.x2)}};
  }

  const int share_bad = cobb_douglas_share_failures(rng, budgets);
  r.subverdicts["share_budgets"] = budgets;
  r.subverdicts["share_failures"] = share_bad;
  r.require(share_bad == 0, "cobb_douglas share not exact");

  const auto lat = oracle_lattice();
  r.subverdicts["oracle_lattice"] = Json{{"cases", lat.cases},
                                         {"max_relative_error", lat.max_relative_error},
                                         {"max_walras_residual", lat.max_walras_residual},
                                         {"max_oracle_walras_residual", lat.max_oracle_walras_residual}};
  if (lat.max_relative_error > 1e-8) ++r.disagreements;
  r.require(lat.max_walras_residual <= 1e-12, "closed-form demand off the budget line");

  const auto comp = default_compensation();
  r.subverdicts["compensation"] = to_json(comp);
  r.require(comp.leontief_exact, "leontief demand moved under compensation");

  r.verdict = verdict_of(cd.passed && le.passed && lw.passed && comp.leontief_exact && comp.decreasing);
  r.runtime_ms = clock.elapsed_ms();
  return r;
}

}  // namespace prefspace
