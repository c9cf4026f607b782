#include <prefspace/exogenous.hpp>

#include <gtest/gtest.h>

using namespace prefspace;

namespace {

WeakOrder wo(int n, std::vector<std::vector<int>> classes) { return WeakOrder::from_classes(n, classes); }

const WeakOrder kTiedTop = wo(3, {{0, 1}, {2}});

}  // namespace

TEST(ContourTopology, Examples) {
  EXPECT_EQ(contour_topology(kTiedTop).opens(), (std::vector<Mask>{0b000, 0b011, 0b100, 0b111}));
  EXPECT_EQ(contour_topology(WeakOrder::total_indifference(3)), FiniteTopology::trivial(3));
  EXPECT_EQ(contour_topology(wo(3, {{0}, {1}, {2}})), FiniteTopology::discrete(3));
}

TEST(ContourTopology, IntervalsAreContourIntersections) {
  for (int n = 1; n <= 5; ++n)
    for (const auto& p : enumerate_preferences(n, Family::All))
      for (int y = 0; y < n; ++y)
        for (int z = 0; z < n; ++z) ASSERT_EQ(interval(p, y, z), lower_contour(p, y) & upper_contour(p, z));
}

// Same topology from bounded intervals plus the unbounded contour sets.
TEST(ContourTopology, IntervalSubbasisAgrees) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& p : enumerate_preferences(n, Family::All)) {
      std::vector<Mask> sub;
      for (int y = 0; y < n; ++y) {
        sub.push_back(upper_contour(p, y));
        sub.push_back(lower_contour(p, y));
        for (int z = 0; z < n; ++z) sub.push_back(interval(p, y, z));
      }
      EXPECT_EQ(generate_from_subbasis(n, sub), contour_topology(p));
    }
}

TEST(ContourTopology, CoarsestContinuous) {
  int redundant = 0;
  for (int n = 1; n <= 4; ++n)
    for (const auto& p : enumerate_preferences(n, Family::All)) {
      const auto t = contour_topology(p);
      EXPECT_TRUE(is_continuous_pref(p, t));
      // any topology making p continuous contains t
      for (const auto& s : n <= 3 ? enumerate_topologies(n) : std::vector<FiniteTopology>{}) {
        if (!is_continuous_pref(p, s)) continue;
        for (Mask o : t.opens()) EXPECT_TRUE(s.is_open(o));
      }
      // dropping one contour set from the subbasis
      auto sub = contour_subbasis(p);
      for (std::size_t k = 0; k < sub.size(); ++k) {
        if (sub[k] == 0) continue;
        auto rest = sub;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
        if (is_continuous_pref(p, generate_from_subbasis(n, rest))) ++redundant;
      }
    }
  EXPECT_EQ(redundant, 0);
}

TEST(Continuity, Examples) {
  for (const auto& p : enumerate_preferences(3, Family::All)) EXPECT_TRUE(is_continuous_pref(p, FiniteTopology::discrete(3)));
  for (const auto& t : enumerate_topologies(3)) EXPECT_TRUE(is_continuous_pref(WeakOrder::total_indifference(3), t));
  EXPECT_FALSE(is_continuous_pref(wo(3, {{0}, {1}, {2}}), FiniteTopology::trivial(3)));
  EXPECT_THROW(is_continuous_pref(kTiedTop, FiniteTopology::trivial(2)), DimensionError);
}

TEST(LocalStrictness, Examples) {
  EXPECT_FALSE(is_locally_strict(wo(3, {{0}, {1}, {2}}), FiniteTopology::discrete(3)));
  EXPECT_FALSE(is_locally_strict(kTiedTop, contour_topology(kTiedTop)));
  for (const auto& t : enumerate_topologies(3)) {
    EXPECT_FALSE(is_locally_strict(WeakOrder::total_indifference(3), t));
    EXPECT_FALSE(is_locally_strict(WeakOrder::total_indifference(3), t, Diagonal::Excluded));
  }
  // off the diagonal a strict order is trivially locally strict
  EXPECT_TRUE(is_locally_strict(wo(3, {{0}, {1}, {2}}), FiniteTopology::discrete(3), Diagonal::Excluded));
}

TEST(LocalStrictness, MinimalNeighborhoodsSuffice) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& t : enumerate_topologies(n))
      for (const auto& p : enumerate_preferences(n, Family::All))
        for (Diagonal d : {Diagonal::Included, Diagonal::Excluded})
          ASSERT_EQ(is_locally_strict(p, t, d), is_locally_strict_exhaustive(p, t, d)) << p.to_string();
}

TEST(Pcls, DiscreteAndTrivial) {
  for (int n = 1; n <= 4; ++n) {
    EXPECT_TRUE(pcls_family(n, FiniteTopology::discrete(n)).empty());
    if (n >= 2) {
      EXPECT_TRUE(pcls_family(n, FiniteTopology::trivial(n)).empty());
      EXPECT_TRUE(pcls_family(n, FiniteTopology::trivial(n), Diagonal::Excluded).empty());
    }
  }
  EXPECT_EQ(pcls_family(3, FiniteTopology::discrete(3), Diagonal::Excluded), enumerate_preferences(3, Family::Strict));
}

TEST(ConvergenceGloss, MatchesMinimalNeighborhoodAndClosure) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& p : enumerate_preferences(n, Family::All)) {
      const auto t = contour_topology(p);
      for (int x = 0; x < n; ++x) {
        EXPECT_EQ(convergence_neighborhood(p, x), t.minimal_neighborhood(x));
        for (int y = 0; y < n; ++y)  // constant sequence at y converges to x iff x ∈ cl{y}
          EXPECT_EQ(has(convergence_neighborhood(p, x), y), has(closure(t, Mask{1} << y), x));
      }
    }
}

TEST(Isolated, Examples) {
  auto s = wo(3, {{0}, {1}, {2}});
  EXPECT_TRUE(is_isolated(Alternative{1}, s));
  EXPECT_FALSE(is_isolated(Alternative{0}, s));
  EXPECT_FALSE(is_isolated(Alternative{2}, s));
  // a > m1 > x > m2 > b: only the nearest neighbours count, so x is isolated
  // through m1 and m2 but a and b alone do not witness it.
  auto p = wo(5, {{0}, {1}, {2}, {3}, {4}});
  EXPECT_TRUE(is_isolated(Alternative{2}, p));
  EXPECT_GT(popcount(interval(p, 0, 2)), 0);
  EXPECT_THROW(is_isolated(Alternative{9}, p), PreconditionError);
}

TEST(Pci, Examples) {
  EXPECT_FALSE(pci_membership(wo(3, {{0}, {1}, {2}})));
  EXPECT_FALSE(pci_membership(kTiedTop));
  EXPECT_FALSE(pci_membership(WeakOrder::total_indifference(3)));
  EXPECT_TRUE(contour_example_reproduced());
}

TEST(Prop3Finite, EmptyForTwoToFive) {
  for (int n = 2; n <= 5; ++n) {
    auto r = check_prop3_finite(n);
    EXPECT_EQ(r.verdict, Verdict::Confirmed);
    EXPECT_EQ(r.subverdicts["pci_size"], 0);
    EXPECT_TRUE(r.invariants_ok());
  }
}

TEST(LemmaLocallyStrict, VacuousAtThreeAndFour) {
  for (int n : {3, 4}) {
    auto r = check_lemma_locally_strict(n);
    EXPECT_EQ(r.verdict, Verdict::Confirmed);
    EXPECT_TRUE(r.subverdicts["vacuous"].get<bool>());
    EXPECT_TRUE(r.invariants_ok());
  }
}

TEST(Theorem4, DiscreteTopology) {
  auto r = check_theorem4(3, FiniteTopology::discrete(3));
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_TRUE(r.subverdicts["diagonal"]["vacuous"].get<bool>());
  EXPECT_FALSE(r.subverdicts["off_diagonal"]["vacuous"].get<bool>());
  EXPECT_EQ(r.subverdicts["off_diagonal"]["pcls_size"], 6);
  EXPECT_THROW(check_theorem4(2, FiniteTopology::discrete(3)), DimensionError);
}

TEST(Theorem4, SweepAtThree) {
  auto sweep = theorem4_sweep(3);
  ASSERT_EQ(sweep.size(), 29u);
  int nonvacuous_off = 0;
  for (const auto& e : sweep) {
    EXPECT_EQ(e.report.verdict, Verdict::Confirmed);
    EXPECT_TRUE(e.report.subverdicts["diagonal"]["vacuous"].get<bool>());
    nonvacuous_off += !e.report.subverdicts["off_diagonal"]["vacuous"].get<bool>();
  }
  EXPECT_EQ(nonvacuous_off, 1);  // only the discrete topology
  auto summary = summarize_sweep(3, sweep, false);
  EXPECT_EQ(summary.subverdicts["topologies_checked"], 29);
  EXPECT_EQ(summary.subverdicts["sweep"].size(), 29u);
  EXPECT_EQ(summary.subverdicts["sweep"][0].size(), 7u);
}

TEST(Theorem4, SampledSweepAtFour) {
  CheckOptions o;
  o.seed = 3;
  auto a = theorem4_sweep(4, o);
  auto b = theorem4_sweep(4, o);
  ASSERT_EQ(a.size(), 64u);
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].topology_index, b[i].topology_index);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end(),
                             [](const auto& x, const auto& y) { return x.topology_index < y.topology_index; }));
}
