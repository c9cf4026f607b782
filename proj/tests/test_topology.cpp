#include <prefspace/random.hpp>
#include <prefspace/topology.hpp>

#include <gtest/gtest.h>

using namespace prefspace;

namespace {

// Topologies on n points correspond to preorders; count reflexive transitive
// relations directly.
int count_preorders(int n) {
  std::vector<std::pair<int, int>> off;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) off.emplace_back(i, j);
  int count = 0;
  for (std::uint64_t pick = 0; pick < (std::uint64_t{1} << off.size()); ++pick) {
    std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
    for (int i = 0; i < n; ++i) r[i][i] = true;
    for (std::size_t k = 0; k < off.size(); ++k)
      if ((pick >> k) & 1u) r[off[k].first][off[k].second] = true;
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i)
      for (int j = 0; j < n && transitive; ++j)
        for (int k = 0; k < n && transitive; ++k)
          if (r[i][j] && r[j][k] && !r[i][k]) transitive = false;
    count += transitive;
  }
  return count;
}

}  // namespace

TEST(Subbasis, EmptyGivesTrivial) {
  EXPECT_EQ(generate_from_subbasis(3, {}), FiniteTopology::trivial(3));
}

TEST(Subbasis, SingletonsGiveDiscrete) {
  auto t = generate_from_subbasis(4, {0b0001, 0b0010, 0b0100, 0b1000});
  EXPECT_EQ(t.opens().size(), 16u);
  EXPECT_EQ(t, FiniteTopology::discrete(4));
}

TEST(Subbasis, TwoBlocks) {
  auto t = generate_from_subbasis(3, {0b011, 0b100});
  EXPECT_EQ(t.opens(), (std::vector<Mask>{0b000, 0b011, 0b100, 0b111}));
}

TEST(Subbasis, OutOfRange) { EXPECT_THROW(generate_from_subbasis(2, {0b100}), PreconditionError); }

TEST(Subbasis, Idempotent) {
  for (int n = 0; n <= 3; ++n)
    for (const auto& t : enumerate_topologies(n)) EXPECT_EQ(generate_from_subbasis(n, t.opens()), t);
}

TEST(FiniteTopology, RejectsBadFamilies) {
  EXPECT_THROW(FiniteTopology::from_opens(2, {0b11}), PreconditionError);
  EXPECT_THROW(FiniteTopology::from_opens(3, {0, 0b001, 0b010, 0b111}), PreconditionError);
  EXPECT_THROW(FiniteTopology::discrete(13), SizeError);
}

TEST(EnumerateTopologies, Counts) {
  EXPECT_EQ(enumerate_topologies(1).size(), 1u);
  EXPECT_EQ(enumerate_topologies(2).size(), 4u);
  EXPECT_EQ(enumerate_topologies(3).size(), 29u);
  for (int n = 1; n <= 4; ++n) EXPECT_EQ(static_cast<int>(enumerate_topologies(n).size()), count_preorders(n)) << n;
  EXPECT_THROW(enumerate_topologies(5), SizeError);
}

TEST(Specialization, Examples) {
  auto d = specialization(FiniteTopology::discrete(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_EQ(d.leq(i, j), i == j);
  auto t = specialization(FiniteTopology::trivial(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) EXPECT_TRUE(t.leq(i, j));
  auto s = specialization(sierpinski_space());
  EXPECT_TRUE(s.leq(0, 1));
  EXPECT_FALSE(s.leq(1, 0));
}

TEST(Specialization, RoundTripExact) {
  for (int n = 0; n <= 3; ++n)
    for (const auto& t : enumerate_topologies(n)) {
      auto p = specialization(t);
      EXPECT_TRUE(p.is_reflexive());
      EXPECT_TRUE(p.is_transitive());
      EXPECT_EQ(alexandrov_topology(p), t);
    }
}

TEST(Separation, Examples) {
  EXPECT_EQ(separation_axioms(FiniteTopology::discrete(4)), (SeparationFlags{true, true, true}));
  EXPECT_EQ(separation_axioms(FiniteTopology::trivial(3)), (SeparationFlags{false, false, false}));
  EXPECT_EQ(separation_axioms(sierpinski_space()), (SeparationFlags{true, false, false}));
}

TEST(Separation, MonotoneAndMatchesExplicitHausdorff) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& t : enumerate_topologies(n)) {
      auto f = separation_axioms(t);
      EXPECT_TRUE(!f.t2 || f.t1);
      EXPECT_TRUE(!f.t1 || f.t0);
      EXPECT_EQ(f.t2, is_hausdorff_explicit(t));
    }
}

TEST(Connectivity, Examples) {
  auto c = connectivity(FiniteTopology::trivial(4));
  EXPECT_TRUE(c.connected);
  EXPECT_EQ(c.components.size(), 1u);
  auto d = connectivity(FiniteTopology::discrete(6));
  EXPECT_EQ(d.components.size(), 6u);
  EXPECT_TRUE(d.totally_path_disconnected);
  EXPECT_FALSE(d.path_connected);
  EXPECT_TRUE(connectivity(sierpinski_space()).path_connected);
}

// Connected iff no proper nonempty clopen set.
TEST(Connectivity, MatchesClopenCriterion) {
  for (int n = 1; n <= 4; ++n)
    for (const auto& t : enumerate_topologies(n)) {
      bool has_clopen = false;
      for (Mask o : t.opens())
        if (o != 0 && o != t.full() && t.is_open(t.full() & ~o)) has_clopen = true;
      EXPECT_EQ(connectivity(t).connected, !has_clopen);
    }
}

TEST(SpecializationPath, PreimagesOfOpensAreOpenIntervals) {
  auto s = specialization(sierpinski_space());
  auto path = specialization_path(s, 0, 1);
  ASSERT_TRUE(path);
  EXPECT_EQ((*path)(0.0), 1);
  EXPECT_EQ((*path)(0.999), 1);
  EXPECT_EQ((*path)(1.0), 0);
  EXPECT_FALSE(specialization_path(s, 1, 0));
}

TEST(OpenAndClosure, Examples) {
  auto t = sierpinski_space();
  EXPECT_TRUE(is_open(t, 0));
  EXPECT_TRUE(is_open(t, 0b11));
  EXPECT_EQ(closure(t, 0b11), 0b11u);
  EXPECT_FALSE(is_open(t, 0b01));
  EXPECT_EQ(closure(t, 0b10), 0b11u);
  auto d = FiniteTopology::discrete(3);
  for (Mask s = 0; s < 8; ++s) {
    EXPECT_TRUE(is_open(d, s));
    EXPECT_EQ(closure(d, s), s);
  }
  EXPECT_THROW(closure(t, 0b100), std::out_of_range);
}

TEST(OpenAndClosure, PreorderAgreesWithExplicit) {
  for (int n = 1; n <= 3; ++n)
    for (const auto& t : enumerate_topologies(n)) {
      auto p = specialization(t);
      for (Mask s = 0; s <= t.full(); ++s) {
        Bits b(static_cast<std::size_t>(n));
        for (int i : mask_members(s)) b.set(static_cast<std::size_t>(i));
        EXPECT_EQ(is_open(p, b), t.is_open(s));
        EXPECT_EQ(mask_of(bits_members(closure(p, b))), closure(t, s));
      }
    }
}

TEST(OpenAndClosure, KuratowskiProperties) {
  Rng rng(7);
  for (int n = 1; n <= 4; ++n)
    for (const auto& t : enumerate_topologies(n))
      for (int k = 0; k < 10; ++k) {
        Mask a = static_cast<Mask>(rng.integer(0, t.full()));
        Mask b = static_cast<Mask>(rng.integer(0, t.full()));
        EXPECT_EQ(a & ~closure(t, a), 0u);                               // extensive
        EXPECT_EQ(closure(t, closure(t, a)), closure(t, a));             // idempotent
        EXPECT_EQ(closure(t, a & b) & ~closure(t, a), 0u);               // monotone
        EXPECT_EQ(closure(t, a | b), closure(t, a) | closure(t, b));     // unions
      }
}

TEST(Basis, Examples) {
  auto s = sierpinski_space();
  EXPECT_TRUE(is_basis(s.opens(), s).ok);
  auto d = FiniteTopology::discrete(3);
  EXPECT_TRUE(is_basis({0b001, 0b010, 0b100}, d).ok);
  auto r = is_basis({0b11}, s);
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.witness);
  EXPECT_EQ(r.witness->first, 0b10u);
  EXPECT_EQ(r.witness->second, 1);
}

TEST(Basis, PreorderFormAgrees) {
  auto p = specialization(sierpinski_space());
  Bits full(2);
  full.set();
  auto r = is_basis(std::vector<Bits>{full}, p);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.witness->second, 1);
  Bits one(2);
  one.set(1);
  EXPECT_TRUE(is_basis(std::vector<Bits>{full, one}, p).ok);
}

TEST(ContinuousMap, SierpinskiIndicatorOfOpenSet) {
  auto s = specialization(sierpinski_space());
  auto t = specialization(FiniteTopology::from_opens(3, {0, 0b100, 0b110, 0b111}));
  // indicator of {2} is continuous iff {2} is open
  EXPECT_TRUE(is_continuous_map(t, s, [](int i) { return i == 2 ? 1 : 0; }));
  EXPECT_FALSE(is_continuous_map(t, s, [](int i) { return i == 1 ? 1 : 0; }));
}
