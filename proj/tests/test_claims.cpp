#include <prefspace/claims.hpp>

#include <gtest/gtest.h>

using namespace prefspace;

namespace {

CheckOptions quick() {
  CheckOptions o;
  o.random_sets = 60;
  o.random_cases = 60;
  return o;
}

}  // namespace

TEST(LemmaOpensets, SingleSets) {
  auto s = final_topology(Family::All, 3);
  auto tie = check_lemma_opensets({WeakOrder::total_indifference(3)}, s, Ambient::U);
  EXPECT_EQ(tie.verdict, Verdict::Confirmed);
  EXPECT_FALSE(tie.subverdicts["closure_open"].get<bool>());
  EXPECT_FALSE(tie.subverdicts["sierpinski_continuous"].get<bool>());
  EXPECT_TRUE(tie.invariants_ok());
  auto empty = check_lemma_opensets({}, s, Ambient::U);
  EXPECT_EQ(empty.verdict, Verdict::Confirmed);
  EXPECT_TRUE(empty.subverdicts["oracle_open"].get<bool>());
  EXPECT_THROW(check_lemma_opensets({}, s, Ambient::UStar), PreconditionError);
}

TEST(LemmaOpensets, RandomUpClosedSetsAtFour) {
  auto s = final_topology(Family::All, 4);
  Rng rng(8);
  for (int k = 0; k < 40; ++k) {
    Bits b = s.empty_set();
    for (int i = 0; i < s.size(); ++i)
      if (rng.coin(0.05)) b.set(static_cast<std::size_t>(i));
    auto g = s.members(up_closure(s.preorder, b));
    auto r = check_lemma_opensets(g, s, Ambient::U);
    EXPECT_EQ(r.verdict, Verdict::Confirmed);
    EXPECT_TRUE(r.subverdicts["closure_open"].get<bool>());
  }
}

TEST(LemmaOpensets, ExhaustiveSuite) {
  for (int n : {2, 3}) {
    auto r = check_lemma_opensets_suite(n, Ambient::U, quick());
    EXPECT_EQ(r.verdict, Verdict::Confirmed);
    EXPECT_EQ(r.disagreements, 0);
    EXPECT_EQ(r.subverdicts["mode"], "exhaustive");
    EXPECT_TRUE(r.invariants_ok());
  }
  // n=2: {}, {a}, {b}, {a,b}, P
  EXPECT_EQ(check_lemma_opensets_suite(2, Ambient::U).subverdicts["open_sets"], 5);
}

TEST(Theorem1, NotTrivialWithValidatedWitness) {
  for (int n : {2, 3}) {
    auto r = check_theorem1(n, quick());
    EXPECT_EQ(r.verdict, Verdict::Refuted);
    EXPECT_FALSE(r.witness.is_null());
    EXPECT_TRUE(r.witness["oracle_open"].get<bool>());
    EXPECT_EQ(r.subverdicts["indifference_in_every_singleton_closure"], "CONFIRMED");
    EXPECT_TRUE(r.invariants_ok());
  }
  auto r2 = check_theorem1(2);
  EXPECT_EQ(r2.subverdicts["proper_open_sets_found"], 3);
  EXPECT_EQ(r2.witness["open_set"].size(), 1u);
  EXPECT_THROW(check_theorem1(1), ScopeError);
}

TEST(Theorem2, SubverdictsAtThree) {
  auto r = check_theorem2(3, quick());
  EXPECT_TRUE(r.invariants_ok());
  EXPECT_EQ(r.subverdicts["hausdorff"]["verdict"], "CONFIRMED");
  EXPECT_TRUE(r.subverdicts["hausdorff"]["coarse_in_closure_of_fine"].get<bool>());
  EXPECT_EQ(r.subverdicts["hausdorff"]["coarse"], "0>1~2");
  EXPECT_EQ(r.subverdicts["path_connected"]["verdict"], "CONFIRMED");
  // The up-set of 0>1~2 is open but no basis set fits between it and 0>1~2.
  EXPECT_EQ(r.subverdicts["basis"]["verdict"], "REFUTED");
  EXPECT_EQ(r.verdict, Verdict::Refuted);
  EXPECT_EQ(r.witness["point"], "0~1>2");
  EXPECT_EQ(r.witness["open_set"].size(), 3u);
  EXPECT_TRUE(r.witness["oracle_open"].get<bool>());
  EXPECT_FALSE(r.witness["basis_set_between"].get<bool>());
  auto crit = r.subverdicts["basis"]["critical_instance"];
  EXPECT_EQ(crit["set"].size(), 3u);
  EXPECT_TRUE(crit["open"].get<bool>());
  EXPECT_FALSE(crit["union_of_basis_sets"].get<bool>());
  EXPECT_THROW(check_theorem2(2), ScopeError);
}

TEST(Theorem3, DiscreteAtTwoToFour) {
  for (int n = 2; n <= 4; ++n) {
    auto r = check_theorem3(n, quick());
    EXPECT_EQ(r.verdict, Verdict::Confirmed) << n;
    EXPECT_EQ(r.subverdicts["components"].get<std::int64_t>(), factorial(n));
    EXPECT_TRUE(r.invariants_ok());
  }
  EXPECT_TRUE(check_theorem3(2).subverdicts["nonconstant_family_disconnected"].get<bool>());
}

TEST(Prop1, CountsAndVerdict) {
  auto r3 = check_prop1(3, quick());
  EXPECT_EQ(r3.verdict, Verdict::Confirmed);
  EXPECT_EQ(r3.subverdicts["nonstrict_checked"], 7);
  EXPECT_EQ(r3.subverdicts["nonstrict_in_nontrivial_family"], 6);
  EXPECT_TRUE(r3.invariants_ok());
  auto r4 = check_prop1(4, quick());
  EXPECT_EQ(r4.verdict, Verdict::Confirmed);
  EXPECT_EQ(r4.subverdicts["nonstrict_checked"], 51);
  EXPECT_EQ(r4.subverdicts["fail_t1"], 51);
}

TEST(Prop1, StrictRefinementSequence) {
  auto coarse = WeakOrder::from_classes(3, {{0}, {1, 2}});
  auto fine = WeakOrder::from_classes(3, {{0}, {2}, {1}});
  auto s = strict_refinement_sequence(coarse, fine);
  EXPECT_TRUE(verify_sequence(s, 1e-3, 10).passed);
  EXPECT_THROW(strict_refinement_sequence(fine, coarse), PreconditionError);
}

TEST(BasisSets, OpenAndIdentity) {
  for (Ambient a : {Ambient::U, Ambient::UStar, Ambient::UStrict}) {
    auto r = check_basis_sets(3, a, quick());
    EXPECT_EQ(r.verdict, Verdict::Confirmed) << ambient_name(a);
    EXPECT_EQ(r.disagreements, 0);
  }
}

TEST(BoxImages, OpenAndSound) {
  for (Ambient a : {Ambient::U, Ambient::UStar, Ambient::UStrict}) {
    auto r = check_box_images(3, a, quick());
    EXPECT_EQ(r.verdict, Verdict::Confirmed) << ambient_name(a);
    EXPECT_EQ(r.disagreements, 0);
    EXPECT_GT(r.subverdicts["sampled_points"].get<int>(), 0);
  }
}

TEST(Sequences, AllConstructionsPass) {
  for (int n : {3, 5}) {
    auto r = check_sequences(n, quick());
    EXPECT_EQ(r.verdict, Verdict::Confirmed);
    EXPECT_TRUE(r.subverdicts.contains("flatten_middle"));
    EXPECT_TRUE(r.subverdicts.contains("prop3_lower"));
  }
}

TEST(Homotopy, RandomPairs) {
  auto r = check_homotopy(4, quick());
  EXPECT_EQ(r.verdict, Verdict::Confirmed);
  EXPECT_EQ(r.subverdicts["pairs"], 60);
  EXPECT_TRUE(r.invariants_ok());
  EXPECT_THROW(check_homotopy(2), ScopeError);
}

TEST(ClaimReport, JsonShape) {
  auto j = to_json(check_theorem3(3, quick()));
  for (const char* key : {"claim", "n", "family", "verdict", "subverdicts", "witness", "oracle", "seed", "runtime_ms"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["verdict"], "CONFIRMED");
  EXPECT_EQ(j["family"], "P^s");
  EXPECT_EQ(j["oracle"]["disagreements"], 0);
  EXPECT_TRUE(j["witness"].is_null());
}

TEST(ClaimReport, SameSeedSameBytes) {
  auto a = check_lemma_opensets_suite(4, Ambient::U, quick());
  auto b = check_lemma_opensets_suite(4, Ambient::U, quick());
  a.runtime_ms = b.runtime_ms = 0;
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
}
