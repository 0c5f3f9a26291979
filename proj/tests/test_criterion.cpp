#include <gtest/gtest.h>

#include "escalator/criterion.hpp"
#include "escalator/grammar.hpp"
#include "oracles.hpp"

namespace escalator {
namespace {

const BinaryForm kOneOne = diag_form(1, 1);
const BinaryForm kTwoThree = diag_form(2, 3);
const BinaryForm kThreeThree = diag_form(3, 3);

TEST(TwoUniversal, Examples) {
  auto a = is_2_universal(diagonal({1, 1}));
  EXPECT_FALSE(a.universal);
  EXPECT_FALSE(a.evidence.verdicts[1].present());  // <2,3>

  auto b = is_2_universal(parse_form("<1,1,1,1>"));
  EXPECT_FALSE(b.universal);
  for (const auto& v : b.evidence.verdicts) EXPECT_EQ(v.present(), !(v.form == BinaryForm{2, 1, 4}));

  auto c = is_2_universal(parse_form("<1,1,1,1,1>"));
  EXPECT_TRUE(c.universal);
  EXPECT_EQ(c.evidence.verdicts.size(), 6u);
}

TEST(BuildWitness, DropOneOne) {
  auto r = build_witness(criterion_s2().without(kOneOne), kOneOne);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.recipe, Recipe::DropOneOne);
  EXPECT_TRUE(isometric(r.witness, parse_form("<1> ++ <2,3> ++ <3,3> ++ [2,1,2] ++ [2,1,3] ++ [2,1,4]")));
  // Exactly one +-pair of unit vectors, so <1,1> cannot embed.
  EXPECT_EQ(vectors_with_norm(r.witness, 1).size(), 1u);
}

TEST(BuildWitness, DropTwoOneThreeFromEmpty) {
  auto r = build_witness(FormSet{}, {2, 1, 3});
  EXPECT_EQ(r.witness, diagonal({1, 1, 1}));
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.recipe, Recipe::DropTwoOneE);
}

TEST(BuildWitness, DropTwoThreeWithLargeMember) {
  auto r = build_witness(FormSet{diag_form(4, 5)}, kTwoThree);
  EXPECT_EQ(r.witness, diagonal({1, 1, 4, 5}));
  EXPECT_TRUE(r.pass);
}

TEST(BuildWitness, Errors) {
  EXPECT_THROW(build_witness(FormSet{kOneOne}, kOneOne), TargetInT);
  EXPECT_THROW(build_witness(FormSet{}, diag_form(1, 2)), TargetNotInS2);
  // Members compare after reduction.
  EXPECT_THROW(build_witness(FormSet{{2, -1, 2}}, {2, 1, 2}), TargetInT);
}

TEST(BuildWitness, RecipeVerdictsAsComputed) {
  auto two_three = build_witness(criterion_s2().without(kTwoThree), kTwoThree);
  EXPECT_EQ(two_three.witness, diagonal({1, 1}));
  EXPECT_FALSE(two_three.pass);
  EXPECT_TRUE(two_three.truancy_verdict);

  auto three_three = build_witness(criterion_s2().without(kThreeThree), kThreeThree);
  EXPECT_EQ(three_three.recipe, Recipe::DropThreeThreeMirror);
  EXPECT_FALSE(three_three.pass);

  // The recipe witness for [2,1,3] misses <3,3> and represents [2,1,3]
  // itself.
  auto e3 = build_witness(criterion_s2().without({2, 1, 3}), {2, 1, 3});
  EXPECT_EQ(e3.witness, parse_form("<1,1,1> ++ [2,1,4]"));
  EXPECT_FALSE(e3.pass);
  EXPECT_FALSE(e3.truancy_verdict);
  for (const auto& v : e3.member_verdicts) EXPECT_EQ(v.present(), !(v.form == kThreeThree));

  auto e2 = build_witness(criterion_s2().without({2, 1, 2}), {2, 1, 2});
  EXPECT_TRUE(e2.pass);
  auto e4 = build_witness(criterion_s2().without({2, 1, 4}), {2, 1, 4});
  EXPECT_EQ(e4.witness, parse_form("<1,1,1,1>"));
  EXPECT_TRUE(e4.pass);
}

TEST(VerifyWitness, Examples) {
  auto a = verify_witness(diagonal({1, 1}), FormSet{kOneOne}, kTwoThree);
  EXPECT_TRUE(a.pass);
  EXPECT_EQ(a.recipe, Recipe::External);

  auto b = verify_witness(diagonal({1, 1}), FormSet{}, kOneOne);
  EXPECT_FALSE(b.pass);
  EXPECT_FALSE(b.truancy_verdict);
  ASSERT_TRUE(b.target_embedding);
  EXPECT_TRUE(certifies(diagonal({1, 1}), *b.target_embedding, kOneOne));

  auto c = verify_witness(diagonal({3, 5}), FormSet{diag_form(3, 5)}, kTwoThree);
  EXPECT_TRUE(c.pass);
}

TEST(VerifyWitness, PassIsRecomputable) {
  auto r = verify_witness(parse_form("<1,1,1,1>"), criterion_s2().without({2, 1, 4}), {2, 1, 4});
  EXPECT_EQ(r.pass, r.recompute_pass());
  r.member_verdicts[0].embedding.reset();
  EXPECT_FALSE(r.recompute_pass());
}

TEST(WitnessSearch, Examples) {
  auto a = witness_search(FormSet{}, kOneOne, {1, 3});
  ASSERT_TRUE(a.found);
  EXPECT_EQ(a.found->witness, diagonal({1}));
  EXPECT_TRUE(a.found->pass);

  auto b = witness_search(FormSet{kOneOne}, kOneOne, {4, 6});
  EXPECT_FALSE(b.found);

  // Rank 2 cannot hold the other five members; exhaustion reports the
  // scanned space.
  auto c = witness_search(criterion_s2().without(kOneOne), kOneOne, {2, 2});
  EXPECT_FALSE(c.found);
  EXPECT_GT(c.candidates, 0u);
  EXPECT_GE(c.candidates, c.classes);
}

TEST(WitnessSearch, ExcludedFormsOfUniquenessDemo) {
  auto s23 = witness_search(criterion_s2().without(kTwoThree), kTwoThree);
  ASSERT_TRUE(s23.found);
  EXPECT_EQ(s23.found->witness, parse_form("<1,1> ++ [2,-1,2]"));
  EXPECT_EQ(s23.candidates, 2626u);
  EXPECT_EQ(s23.classes, 491u);

  auto s33 = witness_search(criterion_s2().without(kThreeThree), kThreeThree);
  ASSERT_TRUE(s33.found);
  EXPECT_EQ(s33.found->witness, diagonal({1, 1, 1, 2}));

  for (const auto* s : {&s23, &s33}) {
    const auto& w = *s->found;
    EXPECT_TRUE(verify_witness(w.witness, w.members, w.target).pass);
    // Independent check of the truancy with the box oracle.
    EXPECT_FALSE(oracle::represents_binary(oracle::to_matrix(w.witness), w.target));
    for (const auto& f : w.members) EXPECT_TRUE(oracle::represents_binary(oracle::to_matrix(w.witness), f));
  }
}

TEST(WitnessSearch, Deterministic) {
  auto a = witness_search(criterion_s2().without({2, 1, 3}), {2, 1, 3});
  auto b = witness_search(criterion_s2().without({2, 1, 3}), {2, 1, 3});
  ASSERT_TRUE(a.found && b.found);
  EXPECT_EQ(*a.found, *b.found);
  EXPECT_EQ(a.candidates, b.candidates);
  EXPECT_EQ(a.found->witness, diagonal({1, 1, 1, 3}));
}

TEST(UniquenessDemo, EveryCaseSettledAndReverified) {
  auto demo = uniqueness_demo();
  ASSERT_EQ(demo.size(), 6u);
  for (const auto& e : demo) {
    const WitnessReport* s = e.settled();
    ASSERT_NE(s, nullptr) << format_form(e.excluded);
    EXPECT_TRUE(s->pass);
    EXPECT_EQ(s->target, e.excluded);
    auto again = verify_witness(s->witness, s->members, s->target, s->recipe);
    EXPECT_EQ(again, *s);
    EXPECT_EQ(e.search.has_value(), !e.recipe_report.pass);
  }
  EXPECT_TRUE(demo[0].recipe_report.pass);   // <1,1>
  EXPECT_FALSE(demo[1].recipe_report.pass);  // <2,3>
  EXPECT_FALSE(demo[2].recipe_report.pass);  // <3,3>
  EXPECT_TRUE(demo[3].recipe_report.pass);   // [2,1,2]
  EXPECT_FALSE(demo[4].recipe_report.pass);  // [2,1,3]
  EXPECT_TRUE(demo[5].recipe_report.pass);   // [2,1,4]
}

TEST(IdentityBlocks, RepresentSmallerTwoOneE) {
  for (Int estar : {3, 4}) {
    GramLattice block = diagonal(std::vector<Int>(static_cast<std::size_t>(estar), 1));
    for (Int e = 2; e < estar; ++e) EXPECT_TRUE(represents_binary(block, {2, 1, e}));
    EXPECT_FALSE(represents_binary(block, {2, 1, estar}));
  }
  EXPECT_FALSE(represents_binary(diagonal({1, 1}), {2, 1, 2}));
}

TEST(TwoUniversal, BridgeToAllSmallForms) {
  GramLattice l = parse_form("<1,1,1,1,1>");
  ASSERT_TRUE(is_2_universal(l).universal);
  for (const auto& f : reduced_forms_up_to(12)) EXPECT_TRUE(represents_binary(l, f)) << format_form(f);
  GramLattice m = parse_form("<1,1,1,1> ++ [2,1,4]");
  ASSERT_TRUE(is_2_universal(m).universal);
  for (const auto& f : reduced_forms_up_to(12)) EXPECT_TRUE(represents_binary(m, f)) << format_form(f);
}

}  // namespace
}  // namespace escalator
