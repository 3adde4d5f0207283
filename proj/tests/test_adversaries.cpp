#include <gtest/gtest.h>

#include "cind/adversaries.hpp"
#include "cind/json_io.hpp"

using namespace cind;

namespace {

Learner named(AttackKind k, const std::string& name) {
  for (auto& h : opponents(k)) {
    if (h.name == name) return h;
  }
  throw DomainError("no opponent " + name);
}

}  // namespace

TEST(TdSep, ConstantPairFailsOnZero) {
  const auto h = named(AttackKind::TdSep, "const-ind{0,1}");
  const auto w = td_attack(h);
  ASSERT_TRUE(w.conclusive);
  EXPECT_EQ(w.mode, FailureMode::WrongDecision);
  EXPECT_EQ(w.case_label, "fails on {0}");
  EXPECT_EQ(*w.evidence->element, Nat(1));
  EXPECT_TRUE(replay_validates(w, h));
}

TEST(TdSep, SingletonFailsOnThePair) {
  const auto h = zoo::td_singleton();
  const auto w = td_attack(h);
  ASSERT_TRUE(w.conclusive);
  EXPECT_EQ(w.case_label, "fails on {0,1}");
  EXPECT_EQ(w.mode, FailureMode::WrongDecision);
  EXPECT_EQ(*w.evidence->element, Nat(0));
  EXPECT_TRUE(replay_validates(w, h));
}

TEST(TdSep, AlwaysUnknownGivesNoConjecture) {
  const auto h = named(AttackKind::TdSep, "always-?");
  const auto w = td_attack(h);
  ASSERT_TRUE(w.conclusive);
  EXPECT_EQ(w.mode, FailureMode::NoConjecture);
  EXPECT_TRUE(replay_validates(w, h));
}

TEST(TdSep, WrongOpponentKindIsAnError) { EXPECT_THROW(td_attack(zoo::ind_learner()), DomainError); }

TEST(ItSep, ConstantNPlusFailsOnZero) {
  const auto h = named(AttackKind::ItSep, "const-N+");
  const auto w = it_attack(h);
  ASSERT_TRUE(w.conclusive);
  EXPECT_NE(w.mode, FailureMode::Divergence);
  EXPECT_TRUE(replay_validates(w, h));
}

TEST(ItSep, MaxLearnerLoopsOrMerges) {
  const auto h = zoo::it_max();
  const auto w = it_attack(h);
  ASSERT_TRUE(w.conclusive);
  EXPECT_TRUE(w.mode == FailureMode::SameTrace || w.mode == FailureMode::MindChangeLoop ||
              w.mode == FailureMode::WrongDecision);
  EXPECT_TRUE(replay_validates(w, h));
}

TEST(KrtSd, ConstantEmptyIsCaseTwo) {
  const auto h = named(AttackKind::KrtSd, "const-ind{}");
  const auto w = krt_sd_adversary(h);
  ASSERT_TRUE(w.conclusive);
  EXPECT_EQ(w.case_label.rfind("case 2", 0), 0u) << w.case_label;
  EXPECT_TRUE(w.indices.count("e"));
  EXPECT_TRUE(replay_validates(w, h));
}

TEST(KrtSd, SuccessorExtensionIsCaseOne) {
  const auto h = named(AttackKind::KrtSd, "successor-extension");
  const auto w = krt_sd_adversary(h);
  ASSERT_TRUE(w.conclusive);
  EXPECT_EQ(w.case_label.rfind("case 1", 0), 0u) << w.case_label;
  EXPECT_EQ(w.mode, FailureMode::WrongDecision);
  EXPECT_TRUE(replay_validates(w, h));
}

TEST(KrtSd, StarvedSearchIsInconclusive) {
  const auto h = named(AttackKind::KrtSd, "successor-extension");
  AttackBounds b;
  b.search_budget = 10;
  const auto w = krt_sd_adversary(h, b);
  EXPECT_FALSE(w.conclusive);
  EXPECT_FALSE(replay_validates(w, h));
}

TEST(OrtTdTotal, ConstantIsCaseTwo) {
  const auto h = named(AttackKind::OrtTdTotal, "const-5");
  const auto w = ort_td_totality_adversary(h);
  ASSERT_TRUE(w.conclusive);
  EXPECT_EQ(w.case_label, "case 2: h'(a0) = h'(a1)");
  EXPECT_EQ(w.mode, FailureMode::SameTrace);
  EXPECT_NE(w.indices.at("a0"), w.indices.at("a1"));
  EXPECT_TRUE(replay_validates(w, h));
}

TEST(OrtTdTotal, IdentityIsCaseOne) {
  const auto h = zoo::td_identity();
  const auto w = ort_td_totality_adversary(h);
  ASSERT_TRUE(w.conclusive);
  EXPECT_EQ(w.case_label, "case 1: h'(a0) != h'(a1)");
  EXPECT_TRUE(replay_validates(w, h));
}

TEST(OrtTdTotal, DivergentOpponentIsReportedNotWitnessed) {
  const Learner h{programs::divergent(), OperatorKind::Td, "diverges"};
  AttackBounds b;
  b.budget = 10000;
  const auto w = ort_td_totality_adversary(h, b);
  EXPECT_FALSE(w.conclusive);
  EXPECT_EQ(w.mode, FailureMode::Divergence);
  EXPECT_EQ(w.case_label, "opponent is not total");
}

TEST(OrtTdTotal, FamilyIndexIsAFixpoint) {
  const auto fam = ort_td_family(zoo::td_identity());
  const auto a0 = eval(fam.a, 0, 1000000);
  ASSERT_TRUE(a0.is_halted());
  EXPECT_NE(a0.value(), eval(fam.a, 1, 1000000).value());
}

TEST(Suites, EveryOpponentGivesAReplayableWitness) {
  for (auto k : {AttackKind::TdSep, AttackKind::ItSep, AttackKind::KrtSd, AttackKind::OrtTdTotal}) {
    const auto suite = opponents(k);
    EXPECT_GE(suite.size(), 5u);
    for (const auto& h : suite) {
      const auto w = run_attack(k, h);
      EXPECT_TRUE(w.conclusive) << to_string(k) << " " << h.name << ": " << w.note;
      EXPECT_TRUE(replay_validates(w, h)) << to_string(k) << " " << h.name;
    }
  }
}

TEST(Suites, WitnessJsonIsDeterministic) {
  const auto h = zoo::td_singleton();
  EXPECT_EQ(io::witness(td_attack(h)).dump(), io::witness(td_attack(h)).dump());
  const auto j = io::witness(ort_td_totality_adversary(h));
  EXPECT_EQ(j["theorem"], "ort-td-total");
  EXPECT_EQ(j["outcome"], "witness");
}

TEST(Attacks, NamesRoundTrip) {
  for (auto k : {AttackKind::TdSep, AttackKind::ItSep, AttackKind::KrtSd, AttackKind::OrtTdTotal}) {
    EXPECT_EQ(parse_attack(to_string(k)), k);
  }
  EXPECT_THROW(parse_attack("nope"), DomainError);
}
