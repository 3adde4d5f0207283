#include <gtest/gtest.h>

#include "cind/adversaries.hpp"
#include "cind/transforms.hpp"
#include "cind/zoo.hpp"
#include "support.hpp"

using namespace cind;

namespace {

constexpr Budget kB = 1000000;

Hypothesis conj(const ProgramIndex& e) { return Hypothesis::conjecture(e.value); }

Seq syms(std::initializer_list<int> xs) {
  Seq s;
  for (int x : xs) s.push_back(x < 0 ? Symbol::pause() : Symbol::datum(Nat(x)));
  return s;
}

std::vector<FiniteSet> subsets(int n) {
  std::vector<FiniteSet> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    FiniteSet d;
    for (int x = 0; x < n; ++x) {
      if (mask >> x & 1) d.insert(Nat(x));
    }
    out.push_back(d);
  }
  return out;
}

// C_e restricted to [0, n), or nullopt if some probe is undecided
std::optional<FiniteSet> decided_below(const Hypothesis& h, int n) {
  if (h.is_unknown()) return std::nullopt;
  FiniteSet d;
  for (int x = 0; x < n; ++x) {
    const auto r = decide_C(ProgramIndex(h.index()), Nat(x), kB);
    if (r == CDecision::Yes) d.insert(Nat(x));
    else if (r != CDecision::No) return std::nullopt;
  }
  return d;
}

std::vector<Text> texts_of(const FiniteSet& d) {
  const Text c = canonical_text(d);
  return {c, shuffled_text(c, 7)};
}

}  // namespace

TEST(G2Psd, ConstantLearnerKeepsItsAnswer) {
  const auto h = zoo::constant(OperatorKind::G, conj(ind({4})));
  const auto out = g_to_psd(h).learner;
  EXPECT_EQ(out.kind, OperatorKind::Psd);
  for (const auto& d : subsets(3)) {
    for (std::size_t t : {0u, 1u, 3u, 9u}) EXPECT_EQ(call(out.program, input::psd(d, t), kB).hyp, conj(ind({4})));
  }
}

TEST(G2Psd, StarredIndLearnsFiniteSets) {
  const auto out = g_to_psd(star(zoo::ind_learner())).learner;
  for (const FiniteSet& d : {FiniteSet{1, 5}, FiniteSet{}, FiniteSet{0, 2}}) {
    const auto res = learns({OperatorKind::Psd, {Flavor::ExC}}, out, LanguageOracle::finite(d), texts_of(d), 20, kB, 8);
    EXPECT_TRUE(res.aggregate.satisfied()) << set_str(d);
  }
}

TEST(G2Psd, AnswersTheLeastStableSequence) {
  const std::vector<Learner> pool{star(zoo::ind_learner()), zoo::g_lagged(), star(zoo::zero_marker()),
                                  zoo::g_pad_churn(), zoo::constant(OperatorKind::G, Hypothesis::unknown())};
  for (const auto& h : pool) {
    const auto out = g_to_psd(h).learner;
    for (const auto& d : subsets(3)) {
      for (std::size_t t = 0; t <= 2; ++t) {
        const auto sigma = min_p_set(h, d, t, kB);
        const Hypothesis want = sigma ? *call(h.program, sigma->code(), kB).hyp : conj(ind({}));
        EXPECT_EQ(call(out.program, input::psd(d, t), kB).hyp, want) << h.name << " " << set_str(d) << " t=" << t;
      }
    }
  }
}

TEST(G2Psd, CapsTheLength) {
  const auto out = g_to_psd(star(zoo::ind_learner()), 1).learner;
  EXPECT_EQ(call(out.program, input::psd({0}, 50), kB).hyp, call(out.program, input::psd({0}, 1), kB).hyp);
}

TEST(It2Sd, ConstantLearnerKeepsItsAnswer) {
  const auto h = zoo::constant(OperatorKind::It, conj(ind({1})));
  const auto out = it_to_sd(h).learner;
  EXPECT_EQ(out.kind, OperatorKind::Sd);
  for (const auto& d : subsets(3)) EXPECT_EQ(call(out.program, input::sd(d), kB).hyp, conj(ind({1})));
}

TEST(It2Sd, SetMemoryDecidesEverySubsetOfFour) {
  const auto out = it_to_sd(zoo::it_ind_memory()).learner;
  for (const auto& d : subsets(4)) {
    const auto h = call(out.program, input::sd(d), kB).hyp;
    ASSERT_TRUE(h) << set_str(d);
    EXPECT_EQ(decided_below(*h, 8), d) << set_str(d);
  }
}

TEST(It2Sd, ZeroMarkerStillLearns) {
  const auto out = it_to_sd(zoo::it_zero_marker()).learner;
  for (const FiniteSet& d : {FiniteSet{0}, FiniteSet{0, 2}, FiniteSet{0, 1, 5}}) {
    const auto res = learns({OperatorKind::Sd, {Flavor::ExC}}, out, LanguageOracle::finite(d), texts_of(d), 16, kB, 8);
    EXPECT_TRUE(res.aggregate.satisfied()) << set_str(d);
  }
}

TEST(G2ItBc, StateIsPaddedHypothesisAndPrefix) {
  const auto out = g_to_it_bc(zoo::constant(OperatorKind::G, conj(ind({3})))).learner;
  EXPECT_EQ(out.kind, OperatorKind::It);
  const Seq s = syms({1, 2});
  const auto tr = run_trace(out, explicit_text(s), 2, kB);
  for (std::size_t i = 0; i <= 2; ++i) {
    ASSERT_TRUE(tr.entries[i].hyp && !tr.entries[i].hyp->is_unknown());
    const auto [e, payload] = unpad(ProgramIndex(tr.entries[i].hyp->index()));
    EXPECT_EQ(e, ind({3}));
    EXPECT_EQ(payload, encode_seq(Seq(s.begin(), s.begin() + i)));
    EXPECT_EQ(decided_below(*tr.entries[i].hyp, 6), FiniteSet({3}));
  }
}

TEST(G2ItBc, UnknownIsCarriedAsEmptySet) {
  const auto out = g_to_it_bc(zoo::constant(OperatorKind::G, Hypothesis::unknown())).learner;
  const auto tr = run_trace(out, explicit_text(syms({4, -1})), 2, kB);
  for (const auto& e : tr.entries) {
    ASSERT_TRUE(e.hyp);
    EXPECT_EQ(unpad(ProgramIndex(e.hyp->index())).first, ind({}));
  }
}

TEST(G2ItBc, AgreesWithOriginalOnBc) {
  const auto h = zoo::g_pad_churn();
  const auto out = g_to_it_bc(h).learner;
  for (const FiniteSet& d : {FiniteSet{0, 2}, FiniteSet{5}}) {
    const auto L = LanguageOracle::finite(d);
    EXPECT_TRUE(learns({OperatorKind::G, {Flavor::BcC}}, h, L, texts_of(d), 14, kB, 8).aggregate.satisfied());
    EXPECT_TRUE(learns({OperatorKind::It, {Flavor::BcC}}, out, L, texts_of(d), 14, kB, 8).aggregate.satisfied());
  }
}

TEST(G2PsdBc, ConstantIndTwo) {
  const auto out = g_to_psd_bc(zoo::constant(OperatorKind::G, conj(ind({2})))).learner;
  for (std::size_t t : {0u, 1u, 4u}) {
    const auto h = call(out.program, input::psd({2}, t), kB).hyp;
    ASSERT_TRUE(h);
    EXPECT_EQ(decided_below(*h, 6), FiniteSet({2}));
  }
}

TEST(G2PsdBc, ProgramMatchesHostOracleAndExcludesBothAnswers) {
  const std::vector<Learner> pool{star(zoo::ind_learner()), zoo::g_pad_churn(), zoo::g_lagged()};
  for (const auto& h : pool) {
    const auto out = g_to_psd_bc(h).learner;
    QOracle q(h, kB);
    for (const auto& d : subsets(2)) {
      for (std::size_t t = 0; t <= 2; ++t) {
        const auto hyp = call(out.program, input::psd(d, t), kB).hyp;
        ASSERT_TRUE(hyp && !hyp->is_unknown());
        for (int x = 0; x < 4; ++x) {
          const auto one = q.holds(Nat(x), 1, d, std::min(t, kG2PsdBcCap));
          const auto zero = q.holds(Nat(x), 0, d, std::min(t, kG2PsdBcCap));
          ASSERT_TRUE(one && zero);
          EXPECT_FALSE(*one && *zero) << h.name << " " << set_str(d) << " t=" << t << " x=" << x;
          EXPECT_EQ(decide_C(ProgramIndex(hyp->index()), Nat(x), kB), *one ? CDecision::Yes : CDecision::No)
              << h.name << " " << set_str(d) << " t=" << t << " x=" << x;
        }
      }
    }
  }
}

TEST(TdEx, SingletonLearnerIsUnchanged) {
  const auto h = zoo::td_singleton();
  const auto out = td_bc_to_td_ex(h).learner;
  EXPECT_EQ(call(out.program, input::td(Symbol::pause()), kB).hyp, Hypothesis::unknown());
  for (int x = 0; x < 5; ++x) {
    const Symbol s = Symbol::datum(Nat(x));
    EXPECT_EQ(call(out.program, input::td(s), kB).hyp, call(h.program, input::td(s), kB).hyp);
  }
}

TEST(TdEx, PadsOfOneSetCollapse) {
  const auto h = zoo::td_pad_churn({3, 5});
  const auto out = td_bc_to_td_ex(h).learner;
  const auto a = call(out.program, input::td(Symbol::datum(3)), kB).hyp;
  const auto b = call(out.program, input::td(Symbol::datum(5)), kB).hyp;
  EXPECT_EQ(a, call(h.program, input::td(Symbol::datum(3)), kB).hyp);
  EXPECT_EQ(a, b);
  // on (3 5)^inf the original alternates between two pads
  const FiniteSet d{3, 5};
  const std::vector<Text> ts{periodic_text({}, syms({3, 5}))};
  const auto after = learns({OperatorKind::Td, {Flavor::ExC}}, out, LanguageOracle::finite(d), ts, 16, kB, 8);
  ASSERT_TRUE(after.aggregate.satisfied());
  EXPECT_LE(after.aggregate.n0, 1u);
  // at a bounded horizon the churn shows as a late n0 and a looping trace
  const auto before = learns({OperatorKind::Td, {Flavor::ExC}}, h, LanguageOracle::finite(d), ts, 16, kB, 8);
  EXPECT_EQ(before.aggregate.n0, 16u);
  EXPECT_TRUE(looping(before.traces[0]));
  EXPECT_FALSE(looping(after.traces[0]));
  EXPECT_TRUE(learns({OperatorKind::Td, {Flavor::BcC}}, h, LanguageOracle::finite(d), ts, 16, kB, 8)
                  .aggregate.satisfied());
}

TEST(TdEx, AlwaysUnknownStaysUnknown) {
  const auto out = td_bc_to_td_ex(zoo::constant(OperatorKind::Td, Hypothesis::unknown())).learner;
  for (int c = 0; c < 6; ++c) EXPECT_EQ(call(out.program, Nat(c), kB).hyp, Hypothesis::unknown());
}

TEST(Transforms, WrongInputKindIsAnError) {
  EXPECT_THROW(g_to_psd(zoo::ind_learner()), DomainError);
  EXPECT_THROW(it_to_sd(zoo::ind_learner()), DomainError);
  EXPECT_THROW(g_to_it_bc(zoo::td_singleton()), DomainError);
  EXPECT_THROW(g_to_psd_bc(zoo::it_max()), DomainError);
  EXPECT_THROW(td_bc_to_td_ex(zoo::g_lagged()), DomainError);
}

TEST(Transforms, TotalityProbeWarnsOnDivergence) {
  const Learner h{programs::divergent(), OperatorKind::G, "diverges"};
  EXPECT_FALSE(g_to_psd(h, kG2PsdCap, 1000).report.warnings.empty());
  EXPECT_TRUE(g_to_psd(zoo::g_lagged()).report.warnings.empty());
}
