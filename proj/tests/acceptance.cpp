// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "cind/cind.hpp"
#include "support.hpp"

using namespace cind;
using cind::testing::below;
using cind::testing::Rng;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

// G/Psd/Sd/It/Td written out from the operator definitions, on host values.
std::optional<Hypothesis> direct(const Learner& h, const Seq& s, std::size_t i, Budget b) {
  auto run = [&](const Nat& in) -> std::optional<Hypothesis> {
    auto r = eval(h.program, in, b);
    if (!r.is_halted()) return std::nullopt;
    return Hypothesis::from_code(r.value());
  };
  FiniteSet content;
  for (std::size_t k = 0; k < i; ++k) {
    if (!s[k].is_pause()) content.insert(s[k].value());
  }
  switch (h.kind) {
    case OperatorKind::G: return run(encode_seq(Seq(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i))));
    case OperatorKind::Psd: return run(pair(encode_set(content), Nat(i)));
    case OperatorKind::Sd: return run(encode_set(content));
    case OperatorKind::It: {
      if (i == 0) return run(Nat(0));
      auto prev = direct(h, s, i - 1, b);
      if (!prev) return std::nullopt;
      return run(pair(prev->code(), s[i - 1].code()) + 1);
    }
    case OperatorKind::Td: {
      if (i == 0) return Hypothesis::unknown();
      auto r = run(s[i - 1].code());
      if (!r) return std::nullopt;
      if (!r->is_unknown()) return r;
      return direct(h, s, i - 1, b);
    }
  }
  return std::nullopt;
}

Outcome numbering_axioms() {
  Outcome o;
  std::set<Nat> seen;
  for (std::uint64_t z = 0; z < 10000; ++z) {
    const auto [a, b] = unpair(Nat(z));
    if (pair(a, b) != z) o.fail("pair(unpair z) != z at " + std::to_string(z));
    seen.insert(pair(Nat(z % 100), Nat(z / 100)));
  }
  if (seen.size() != 10000) o.fail("pairing not injective on [0,100)^2");
  Rng rng(11);
  const auto pool = cind::testing::program_pool();
  for (int i = 0; i < 60; ++i) {
    const auto& e = pool[below(rng, pool.size())];
    const Nat x = below(rng, 50), y = below(rng, 50);
    const auto a = eval(smn(e, x), y, 100000), c = eval(e, pair(x, y), 100000);
    if (a.is_halted() != c.is_halted() || (a.is_halted() && a.value() != c.value())) o.fail("s-m-n disagrees");
  }
  std::set<Nat> pads;
  for (int i = 0; i < 10000; ++i) {
    const ProgramIndex e(Nat(below(rng, 1u << 24)));
    const Nat n = below(rng, 1u << 24);
    const auto p = pad(e, n);
    const auto back = try_unpad(p.value);
    if (!back || back->first != e.value || back->second != n) o.fail("unpad(pad) round trip");
    pads.insert(p.value);
  }
  if (pads.size() < 9990) o.fail("pad collisions beyond sampling repeats");
  for (int c = 0; c < 5000; ++c) {
    if (!decode(Nat(c))) o.fail("decode not total at " + std::to_string(c));
  }
  for (int i = 0; i < 200; ++i) {
    if (!decode(Nat(below(rng, ~0ull)) * Nat(below(rng, ~0ull)))) o.fail("decode not total on a large code");
  }
  return o;
}

Outcome recursion_theorems() {
  Outcome o;
  const ProgramIndex q = krt(quine_transform());
  for (int x = 0; x < 8; ++x) {
    const auto r = eval(q, x, 100000);
    if (!r.is_halted() || r.value() != q.value) o.fail("quine output differs at x = " + std::to_string(x));
  }
  using namespace dsl;
  const std::vector<ProgramIndex> bodies{
      programs::constant(3),
      programs::build(eval(fst(v("w")), succ(fst(snd(v("w"))))), "w"),
      programs::build(add(fst(snd(v("w"))), prim(PrimOp::Mul, {snd(snd(v("w"))), 2})), "w")};
  for (const auto& body : bodies) {
    const auto fam = ort(body);
    for (int n = 0; n < 5; ++n) {
      const auto an = eval(fam.a, n, 1000000);
      if (!an.is_halted()) {
        o.fail("a(n) did not halt");
        continue;
      }
      for (int x = 0; x < 5; ++x) {
        const auto l = eval(ProgramIndex(an.value()), x, 1000000);
        const auto r = eval(body, pair(fam.a.value, pair(Nat(n), Nat(x))), 1000000);
        if (l.is_halted() != r.is_halted() || (l.is_halted() && l.value() != r.value())) {
          o.fail("ORT contract fails at n = " + std::to_string(n) + ", x = " + std::to_string(x));
        }
      }
    }
  }
  return o;
}

Outcome operator_semantics() {
  Outcome o;
  Rng rng(21);
  const auto pool = cind::testing::program_pool();
  const std::map<OperatorKind, std::vector<Learner>> zoo_of{
      {OperatorKind::G, {zoo::g_lagged(), zoo::g_pad_churn(), star(zoo::ind_learner())}},
      {OperatorKind::Psd, {zoo::phase_learner()}},
      {OperatorKind::Sd, {zoo::ind_learner(), zoo::max_learner(), zoo::zero_marker()}},
      {OperatorKind::It, {zoo::it_max(), zoo::it_ind_memory(), zoo::it_zero_marker()}},
      {OperatorKind::Td, {zoo::td_singleton(), zoo::pair_component(), zoo::td_pad_churn({1, 2})}}};
  constexpr Budget b = 5000;
  for (auto k : {OperatorKind::G, OperatorKind::Psd, OperatorKind::Sd, OperatorKind::It, OperatorKind::Td}) {
    for (int n = 0; n < 100; ++n) {
      Learner h;
      switch (below(rng, 3)) {
        case 0: h = {pool[below(rng, pool.size())], k, "pool"}; break;
        case 1: h = {index_of(cind::testing::random_term(rng, 4, 0)), k, "random"}; break;
        default: {
          const auto& z = zoo_of.at(k);
          h = z[below(rng, z.size())];
        }
      }
      Seq s;
      for (int i = 0; i < 12; ++i) {
        s.push_back(below(rng, 4) == 0 ? Symbol::pause() : Symbol::datum(Nat(below(rng, 6))));
      }
      const Text T = explicit_text(s);
      const Trace tr = run_trace(h, T, 12, b);
      for (std::size_t i = 0; i <= 12; ++i) {
        const auto want = direct(h, s, i, b);
        if (tr.entries[i].hyp != want || apply_operator(h, T, i, b) != want) {
          o.fail(std::string(to_string(k)) + " " + h.name + " " + seq_str(s) + " differs at i = " + std::to_string(i));
        }
      }
    }
  }
  return o;
}

Outcome transformation_preservation() {
  Outcome o;
  const harness::Bounds b{24, 16, 1000000, 0};
  std::map<TransformKind, std::size_t> applicable;
  for (const auto& r : harness::run_corpus(harness::transform_corpus(b.seed), b)) {
    if (r.applicable()) ++applicable[r.kind];
    if (!r.preserved()) {
      o.fail(std::string(to_string(r.kind)) + " " + r.learner + " on " + r.language + ": transformed is " +
             std::string(to_string(r.transformed.kind)));
    }
  }
  for (auto k : {TransformKind::G2Psd, TransformKind::It2Sd, TransformKind::G2ItBc, TransformKind::G2PsdBc,
                 TransformKind::TdEx}) {
    if (applicable[k] == 0) o.fail(std::string(to_string(k)) + " has no case where the original succeeds");
  }
  if (o.ok) {
    std::ostringstream os;
    for (const auto& [k, n] : applicable) os << to_string(k) << "=" << n << " ";
    o.detail = "applicable cases: " + os.str();
  }
  return o;
}

std::vector<Learner> g_learners() {
  return {star(zoo::ind_learner()), zoo::g_lagged(), star(zoo::zero_marker()), star(zoo::max_learner()),
          zoo::g_pad_churn()};
}

std::vector<FiniteSet> subsets_below(int n) {
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

Outcome p_set_equivalence() {
  Outcome o;
  constexpr Budget b = 100000;
  for (const auto& h : g_learners()) {
    const auto psd = g_to_psd(h).learner;
    for (const auto& d : subsets_below(3)) {
      for (std::size_t t = 0; t <= 3; ++t) {
        std::vector<Nat> got;
        for (const auto& s : p_set(h, d, t, b)) got.push_back(s.code());
        const auto want = cind::testing::brute_p_set(h.program, d, t, b);
        if (got != want) o.fail(h.name + " p" + set_str(d) + "," + std::to_string(t) + " differs");
        const Hypothesis expect =
            want.empty() ? Hypothesis::conjecture(ind({}).value) : *call(h.program, want.front(), b).hyp;
        if (call(psd.program, input::psd(d, t), 1000000).hyp != expect) {
          o.fail("g2psd(" + h.name + ") on " + set_str(d) + "," + std::to_string(t) + " is not h(min p)");
        }
      }
    }
  }
  return o;
}

Outcome q_exclusion() {
  Outcome o;
  constexpr Budget b = 100000;
  // learners whose conjectures are total, so that Q is decidable
  const std::vector<Learner> pool{star(zoo::ind_learner()),
                                  zoo::g_lagged(),
                                  star(zoo::zero_marker()),
                                  star(zoo::it_ind_memory()),
                                  zoo::g_pad_churn(),
                                  zoo::constant(OperatorKind::G, Hypothesis::conjecture(ind({2}).value))};
  std::size_t tested = 0;
  for (const auto& h : pool) {
    QOracle q(h, b);
    const auto bc = g_to_psd_bc(h).learner;
    for (const auto& d : subsets_below(3)) {
      if (d.size() > 2) continue;
      for (std::size_t t = 0; t <= 2; ++t) {
        const auto hyp = call(bc.program, input::psd(d, t), 1000000).hyp;
        for (int x = 0; x < 6; ++x) {
          const auto one = q.holds(Nat(x), 1, d, t), zero = q.holds(Nat(x), 0, d, t);
          ++tested;
          if (!one || !zero) {
            o.fail("Q undecided for " + h.name);
            continue;
          }
          if (*one && *zero) o.fail(h.name + ": Q(x,0) and Q(x,1) at x = " + std::to_string(x) + " on " + set_str(d));
          if (!hyp || decide_C(ProgramIndex(hyp->index()), Nat(x), 1000000) != (*one ? CDecision::Yes : CDecision::No)) {
            o.fail("g2psd-bc(" + h.name + ") disagrees with Q at x = " + std::to_string(x));
          }
        }
      }
    }
  }
  if (o.ok) o.detail = std::to_string(tested) + " (learner, x, D, t) points on " + std::to_string(pool.size()) + " learners";
  return o;
}

Outcome attacks() {
  Outcome o;
  std::ostringstream os;
  for (auto k : {AttackKind::TdSep, AttackKind::ItSep, AttackKind::KrtSd, AttackKind::OrtTdTotal}) {
    const auto suite = opponents(k);
    if (suite.size() < 5) o.fail(std::string(to_string(k)) + " suite has fewer than 5 opponents");
    for (const auto& h : suite) {
      const auto w = run_attack(k, h);
      if (!w.conclusive) o.fail(std::string(to_string(k)) + " vs " + h.name + " Inconclusive: " + w.note);
      else if (!replay_validates(w, h)) o.fail(std::string(to_string(k)) + " vs " + h.name + " does not replay");
    }
    os << to_string(k) << "=" << suite.size() << " ";
  }
  if (o.ok) o.detail = "opponents " + os.str();
  return o;
}

Outcome delayability() {
  Outcome o;
  Rng rng(31);
  for (auto f : {Flavor::ExW, Flavor::ExC, Flavor::BcW, Flavor::BcC, Flavor::CInd}) {
    for (int n = 0; n < 100; ++n) {
      auto inst = cind::testing::delay_instance(rng, f, 16, 10000, 8);
      if (!check_delayable_instance(f, inst.p, inst.T, inst.r, inst.T2, inst.L, 8, 10000)) {
        o.fail(std::string(to_string(f)) + " instance " + std::to_string(n) + " (" + inst.h.name + ")");
      }
    }
  }
  return o;
}

Outcome matrix() {
  Outcome o;
  const harness::Bounds b;
  const auto edges = harness::default_edges();
  const auto first = harness::run_matrix(edges, b);
  const auto second = harness::run_matrix(edges, b);
  if (harness::matrix_json(first, b).dump() != harness::matrix_json(second, b).dump()) o.fail("two runs differ");
  std::size_t in = 0, out = 0;
  for (const auto& r : first) {
    if (r.spec.in_scope) {
      ++in;
      if (r.status() != "pass") o.fail(r.spec.id + " is " + r.status());
    } else {
      ++out;
      if (r.status() != "not-implemented" || r.spec.pointer.rfind("paper_map", 0) != 0) {
        o.fail(r.spec.id + " lacks a not-implemented pointer");
      }
    }
  }
  if (o.ok) o.detail = std::to_string(in) + " in-scope pass, " + std::to_string(out) + " not-implemented, runs identical";
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    std::string name;
    double limit_s;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> all{
      {1, "numbering axioms", 30, numbering_axioms},
      {2, "recursion theorems", 30, recursion_theorems},
      {3, "operator semantics oracle", 60, operator_semantics},
      {4, "transformation preservation", 300, transformation_preservation},
      {5, "p_set brute-force equivalence", 60, p_set_equivalence},
      {6, "g2psd-bc Q-exclusion", 120, q_exclusion},
      {7, "attacks", 300, attacks},
      {8, "delayability", 60, delayability},
      {9, "matrix", 600, matrix},
  };
  bool ok = true;
  for (const auto& c : all) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.limit_s) o.fail("over the time limit of " + std::to_string(static_cast<int>(c.limit_s)) + " s");
    ok = ok && o.ok;
    std::printf("criterion %d: %s  %s (%.1f s)%s%s\n", c.id, o.ok ? "PASS" : "FAIL", c.name.c_str(), s,
                o.detail.empty() ? "" : "  ", o.detail.c_str());
    std::fflush(stdout);
  }
  return ok ? 0 : 1;
}
