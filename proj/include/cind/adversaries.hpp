#pragma once

// Executable separations. Each attack takes an opponent learner (a program in
// the numbering), builds the languages and texts of the diagonal argument and
// returns a witness that can be replayed.
//
//   td-sep        {{0}, {1}, {0, 1}} defeats every Td learner
//   it-sep        {D u {0}} u {N+} defeats every It learner
//   krt-sd        L_e / L'_e built by the recursion theorem defeats every Sd learner
//   ort-td-total  a(0), a(1) built by operator recursion defeat every total Td learner

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cind/builder.hpp"
#include "cind/criteria.hpp"
#include "cind/learner.hpp"
#include "cind/numbering.hpp"
#include "cind/zoo.hpp"

namespace cind {

enum class AttackKind { TdSep, ItSep, KrtSd, OrtTdTotal };

inline std::string_view to_string(AttackKind k) {
  switch (k) {
    case AttackKind::TdSep: return "td-sep";
    case AttackKind::ItSep: return "it-sep";
    case AttackKind::KrtSd: return "krt-sd";
    case AttackKind::OrtTdTotal: return "ort-td-total";
  }
  return "?";
}

inline AttackKind parse_attack(std::string_view s) {
  for (auto k : {AttackKind::TdSep, AttackKind::ItSep, AttackKind::KrtSd, AttackKind::OrtTdTotal}) {
    if (s == to_string(k)) return k;
  }
  throw DomainError("unknown attack: " + std::string(s));
}

inline OperatorKind opponent_kind(AttackKind k) {
  switch (k) {
    case AttackKind::TdSep:
    case AttackKind::OrtTdTotal: return OperatorKind::Td;
    case AttackKind::ItSep: return OperatorKind::It;
    case AttackKind::KrtSd: return OperatorKind::Sd;
  }
  return OperatorKind::Td;
}

struct AttackBounds {
  std::size_t horizon = 24;
  Budget budget = 1000000;
  std::size_t m = 16;
  std::size_t t_max = 2;          // it-sep: length bound of the locking search
  std::size_t view = 6;           // it-sep: N+ is probed on [1, view)
  std::size_t m_max = 8;          // krt-sd: largest m examined
  Budget search_budget = 50000000;  // krt-sd: budget for running phi_e(0)
};

struct AttackLanguage {
  std::string name;
  LanguageOracle oracle;
};

enum class FailureMode { None, WrongDecision, NoConjecture, SameTrace, MindChangeLoop, Divergence };

inline std::string_view to_string(FailureMode f) {
  switch (f) {
    case FailureMode::None: return "none";
    case FailureMode::WrongDecision: return "wrong-decision";
    case FailureMode::NoConjecture: return "no-conjecture";
    case FailureMode::SameTrace: return "same-trace";
    case FailureMode::MindChangeLoop: return "mind-change-loop";
    case FailureMode::Divergence: return "divergence";
  }
  return "?";
}

struct AttackWitness {
  AttackKind attack = AttackKind::TdSep;
  std::string opponent;
  Nat opponent_index = 0;
  bool conclusive = false;
  FailureMode mode = FailureMode::None;
  std::string case_label;
  std::vector<AttackLanguage> languages;
  std::vector<std::string> texts;
  std::vector<Trace> traces;
  std::optional<Evidence> evidence;
  std::optional<std::size_t> evidence_language;  // index into languages
  std::map<std::string, Nat> indices;
  AttackBounds bounds;
  std::string note;
};

/// Number of hypothesis changes in entries [from, horizon].
inline std::size_t mind_changes(const Trace& tr, std::size_t from = 1) {
  std::size_t n = 0;
  for (std::size_t i = std::max<std::size_t>(from, 1); i < tr.entries.size(); ++i) {
    if (tr.entries[i].hyp != tr.entries[i - 1].hyp) ++n;
  }
  return n;
}

/// A mind change at least every other step over the second half of the trace.
inline bool looping(const Trace& tr) {
  const std::size_t H = tr.horizon();
  if (H < 4 || tr.first_divergence()) return false;
  const std::size_t half = H / 2;
  return mind_changes(tr, half + 1) * 2 >= H - half;
}

inline bool same_hypotheses(const Trace& a, const Trace& b) {
  if (a.entries.size() != b.entries.size()) return false;
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    if (a.entries[i].hyp != b.entries[i].hyp) return false;
  }
  return true;
}

namespace detail {

inline Seq data(std::initializer_list<Nat> xs) {
  Seq s;
  for (const auto& x : xs) s.push_back(Symbol::datum(x));
  return s;
}

inline FailureMode mode_of(const Evidence& e) {
  if (e.kind == "no-conjecture" || e.kind == "unknown-after-conjecture") return FailureMode::NoConjecture;
  return FailureMode::WrongDecision;
}

inline AttackWitness start(AttackKind k, const Learner& h, const AttackBounds& b) {
  if (h.kind != opponent_kind(k)) {
    throw DomainError(std::string(to_string(k)) + " expects a " + std::string(to_string(opponent_kind(k))) +
                      "-learner");
  }
  AttackWitness w;
  w.attack = k;
  w.opponent = h.name.empty() ? h.program.str() : h.name;
  w.opponent_index = h.program.value;
  w.bounds = b;
  return w;
}

}  // namespace detail

// ---------------------------------------------------------------------------

/// {0} on 0^inf, {1} on 1^inf, {0, 1} on 0 1^inf: the first failing case.
inline AttackWitness td_attack(const Learner& h, const AttackBounds& b = {}) {
  AttackWitness w = detail::start(AttackKind::TdSep, h, b);
  const std::vector<std::pair<FiniteSet, Text>> cases{
      {{0}, explicit_text({}, Symbol::datum(0))},
      {{1}, explicit_text({}, Symbol::datum(1))},
      {{0, 1}, explicit_text(detail::data({0}), Symbol::datum(1))},
  };
  std::string pending;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    const auto& [d, T] = cases[c];
    w.languages.push_back({set_str(d), LanguageOracle::finite(d)});
    w.texts.push_back(T.describe());
    w.traces.push_back(run_trace(h, T, b.horizon, b.budget));
    const Verdict v = check_restriction(Flavor::ExC, w.traces.back(), w.languages.back().oracle, 2, b.budget);
    if (v.falsified()) {
      w.conclusive = true;
      w.evidence = v.witness;
      w.evidence_language = c;
      w.mode = detail::mode_of(*v.witness);
      w.case_label = "fails on " + set_str(d);
      return w;
    }
    if (v.kind == VerdictKind::Inconclusive && pending.empty()) pending = set_str(d) + ": " + v.note;
  }
  w.note = pending.empty() ? "opponent passed all three cases within bounds" : pending;
  if (auto d = w.traces.back().first_divergence()) {
    w.mode = FailureMode::Divergence;
    w.note = "opponent diverged at step " + std::to_string(*d);
  }
  return w;
}

// ---------------------------------------------------------------------------

/// Least sigma over [1, view) u {#} of length <= t_max on which h* is
/// syntactically stable under every extension of length <= t_max.
inline std::optional<SeqCode> find_stable_sequence(const Learner& h, std::size_t view, std::size_t t_max, Budget b) {
  FiniteSet d;
  for (std::size_t x = 1; x < view; ++x) d.insert(Nat(x));
  const Learner g = h.kind == OperatorKind::G ? h : star(h);
  std::map<Nat, std::optional<Nat>> memo;
  auto value = [&](const SeqCode& s) -> std::optional<Nat> {
    auto it = memo.find(s.code());
    if (it != memo.end()) return it->second;
    auto r = eval(g.program, s.code(), b);
    std::optional<Nat> out;
    if (r.is_halted()) out = r.value();
    return memo.emplace(s.code(), out).first->second;
  };
  const auto seqs = enum_bounded_seqs(d, t_max, std::max(t_max, kDefaultSeqCap));
  for (const auto& s : seqs) {
    const auto base = value(s);
    if (!base) continue;
    bool ok = true;
    for (const auto& tau : seqs) {
      if (value(seq_concat(s, tau)) != base) {
        ok = false;
        break;
      }
    }
    if (ok) return s;
  }
  return std::nullopt;
}

/// N+ and {D u {0}}: wrong on N+, or equal traces on sigma (x+1) 0^inf and
/// sigma (x+2) 0^inf, or a mind-change loop on N+.
inline AttackWitness it_attack(const Learner& h, const AttackBounds& b = {}) {
  AttackWitness w = detail::start(AttackKind::ItSep, h, b);
  const LanguageOracle npos = LanguageOracle::predicate([](const Nat& x) { return x > 0; }, "N+");
  w.languages.push_back({"N+", npos});
  const Text canon = canonical_text(programs::positives(), b.budget);
  w.texts.push_back(canon.describe());
  w.traces.push_back(run_trace(h, canon, b.horizon, b.budget));
  const Verdict v = check_restriction(Flavor::ExW, w.traces.back(), npos, b.m, b.budget);
  if (v.falsified()) {
    w.conclusive = true;
    w.evidence = v.witness;
    w.evidence_language = 0;
    w.mode = detail::mode_of(*v.witness);
    w.case_label = "fails on N+";
    return w;
  }
  if (auto d = w.traces.back().first_divergence()) {
    w.mode = FailureMode::Divergence;
    w.note = "opponent diverged on N+ at step " + std::to_string(*d);
    return w;
  }
  const auto sigma = find_stable_sequence(h, b.view, b.t_max, b.budget);
  if (sigma) {
    Nat x = 1;
    for (const auto& y : sigma->content()) x = std::max(x, y);
    w.indices["x"] = x;
    for (int k : {1, 2}) {
      FiniteSet d = sigma->content();
      d.insert(0);
      d.insert(x + k);
      Seq s = sigma->symbols();
      s.push_back(Symbol::datum(x + k));
      const Text T = explicit_text(s, Symbol::datum(0));
      w.languages.push_back({set_str(d), LanguageOracle::finite(d)});
      w.texts.push_back(T.describe());
      w.traces.push_back(run_trace(h, T, b.horizon, b.budget));
    }
    if (same_hypotheses(w.traces[1], w.traces[2])) {
      w.conclusive = true;
      w.mode = FailureMode::SameTrace;
      w.case_label = "locking candidate " + sigma->str();
      return w;
    }
  }
  if (looping(w.traces[0])) {
    w.conclusive = true;
    w.mode = FailureMode::MindChangeLoop;
    w.case_label = "no convergence on N+";
    w.note = std::to_string(mind_changes(w.traces[0])) + " mind changes up to the horizon";
    return w;
  }
  w.note = sigma ? "traces separate x+1 and x+2 after candidate " + sigma->str()
                 : "no stable candidate within the searched bounds";
  return w;
}

// ---------------------------------------------------------------------------

/// G(<e, x>): the first m, in the order of z = <m, s>, with
/// <e, m+1> in C_{h'({<e, y> : y <= m})}, every evaluation bounded by s.
inline ProgramIndex krt_sd_search_program(const Learner& h) {
  using namespace dsl;
  const Expr H = lit(h.program.value);
  // {<e, y> : y <= m} as a set code
  const Expr dm = app(rec("build", "k",
                          ifz(v("k"), prim(PrimOp::SetInsert, {lit(0), pair(v("e"), lit(0))}),
                              prim(PrimOp::SetInsert, {app(v("build"), pred(v("k"))), pair(v("e"), v("k"))}))),
                      v("m"));
  const Expr test = let_(
      "m", fst(v("z")),
      let_("s", snd(v("z")),
           let_("r", evalb(H, dm, v("s")),
                // r = hypothesis code + 1; need a conjecture (code >= 1)
                if_(lt(1, v("r")), ifz(eq(evalb(monus(v("r"), 2), pair(v("e"), succ(v("m"))), v("s")), 2), 1, 0),
                    1))));
  const Expr body = let_("e", fst(v("w")), fst(mu("z", test)));
  return programs::build(body, "w");
}

inline ProgramIndex krt_sd_index(const Learner& h) {
  using namespace dsl;
  const ProgramIndex g = krt_sd_search_program(h);
  const ProgramIndex f = programs::build(prim(PrimOp::MkSmn, {lit(g.value), v("i")}), "i");
  return krt(f);
}

inline FiniteSet krt_sd_prefix_set(const Nat& e, const Nat& m) {
  FiniteSet d;
  for (Nat y = 0; y <= m; ++y) d.insert(pair(e, y));
  return d;
}

inline AttackWitness krt_sd_adversary(const Learner& h, const AttackBounds& b = {}) {
  AttackWitness w = detail::start(AttackKind::KrtSd, h, b);
  const ProgramIndex e = krt_sd_index(h);
  const Nat ev = e.value;
  w.indices["e"] = ev;
  // host side: the decisions the search inside phi_e(0) looks for
  std::optional<std::size_t> hit;
  std::optional<Hypothesis> last;
  for (std::size_t m = 0; m <= b.m_max && !hit; ++m) {
    const auto hyp = call(h.program, input::sd(krt_sd_prefix_set(ev, Nat(m))), b.budget).hyp;
    if (!hyp) {
      w.mode = FailureMode::Divergence;
      w.note = "opponent diverged on the prefix set for m = " + std::to_string(m);
      return w;
    }
    last = hyp;
    if (hyp->is_unknown()) continue;
    const auto d = decide_C(ProgramIndex(hyp->index()), pair(ev, Nat(m + 1)), b.budget);
    if (d == CDecision::Yes) {
      hit = m;
    } else if (d != CDecision::No) {
      w.note = "decision at m = " + std::to_string(m) + " is " + std::string(to_string(d));
      return w;
    }
  }
  if (hit) {
    // Case 1: phi_e(0) = m and <e, m+1> is decided in by h'(L'_e)
    const auto r = eval(e, 0, b.search_budget);
    if (!r.is_halted()) {
      w.note = "a decision at m = " + std::to_string(*hit) + " exists but phi_e(0) did not halt within the search budget";
      return w;
    }
    const Nat m = r.value();
    w.indices["m"] = m;
    const FiniteSet lp = krt_sd_prefix_set(ev, m);
    w.languages.push_back({"L'_e", zoo::phase_L_prime(ev, m)});
    Seq s;
    for (const auto& x : lp) s.push_back(Symbol::datum(x));
    const Text T = explicit_text(s);
    w.texts.push_back(T.describe());
    w.traces.push_back(run_trace(h, T, b.horizon, b.budget));
    const auto hyp = call(h.program, input::sd(lp), b.budget).hyp;
    if (hyp && !hyp->is_unknown()) {
      const Nat x = pair(ev, m + 1);
      auto d = decide_C_detail(ProgramIndex(hyp->index()), x, b.budget);
      if (d.decision == CDecision::Yes) {
        w.conclusive = true;
        w.mode = FailureMode::WrongDecision;
        w.case_label = "case 1: phi_e(0) = " + m.str();
        w.evidence = Evidence{"wrong-decision", b.horizon, hyp, x, d.value, false};
        w.evidence_language = 0;
        return w;
      }
    }
    w.note = "phi_e(0) halted but the recorded decision did not reproduce";
    return w;
  }
  // Case 2: up to m_max, every h'(content(T[m+1])) decides <e, m+1> out
  w.languages.push_back({"L_e", zoo::phase_L(ev, b.m_max + 2)});
  const Text T = function_text([ev](std::size_t i) { return Symbol::datum(pair(ev, Nat(i))); }, "T(i) = <e, i>");
  w.texts.push_back(T.describe());
  w.traces.push_back(run_trace(h, T, std::max(b.horizon, b.m_max + 1), b.budget));
  w.conclusive = true;
  w.mode = FailureMode::WrongDecision;
  w.case_label = "case 2: no m <= " + std::to_string(b.m_max);
  w.note = "every conjecture on T[m+1], m <= " + std::to_string(b.m_max) +
           ", decides <e, m+1> out of L_e; certified only up to m_max";
  const Nat x = pair(ev, Nat(b.m_max + 1));
  if (last && !last->is_unknown()) {
    w.evidence = Evidence{"wrong-decision", b.m_max + 1, last, x, Nat(0), true};
  } else {
    w.mode = FailureMode::NoConjecture;
    w.evidence = Evidence{"no-conjecture", b.m_max + 1, Hypothesis::unknown(), std::nullopt, std::nullopt, std::nullopt};
  }
  w.evidence_language = 0;
  return w;
}

// ---------------------------------------------------------------------------
/// phi_{a(n)}(x) = ind({a(0), a(1)}) if h'(a(0)) != h'(a(1)), else ind({a(n)}).
inline OrtFamily ort_td_family(const Learner& h) {
  using namespace dsl;
  const Expr H = lit(h.program.value);
  const Expr body = let_(
      "ai", fst(v("w")),
      let_("n", fst(snd(v("w"))),
           let_("a0", eval(v("ai"), 0),
                let_("a1", eval(v("ai"), 1),
                     if_(eq(eval(H, succ(v("a0"))), eval(H, succ(v("a1")))),
                         prim(PrimOp::MkInd, {prim(PrimOp::SetInsert, {lit(0), eval(v("ai"), v("n"))})}),
                         prim(PrimOp::MkInd, {prim(PrimOp::SetInsert, {prim(PrimOp::SetInsert, {lit(0), v("a0")}),
                                                                      v("a1")})}))))));
  return ort(programs::build(body, "w"));
}

/// The learner the family is built for: h(#) = ?, h(x) = phi_x(0).
inline Learner self_describing_td() {
  using namespace dsl;
  return {programs::build(ifz(v("c"), 0, succ(eval(pred(v("c")), 0))), "c"), OperatorKind::Td, "self-describing"};
}

inline AttackWitness ort_td_totality_adversary(const Learner& h, const AttackBounds& b = {}) {
  AttackWitness w = detail::start(AttackKind::OrtTdTotal, h, b);
  const OrtFamily fam = ort_td_family(h);
  const auto r0 = eval(fam.a, 0, b.budget), r1 = eval(fam.a, 1, b.budget);
  if (!r0.is_halted() || !r1.is_halted()) {
    w.mode = FailureMode::Divergence;
    w.note = "a(0) or a(1) did not evaluate within budget";
    return w;
  }
  const Nat a0 = r0.value(), a1 = r1.value();
  w.indices["a_idx"] = fam.a.value;
  w.indices["a0"] = a0;
  w.indices["a1"] = a1;
  const auto h0 = call(h.program, a0 + 1, b.budget).hyp;
  const auto h1 = call(h.program, a1 + 1, b.budget).hyp;
  if (!h0 || !h1) {
    w.mode = FailureMode::Divergence;
    w.case_label = "opponent is not total";
    w.note = std::string("h' diverges on ") + (!h0 ? "a(0)" : "a(1)");
    return w;
  }
  if (*h0 != *h1) {
    // Case 1: {a0, a1} on (a0 a1)^inf
    const FiniteSet d{a0, a1};
    w.languages.push_back({"{a0,a1}", LanguageOracle::finite(d).with_probes({a0, a1})});
    const Text T = periodic_text({}, detail::data({a0, a1}));
    w.texts.push_back(T.describe());
    w.traces.push_back(run_trace(h, T, b.horizon, b.budget));
    w.case_label = "case 1: h'(a0) != h'(a1)";
    const Verdict v = check_restriction(Flavor::ExC, w.traces[0], w.languages[0].oracle, b.m, b.budget);
    if (v.falsified()) {
      w.conclusive = true;
      w.evidence = v.witness;
      w.evidence_language = 0;
      w.mode = detail::mode_of(*v.witness);
      return w;
    }
    if (looping(w.traces[0])) {
      w.conclusive = true;
      w.mode = FailureMode::MindChangeLoop;
      w.note = std::to_string(mind_changes(w.traces[0])) + " mind changes up to the horizon";
      return w;
    }
    w.note = "one answer is ? and the other is correct for {a0, a1} within bounds";
    return w;
  }
  // Case 2: {a0} on a0^inf and {a1} on a1^inf get the same hypotheses
  w.case_label = "case 2: h'(a0) = h'(a1)";
  for (const Nat& a : {a0, a1}) {
    w.languages.push_back({"{" + a.str() + "}", LanguageOracle::finite({a}).with_probes({a0, a1})});
    const Text T = explicit_text({}, Symbol::datum(a));
    w.texts.push_back(T.describe());
    w.traces.push_back(run_trace(h, T, b.horizon, b.budget));
  }
  if (same_hypotheses(w.traces[0], w.traces[1])) {
    w.conclusive = true;
    w.mode = FailureMode::SameTrace;
    return w;
  }
  w.note = "traces differ although h'(a0) = h'(a1)";
  return w;
}

// ---------------------------------------------------------------------------

inline AttackWitness run_attack(AttackKind k, const Learner& h, const AttackBounds& b = {}) {
  switch (k) {
    case AttackKind::TdSep: return td_attack(h, b);
    case AttackKind::ItSep: return it_attack(h, b);
    case AttackKind::KrtSd: return krt_sd_adversary(h, b);
    case AttackKind::OrtTdTotal: return ort_td_totality_adversary(h, b);
  }
  throw DomainError("unknown attack");
}

/// Re-runs the attack from the witness bounds, compares traces, and re-checks
/// the failure claim independently of the attack code path.
inline bool replay_validates(const AttackWitness& w, const Learner& h) {
  if (!w.conclusive) return false;
  const AttackWitness again = run_attack(w.attack, h, w.bounds);
  if (again.mode != w.mode || again.traces.size() != w.traces.size()) return false;
  for (std::size_t i = 0; i < w.traces.size(); ++i) {
    if (!same_hypotheses(again.traces[i], w.traces[i]) || again.traces[i].text != w.traces[i].text) return false;
  }
  switch (w.mode) {
    case FailureMode::WrongDecision:
    case FailureMode::NoConjecture:
      return w.evidence && w.evidence_language && revalidate(*w.evidence, w.languages[*w.evidence_language].oracle, w.bounds.budget);
    case FailureMode::SameTrace: {
      const std::size_t n = w.traces.size();
      if (n < 2) return false;
      const auto& l1 = w.languages[w.languages.size() - 2].oracle;
      const auto& l2 = w.languages[w.languages.size() - 1].oracle;
      // the two languages differ on a probed point
      bool differ = false;
      for (const auto& x : l2.probes(w.bounds.m)) differ = differ || l1.contains(x) != l2.contains(x);
      return differ && same_hypotheses(w.traces[n - 2], w.traces[n - 1]);
    }
    case FailureMode::MindChangeLoop: return looping(w.traces[0]);
    default: return false;
  }
}

// ---------------------------------------------------------------------------
// Opponent suites

inline std::vector<Learner> opponents(AttackKind k) {
  using namespace dsl;
  switch (k) {
    case AttackKind::TdSep:
      return {zoo::constant(OperatorKind::Td, Hypothesis::conjecture(ind({0, 1}).value), "const-ind{0,1}"),
              zoo::td_singleton(),
              zoo::constant(OperatorKind::Td, Hypothesis::unknown(), "always-?"),
              zoo::td_pad_churn({0, 1}),
              zoo::td_pad_churn({0}),
              {programs::build(ifz(v("c"), 0, succ(lit(ind({0}).value))), "c"), OperatorKind::Td, "guess-{0}"}};
    case AttackKind::ItSep:
      return {zoo::constant(OperatorKind::It, Hypothesis::conjecture(programs::positives_w().value), "const-N+"),
              zoo::constant(OperatorKind::It, Hypothesis::conjecture(ind({}).value), "const-ind{}"),
              zoo::it_max(),
              zoo::it_ind_memory(),
              zoo::it_zero_marker(programs::positives_w()),
              // stays on N+ until 0 arrives, then conjectures {0}
              {programs::build(ifz(v("w"), succ(lit(programs::positives_w().value)),
                                   ifz(snd(pred(v("w"))), fst(pred(v("w"))),
                                       if_(eq(snd(pred(v("w"))), 1), succ(lit(programs::w_index({0}).value)),
                                           fst(pred(v("w")))))),
                               "w"),
               OperatorKind::It, "zero-switch"}};
    case AttackKind::KrtSd: {
      // h(D) = ind(D u {<pi1(max D), pi2(max D) + 1>})
      const Expr succ_ext = let_("mx", prim(PrimOp::SetMax, {v("d")}),
                                 succ(prim(PrimOp::MkInd, {prim(PrimOp::SetInsert,
                                                                {v("d"), pair(fst(v("mx")), succ(snd(v("mx"))))})})));
      const Expr le = ifz(prim(PrimOp::ListLen, {v("d")}), succ(lit(ind({}).value)),
                          succ(prim(PrimOp::MkSmn, {lit(zoo::phase_L_program().value),
                                                    fst(prim(PrimOp::SetMin, {v("d")}))})));
      return {zoo::constant(OperatorKind::Sd, Hypothesis::conjecture(ind({}).value), "const-ind{}"),
              zoo::ind_learner(),
              {programs::build(succ_ext, "d"), OperatorKind::Sd, "successor-extension"},
              zoo::zero_marker(),
              {programs::build(le, "d"), OperatorKind::Sd, "L_e-learner"}};
    }
    case AttackKind::OrtTdTotal:
      return {zoo::constant(OperatorKind::Td, Hypothesis::conjecture(5), "const-5"),
              zoo::td_identity(),
              zoo::pair_component(),
              {programs::build(ifz(v("c"), 0, succ(prim(PrimOp::Mod, {v("c"), 2}))), "c"), OperatorKind::Td, "parity"},
              {programs::build(ifz(v("c"), 0, succ(prim(PrimOp::Mod, {v("c"), 3}))), "c"), OperatorKind::Td, "mod-3"},
              zoo::constant(OperatorKind::Td, Hypothesis::unknown(), "always-?"),
              zoo::td_singleton()};
  }
  return {};
}

}  // namespace cind
