#pragma once

// Bounded-horizon success criteria: Ex_W, Ex_C, Bc_W, Bc_C and CInd, locking
// sequence search, the candidate set p(D, t), delayability instance checks and
// whole-language verdicts.
//
// A verdict is three-valued. Satisfied is only ever relative to the horizon,
// the probed domain and the budget; Falsified carries a witness that can be
// re-run; everything undecided within bounds is Inconclusive.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cind/codes.hpp"
#include "cind/eval.hpp"
#include "cind/learner.hpp"
#include "cind/text.hpp"

namespace cind {

enum class Flavor { ExW, ExC, BcW, BcC, CInd };

inline std::string_view to_string(Flavor f) {
  switch (f) {
    case Flavor::ExW: return "Ex_W";
    case Flavor::ExC: return "Ex_C";
    case Flavor::BcW: return "Bc_W";
    case Flavor::BcC: return "Bc_C";
    case Flavor::CInd: return "CInd";
  }
  return "?";
}

inline Flavor parse_flavor(std::string_view s) {
  for (auto f : {Flavor::ExW, Flavor::ExC, Flavor::BcW, Flavor::BcC, Flavor::CInd}) {
    if (s == to_string(f)) return f;
  }
  throw DomainError("unknown restriction: " + std::string(s));
}

enum class Semantics { C, W };
inline Semantics semantics_of(Flavor f) { return f == Flavor::ExW || f == Flavor::BcW ? Semantics::W : Semantics::C; }

/// Membership oracle for the target language, with the points it is probed on.
class LanguageOracle {
 public:
  static LanguageOracle finite(FiniteSet d) {
    LanguageOracle o;
    o.name_ = set_str(d);
    o.set_ = std::move(d);
    o.kind_ = Kind::Finite;
    return o;
  }
  static LanguageOracle c_index(ProgramIndex e, Budget b, std::string name = {}) {
    LanguageOracle o;
    o.name_ = name.empty() ? "C_" + e.str() : std::move(name);
    o.c_ = std::move(e);
    o.budget_ = b;
    o.kind_ = Kind::CIndex;
    return o;
  }
  static LanguageOracle predicate(std::function<bool(const Nat&)> p, std::string name) {
    LanguageOracle o;
    o.pred_ = std::move(p);
    o.name_ = std::move(name);
    o.kind_ = Kind::Predicate;
    return o;
  }

  /// Additional points probed besides [0, m).
  LanguageOracle with_probes(std::vector<Nat> extra) const {
    LanguageOracle o = *this;
    o.extra_ = std::move(extra);
    return o;
  }

  /// nullopt when a C-index oracle runs out of budget.
  std::optional<bool> contains(const Nat& x) const {
    switch (kind_) {
      case Kind::Finite: return set_.count(x) > 0;
      case Kind::Predicate: return pred_(x);
      case Kind::CIndex: {
        auto d = decide_C(c_, x, budget_);
        if (d == CDecision::Yes) return true;
        if (d == CDecision::No) return false;
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  std::vector<Nat> probes(std::size_t m) const {
    std::vector<Nat> out;
    for (std::size_t x = 0; x < m; ++x) out.emplace_back(x);
    for (const auto& x : extra_) {
      if (x >= m) out.push_back(x);
    }
    return out;
  }

  /// Members among the probes.
  FiniteSet view(std::size_t m) const {
    FiniteSet out;
    for (const auto& x : probes(m)) {
      if (contains(x).value_or(false)) out.insert(x);
    }
    return out;
  }

  const std::string& name() const { return name_; }
  std::optional<FiniteSet> finite_set() const {
    if (kind_ == Kind::Finite) return set_;
    return std::nullopt;
  }

 private:
  enum class Kind { Finite, CIndex, Predicate };
  Kind kind_ = Kind::Finite;
  FiniteSet set_;
  ProgramIndex c_;
  Budget budget_ = 0;
  std::function<bool(const Nat&)> pred_;
  std::string name_;
  std::vector<Nat> extra_;
};

// ---------------------------------------------------------------------------

enum class VerdictKind { Satisfied, Falsified, Inconclusive };

inline std::string_view to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::Satisfied: return "Satisfied";
    case VerdictKind::Falsified: return "Falsified";
    case VerdictKind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

/// Re-runnable evidence for a Falsified verdict.
struct Evidence {
  std::string kind;  // wrong-decision | not-boolean | wrong-enumeration | no-conjecture | unknown-after-conjecture
  std::size_t step = 0;
  std::optional<Hypothesis> hypothesis;
  std::optional<Nat> element;
  std::optional<Nat> observed;  // value returned by the hypothesis, if any
  std::optional<bool> member;   // membership of `element` in the target
};

struct Verdict {
  VerdictKind kind = VerdictKind::Inconclusive;
  Flavor flavor = Flavor::ExC;
  std::size_t n0 = 0;
  std::size_t checked_domain = 0;
  std::size_t step = 0;
  std::optional<Evidence> witness;
  std::size_t horizon = 0;
  Budget budget = 0;
  std::string note;

  bool satisfied() const { return kind == VerdictKind::Satisfied; }
  bool falsified() const { return kind == VerdictKind::Falsified; }
};

inline int severity(VerdictKind k) {
  switch (k) {
    case VerdictKind::Satisfied: return 0;
    case VerdictKind::Inconclusive: return 1;
    case VerdictKind::Falsified: return 2;
  }
  return 2;
}

/// Worst of several verdicts (Falsified > Inconclusive > Satisfied); ties keep the first.
inline Verdict worst(const std::vector<Verdict>& vs) {
  if (vs.empty()) return Verdict{};
  Verdict w = vs.front();
  for (const auto& v : vs) {
    if (severity(v.kind) > severity(w.kind)) w = v;
  }
  return w;
}

// ---------------------------------------------------------------------------

enum class Judgement { Correct, Wrong, Unknown };

struct Judged {
  Judgement j = Judgement::Unknown;
  std::optional<Evidence> evidence;
};

/// Is conjecture e correct for L on the probed points?
inline Judged judge(const Nat& e, Semantics sem, const LanguageOracle& L, std::size_t m, Budget b) {
  bool unknown = false;
  for (const auto& x : L.probes(m)) {
    const auto member = L.contains(x);
    if (!member) {
      unknown = true;
      continue;
    }
    if (sem == Semantics::C) {
      auto r = decide_C_detail(ProgramIndex(e), x, b);
      switch (r.decision) {
        case CDecision::OutOfBudget: unknown = true; break;
        case CDecision::NotBoolean:
          return {Judgement::Wrong, Evidence{"not-boolean", 0, Hypothesis::conjecture(e), x, r.value, *member}};
        case CDecision::Yes:
        case CDecision::No:
          if ((r.decision == CDecision::Yes) != *member) {
            return {Judgement::Wrong, Evidence{"wrong-decision", 0, Hypothesis::conjecture(e), x, r.value, *member}};
          }
          break;
      }
    } else {
      auto r = eval(ProgramIndex(e), x, b);
      if (r.is_halted() && !*member) {
        return {Judgement::Wrong, Evidence{"wrong-enumeration", 0, Hypothesis::conjecture(e), x, r.value(), false}};
      }
      if (!r.is_halted() && *member) unknown = true;
    }
  }
  return {unknown ? Judgement::Unknown : Judgement::Correct, std::nullopt};
}

class Judge {
 public:
  Judge(Semantics s, const LanguageOracle& L, std::size_t m, Budget b) : sem_(s), L_(L), m_(m), b_(b) {}
  const Judged& operator()(const Nat& e) {
    auto it = memo_.find(e);
    if (it != memo_.end()) return it->second;
    return memo_.emplace(e, judge(e, sem_, L_, m_, b_)).first->second;
  }

 private:
  Semantics sem_;
  const LanguageOracle& L_;
  std::size_t m_;
  Budget b_;
  std::map<Nat, Judged> memo_;
};

namespace detail {

inline Verdict base_verdict(Flavor f, const Trace& tr, std::size_t m, Budget b) {
  Verdict v;
  v.flavor = f;
  v.horizon = tr.horizon();
  v.checked_domain = m;
  v.budget = b;
  return v;
}

inline Verdict falsified(Verdict v, std::size_t step, Evidence e) {
  v.kind = VerdictKind::Falsified;
  v.step = step;
  e.step = step;
  v.witness = std::move(e);
  return v;
}

inline Verdict inconclusive(Verdict v, std::string why) {
  v.kind = VerdictKind::Inconclusive;
  v.note = std::move(why);
  return v;
}

inline Verdict check_cind(Verdict v, const Trace& tr, const LanguageOracle& L, std::size_t m, Budget b) {
  bool seen = false;
  std::string pending;
  std::map<Nat, bool> checked;  // index -> fully boolean on the probes
  for (const auto& e : tr.entries) {
    if (!e.hyp) {
      if (pending.empty()) pending = "learner diverged at step " + std::to_string(e.i);
      continue;
    }
    if (e.hyp->is_unknown()) {
      if (seen) {
        return falsified(v, e.i, Evidence{"unknown-after-conjecture", 0, e.hyp, std::nullopt, std::nullopt, std::nullopt});
      }
      continue;
    }
    seen = true;
    const Nat& idx = e.hyp->index();
    if (checked.count(idx)) continue;
    bool all = true;
    for (const auto& x : L.probes(m)) {
      auto r = decide_C_detail(ProgramIndex(idx), x, b);
      if (r.decision == CDecision::NotBoolean) {
        return falsified(v, e.i, Evidence{"not-boolean", 0, e.hyp, x, r.value, L.contains(x)});
      }
      if (r.decision == CDecision::OutOfBudget) {
        all = false;
        if (pending.empty()) pending = "budget exhausted deciding " + x.str() + " with conjecture " + idx.str();
      }
    }
    checked[idx] = all;
  }
  if (!pending.empty()) return inconclusive(v, pending);
  v.kind = VerdictKind::Satisfied;
  v.n0 = 0;
  v.note = "horizon-limited";
  return v;
}

}  // namespace detail

/// As below, with judgements shared through `judge_of` across calls.
inline Verdict check_restriction(Flavor f, const Trace& tr, const LanguageOracle& L, std::size_t m, Budget b,
                                 Judge& judge_of) {
  Verdict v = detail::base_verdict(f, tr, m, b);
  if (m < 1) throw DomainError("domain bound m must be at least 1");
  if (tr.entries.empty()) throw DomainError("empty trace");
  if (f == Flavor::CInd) return detail::check_cind(v, tr, L, m, b);

  const std::size_t H = tr.horizon();
  if (auto d = tr.first_divergence()) return detail::inconclusive(v, "learner diverged at step " + std::to_string(*d));
  bool seen = false;
  for (const auto& e : tr.entries) {
    if (e.hyp->is_unknown() && seen && e.i < H) {
      return detail::falsified(v, e.i, Evidence{"unknown-after-conjecture", 0, e.hyp, std::nullopt, std::nullopt, std::nullopt});
    }
    seen = seen || !e.hyp->is_unknown();
  }
  const Hypothesis& last = *tr.entries[H].hyp;
  if (last.is_unknown()) {
    return detail::falsified(v, H, Evidence{"no-conjecture", 0, last, std::nullopt, std::nullopt, std::nullopt});
  }
  const Judged& fin = judge_of(last.index());
  if (fin.j == Judgement::Wrong) return detail::falsified(v, H, *fin.evidence);
  if (fin.j == Judgement::Unknown) return detail::inconclusive(v, "final conjecture undecided within budget");

  std::size_t n0 = H;
  if (f == Flavor::ExW || f == Flavor::ExC) {
    while (n0 > 0 && *tr.entries[n0 - 1].hyp == last) --n0;
  } else {
    while (n0 > 0) {
      const auto& h = *tr.entries[n0 - 1].hyp;
      if (h.is_unknown() || judge_of(h.index()).j != Judgement::Correct) break;
      --n0;
    }
  }
  v.kind = VerdictKind::Satisfied;
  v.n0 = n0;
  v.note = "horizon-limited";
  return v;
}

inline Verdict check_restriction(Flavor f, const Trace& tr, const LanguageOracle& L, std::size_t m, Budget b) {
  Judge judge_of(semantics_of(f), L, m, b);
  return check_restriction(f, tr, L, m, b, judge_of);
}

/// Re-runs a Falsified witness; true when the recorded failure reproduces.
inline bool revalidate(const Evidence& e, const LanguageOracle& L, Budget b) {
  if (e.kind == "no-conjecture" || e.kind == "unknown-after-conjecture") return e.hypothesis && e.hypothesis->is_unknown();
  if (!e.hypothesis || e.hypothesis->is_unknown() || !e.element) return false;
  const ProgramIndex h(e.hypothesis->index());
  const auto member = L.contains(*e.element);
  if (e.kind == "not-boolean") {
    return decide_C(h, *e.element, b) == CDecision::NotBoolean;
  }
  if (e.kind == "wrong-decision") {
    if (!member) return false;
    const auto d = decide_C(h, *e.element, b);
    return (d == CDecision::Yes && !*member) || (d == CDecision::No && *member);
  }
  if (e.kind == "wrong-enumeration") {
    return member && !*member && eval(h, *e.element, b).is_halted();
  }
  return false;
}

// ---------------------------------------------------------------------------

struct Criterion {
  OperatorKind op = OperatorKind::G;
  std::vector<Flavor> flavors{Flavor::ExC};  // delta: all must hold on texts of L
  bool tau_cind = false;                     // alpha = CInd on caller-supplied probe texts
};

struct LearnResult {
  std::vector<Trace> traces;
  std::vector<Verdict> per_text;  // one per (text, flavor)
  std::vector<Verdict> probes;    // tau(CInd) side-condition
  Verdict aggregate;
};

inline LearnResult learns(const Criterion& c, const Learner& h, const LanguageOracle& L, const std::vector<Text>& texts,
                          std::size_t horizon, Budget b, std::size_t m, const std::vector<Text>& probe_texts = {}) {
  if (h.kind != c.op) throw DomainError("learner operator does not match the criterion");
  LearnResult out;
  std::vector<Verdict> all;
  for (const auto& T : texts) {
    out.traces.push_back(run_trace(h, T, horizon, b));
    for (auto f : c.flavors) {
      out.per_text.push_back(check_restriction(f, out.traces.back(), L, m, b));
      all.push_back(out.per_text.back());
    }
  }
  if (c.tau_cind) {
    for (const auto& T : probe_texts) {
      out.probes.push_back(check_restriction(Flavor::CInd, run_trace(h, T, horizon, b), L, m, b));
      all.push_back(out.probes.back());
    }
  }
  out.aggregate = worst(all);
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

/// Host-side memo of a G-learner's answers by sequence code.
class GMemo {
 public:
  GMemo(ProgramIndex h, Budget b) : h_(std::move(h)), b_(b) {}
  const Nat& operator()(const Nat& seq_code) {
    auto it = memo_.find(seq_code);
    if (it != memo_.end()) return it->second;
    auto r = eval(h_, seq_code, b_);
    if (!r.is_halted()) {
      throw DomainError("learner " + h_.str() + " did not halt within budget on sequence " +
                        seq_str(decode_seq(seq_code)));
    }
    return memo_.emplace(seq_code, r.value()).first->second;
  }

 private:
  ProgramIndex h_;
  Budget b_;
  std::map<Nat, Nat> memo_;
};

}  // namespace detail

/// All sigma in (D u {#})^{<=t} with h(sigma) = h(sigma tau) for every tau in
/// (D u {#})^{<=t}, ascending. h is a G-learner; throws when it diverges.
inline std::vector<SeqCode> p_set(const Learner& h, const FiniteSet& d, std::size_t t, Budget b,
                                  std::size_t cap = kDefaultSeqCap) {
  const Learner g = h.kind == OperatorKind::G ? h : star(h);
  detail::GMemo hv(g.program, b);
  const auto seqs = enum_bounded_seqs(d, t, cap);
  std::vector<SeqCode> out;
  for (const auto& s : seqs) {
    const Nat base = hv(s.code());
    bool stable = true;
    for (const auto& tau : seqs) {
      if (hv(seq_concat(s, tau).code()) != base) {
        stable = false;
        break;
      }
    }
    if (stable) out.push_back(s);
  }
  return out;
}

/// Least sigma over the probed members of L (plus #), of length <= t_max, that
/// is stable under every extension of length <= t_max and whose hypothesis is
/// correct. The Bc variant asks only that every extension's hypothesis be
/// correct. A result is a candidate at this horizon, not a certificate.
inline std::optional<SeqCode> find_locking_sequence(const Learner& h, const LanguageOracle& L, std::size_t t_max,
                                                    Budget b, std::size_t m, Semantics sem = Semantics::C,
                                                    bool bc_variant = false) {
  const Learner g = h.kind == OperatorKind::G ? h : star(h);
  detail::GMemo hv(g.program, b);
  Judge judge_of(sem, L, m, b);
  auto correct = [&](const Nat& hyp_code) {
    return hyp_code != 0 && judge_of(hyp_code - 1).j == Judgement::Correct;
  };
  const auto seqs = enum_bounded_seqs(L.view(m), t_max, std::max(t_max, kDefaultSeqCap));
  for (const auto& s : seqs) {
    const Nat base = hv(s.code());
    if (!bc_variant && !correct(base)) continue;
    bool ok = true;
    for (const auto& tau : seqs) {
      const Nat& ext = hv(seq_concat(s, tau).code());
      if (bc_variant ? !correct(ext) : ext != base) {
        ok = false;
        break;
      }
    }
    if (ok) return s;
  }
  return std::nullopt;
}

/// Checks one instance of delayability: if flavor(p, T) then flavor(p o r, T').
/// Violated preconditions raise DomainError.
inline bool check_delayable_instance(Flavor f, const Trace& p, const Text& T, const std::vector<std::size_t>& r,
                                     const Text& T2, const LanguageOracle& L, std::size_t m, Budget b) {
  const std::size_t H = p.horizon();
  if (r.size() != H + 1) throw DomainError("delay table must cover the horizon");
  for (std::size_t n = 0; n <= H; ++n) {
    if (r[n] > H) throw DomainError("delay table points beyond the trace");
    if (n > 0 && r[n] < r[n - 1]) throw DomainError("delay table is not non-decreasing");
  }
  const Seq s1 = T.prefix(H), s2 = T2.prefix(H);
  if (content_of(s1) != content_of(s2)) throw DomainError("texts differ in content on the compared prefix");
  for (std::size_t n = 0; n <= H; ++n) {
    const FiniteSet a = content_of(Seq(s1.begin(), s1.begin() + static_cast<std::ptrdiff_t>(r[n])));
    const FiniteSet c = content_of(Seq(s2.begin(), s2.begin() + static_cast<std::ptrdiff_t>(n)));
    if (!std::includes(c.begin(), c.end(), a.begin(), a.end())) {
      throw DomainError("content(T[r(n)]) is not contained in content(T'[n]) at n = " + std::to_string(n));
    }
  }
  Judge judge_of(semantics_of(f), L, m, b);
  const Verdict before = check_restriction(f, p, L, m, b, judge_of);
  if (!before.satisfied()) return true;
  // finitary stand-in for unboundedness of r: it must reach the point of success
  if (r[H] < before.n0) throw DomainError("delay table never reaches the convergence point within the horizon");
  Trace delayed = p;
  delayed.text = s2;
  for (std::size_t n = 0; n <= H; ++n) {
    delayed.entries[n] = p.entries[r[n]];
    delayed.entries[n].i = n;
  }
  return check_restriction(f, delayed, L, m, b, judge_of).satisfied();
}

}  // namespace cind
