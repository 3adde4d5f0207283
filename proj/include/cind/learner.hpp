#pragma once

// Learners, the interaction operators G/Psd/Sd/It/Td, starred learners and
// traces.
//
// Input conventions of a learner program, by operator:
//   G    code of the sequence seen so far
//   Psd  <set code of the content, number of symbols seen>
//   Sd   set code of the content
//   It   0 for the initial call h(eps); <previous hypothesis code, symbol code> + 1
//   Td   symbol code (0 for #)
// Outputs are hypothesis codes: 0 is ?, e+1 is the conjecture e.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cind/builder.hpp"
#include "cind/codes.hpp"
#include "cind/eval.hpp"
#include "cind/numbering.hpp"
#include "cind/text.hpp"

namespace cind {

enum class OperatorKind { G, Psd, Sd, It, Td };

inline std::string_view to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::G: return "G";
    case OperatorKind::Psd: return "Psd";
    case OperatorKind::Sd: return "Sd";
    case OperatorKind::It: return "It";
    case OperatorKind::Td: return "Td";
  }
  return "?";
}

inline OperatorKind parse_operator(std::string_view s) {
  for (auto k : {OperatorKind::G, OperatorKind::Psd, OperatorKind::Sd, OperatorKind::It, OperatorKind::Td}) {
    if (s == to_string(k)) return k;
  }
  throw DomainError("unknown interaction operator: " + std::string(s));
}

struct Learner {
  ProgramIndex program;
  OperatorKind kind = OperatorKind::G;
  std::string name;
};

namespace input {
inline Nat g(const Seq& s) { return encode_seq(s); }
inline Nat psd(const FiniteSet& d, std::size_t t) { return pair(encode_set(d), Nat(t)); }
inline Nat sd(const FiniteSet& d) { return encode_set(d); }
inline Nat it_initial() { return 0; }
inline Nat it(const Hypothesis& prev, const Symbol& s) { return pair(prev.code(), s.code()) + 1; }
inline Nat td(const Symbol& s) { return s.code(); }
}  // namespace input

/// One learner call: a hypothesis, or nullopt when it diverged within budget.
struct Call {
  std::optional<Hypothesis> hyp;
  Budget steps = 0;
};

inline Call call(const ProgramIndex& h, const Nat& in, Budget budget) {
  auto r = eval(h, in, budget);
  if (!r.is_halted()) return {std::nullopt, budget};
  return {Hypothesis::from_code(r.value()), r.steps()};
}

/// beta(h, T)(i); nullopt is Diverged.
inline std::optional<Hypothesis> apply_operator(const Learner& h, const Text& T, std::size_t i, Budget budget) {
  const Seq s = T.prefix(i);
  switch (h.kind) {
    case OperatorKind::G: return call(h.program, input::g(s), budget).hyp;
    case OperatorKind::Psd: return call(h.program, input::psd(content_of(s), i), budget).hyp;
    case OperatorKind::Sd: return call(h.program, input::sd(content_of(s)), budget).hyp;
    case OperatorKind::It: {
      auto cur = call(h.program, input::it_initial(), budget).hyp;
      for (std::size_t k = 0; k < i && cur; ++k) cur = call(h.program, input::it(*cur, s[k]), budget).hyp;
      return cur;
    }
    case OperatorKind::Td: {
      // the latest position whose symbol draws a non-? answer decides
      for (std::size_t k = i; k-- > 0;) {
        auto r = call(h.program, input::td(s[k]), budget).hyp;
        if (!r) return std::nullopt;
        if (!r->is_unknown()) return r;
      }
      return Hypothesis::unknown();
    }
  }
  return std::nullopt;
}

struct TraceEntry {
  std::size_t i = 0;
  std::optional<Hypothesis> hyp;  // nullopt: Diverged
  Budget steps = 0;               // steps of the learner call(s) made for this entry
};

struct Trace {
  std::string learner;
  OperatorKind kind = OperatorKind::G;
  Seq text;  // T[horizon]
  std::vector<TraceEntry> entries;
  Budget budget = 0;

  std::size_t horizon() const { return entries.empty() ? 0 : entries.size() - 1; }
  std::optional<std::size_t> first_divergence() const {
    for (const auto& e : entries) {
      if (!e.hyp) return e.i;
    }
    return std::nullopt;
  }
};

/// apply_operator for i = 0..horizon, computed incrementally.
inline Trace run_trace(const Learner& h, const Text& T, std::size_t horizon, Budget budget) {
  Trace tr;
  tr.learner = h.name.empty() ? h.program.str() : h.name;
  tr.kind = h.kind;
  tr.budget = budget;
  tr.text = T.prefix(horizon);
  const Seq& s = tr.text;
  std::optional<Hypothesis> state;
  bool it_alive = true;
  FiniteSet content;
  for (std::size_t i = 0; i <= horizon; ++i) {
    TraceEntry e;
    e.i = i;
    if (i > 0 && !s[i - 1].is_pause()) content.insert(s[i - 1].value());
    switch (h.kind) {
      case OperatorKind::G: {
        auto c = call(h.program, input::g(Seq(s.begin(), s.begin() + static_cast<std::ptrdiff_t>(i))), budget);
        e.hyp = c.hyp;
        e.steps = c.steps;
        break;
      }
      case OperatorKind::Psd: {
        auto c = call(h.program, input::psd(content, i), budget);
        e.hyp = c.hyp;
        e.steps = c.steps;
        break;
      }
      case OperatorKind::Sd: {
        auto c = call(h.program, input::sd(content), budget);
        e.hyp = c.hyp;
        e.steps = c.steps;
        break;
      }
      case OperatorKind::It: {
        if (it_alive) {
          auto c = i == 0 ? call(h.program, input::it_initial(), budget) : call(h.program, input::it(*state, s[i - 1]), budget);
          state = c.hyp;
          e.steps = c.steps;
          it_alive = state.has_value();
        }
        e.hyp = it_alive ? state : std::nullopt;
        break;
      }
      case OperatorKind::Td: {
        if (i == 0) {
          state = Hypothesis::unknown();
        } else {
          auto c = call(h.program, input::td(s[i - 1]), budget);
          e.steps = c.steps;
          if (!c.hyp) {
            state = std::nullopt;
          } else if (!c.hyp->is_unknown()) {
            state = c.hyp;
          }
        }
        e.hyp = state;
        break;
      }
    }
    tr.entries.push_back(std::move(e));
  }
  return tr;
}

/// The G-learner simulating h, as a program.
inline Learner star(const Learner& h) {
  using namespace dsl;
  const Expr H = lit(h.program.value);
  const Expr len = prim(PrimOp::ListLen, {v("s")});
  auto at = [](Expr k) { return prim(PrimOp::ListAt, {v("s"), std::move(k)}); };
  Expr body = v("s");
  switch (h.kind) {
    case OperatorKind::G: return Learner{h.program, OperatorKind::G, h.name};
    case OperatorKind::Sd: body = eval(H, prim(PrimOp::SeqContent, {v("s")})); break;
    case OperatorKind::Psd: body = eval(H, pair(prim(PrimOp::SeqContent, {v("s")}), len)); break;
    case OperatorKind::It:
      // loop(<k, state>)
      body = app(rec("loop", "ks",
                     let_("k", fst(v("ks")),
                          if_(lt(v("k"), len),
                              app(v("loop"), pair(succ(v("k")), eval(H, succ(pair(snd(v("ks")), at(v("k"))))))),
                              snd(v("ks"))))),
                 pair(lit(0), eval(H, 0)));
      break;
    case OperatorKind::Td:
      body = app(rec("loop", "ks",
                     let_("k", fst(v("ks")),
                          if_(lt(v("k"), len),
                              let_("r", eval(H, at(v("k"))),
                                   app(v("loop"), pair(succ(v("k")), ifz(v("r"), snd(v("ks")), v("r"))))),
                              snd(v("ks"))))),
                 pair(lit(0), lit(0)));
      break;
  }
  return Learner{programs::build(body, "s"), OperatorKind::G, "star(" + (h.name.empty() ? h.program.str() : h.name) + ")"};
}

}  // namespace cind
