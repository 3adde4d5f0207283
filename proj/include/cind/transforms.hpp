#pragma once

// Learner transformations. Each emits a program in the numbering that calls
// the input learner only through eval on its literal index.
//
//   g2psd     G -> Psd     h'(D, t) = h(min p(D, t)), ind(empty) if p(D, t) is empty
//   it2sd     It -> Sd     h'(D) = h*(sort#(D)) if stable under one more #, else ind(D)
//   g2it-bc   G -> It      state pad(h(sigma), code sigma)
//   g2psd-bc  G -> Psd     h'(D, t) decides { x : Q(x, 1, (D, t)) }
//   td-ex     Td -> Td     h'(x) = h(min { y in C_h(x) : h(y) != ? })

#include <map>
#include <optional>
#include <string>

#include "cind/builder.hpp"
#include "cind/criteria.hpp"
#include "cind/learner.hpp"
#include "cind/numbering.hpp"

namespace cind {

enum class TransformKind { G2Psd, It2Sd, G2ItBc, G2PsdBc, TdEx };

inline std::string_view to_string(TransformKind k) {
  switch (k) {
    case TransformKind::G2Psd: return "g2psd";
    case TransformKind::It2Sd: return "it2sd";
    case TransformKind::G2ItBc: return "g2it-bc";
    case TransformKind::G2PsdBc: return "g2psd-bc";
    case TransformKind::TdEx: return "td-ex";
  }
  return "?";
}

inline TransformKind parse_transform(std::string_view s) {
  for (auto k : {TransformKind::G2Psd, TransformKind::It2Sd, TransformKind::G2ItBc, TransformKind::G2PsdBc,
                 TransformKind::TdEx}) {
    if (s == to_string(k)) return k;
  }
  throw DomainError("unknown transformation: " + std::string(s));
}

inline OperatorKind input_kind(TransformKind k) {
  switch (k) {
    case TransformKind::It2Sd: return OperatorKind::It;
    case TransformKind::TdEx: return OperatorKind::Td;
    default: return OperatorKind::G;
  }
}

struct TransformReport {
  TransformKind kind = TransformKind::G2Psd;
  ProgramIndex input;
  ProgramIndex output;
  ProgramIndex helper;  // g2psd-bc: the Q program; g2psd/it2sd: unused (0)
  std::size_t t_cap = 0;
  std::vector<std::string> warnings;
};

struct Transformed {
  Learner learner;
  TransformReport report;
};

inline constexpr std::size_t kG2PsdCap = 4;
inline constexpr std::size_t kG2PsdBcCap = 2;

namespace detail {

using namespace dsl;

inline Expr list_len(Expr l) { return prim(PrimOp::ListLen, {std::move(l)}); }
inline Expr list_at(Expr l, Expr k) { return prim(PrimOp::ListAt, {std::move(l), std::move(k)}); }
inline Expr concat(Expr a, Expr b) { return prim(PrimOp::ListConcat, {std::move(a), std::move(b)}); }
inline Expr min_(Expr a, Expr b) { return if_(lt(a, b), a, b); }

/// exists k < len(list): pred(list[k]); pred is an Expr over the variable `item`.
/// Yields 1 or 0.
inline Expr exists_in(Expr list, const std::string& item, Expr pred) {
  const std::string l = "list-" + item;
  return let_(l, std::move(list),
              app(rec("ex", "k",
                      if_(lt(v("k"), list_len(v(l))),
                          let_(item, list_at(v(l), v("k")), if_(pred, 1, app(v("ex"), succ(v("k"))))), 0)),
                  0));
}
inline Expr forall_in(Expr list, const std::string& item, Expr pred) {
  return not_(exists_in(std::move(list), item, not_(std::move(pred))));
}

/// Finite probe for totality on short sequences over {0, 1}.
inline std::vector<std::string> probe_totality(const Learner& g, Budget b) {
  std::vector<std::string> out;
  for (const auto& s : enum_bounded_seqs({0, 1}, 2)) {
    if (!eval(g.program, s.code(), b).is_halted()) {
      out.push_back("input learner did not halt within " + std::to_string(b) + " steps on " + s.str());
      break;
    }
  }
  return out;
}

inline std::string name_of(const Learner& h) { return h.name.empty() ? h.program.str() : h.name; }

}  // namespace detail

/// G -> Psd by minimal candidate locking sequence; t is capped at `cap`.
inline Transformed g_to_psd(const Learner& h, std::size_t cap = kG2PsdCap, Budget probe_budget = 100000) {
  using namespace dsl;
  using namespace detail;
  if (h.kind != OperatorKind::G) throw DomainError("g2psd expects a G-learner");
  const Expr H = lit(h.program.value);
  // stable(sigma) = forall tau in seqs: h(sigma tau) = h(sigma)
  const Expr stable = forall_in(v("seqs"), "tau", eq(eval(H, concat(v("sigma"), v("tau"))), v("base")));
  const Expr search = app(rec("find", "k",
                              if_(lt(v("k"), list_len(v("seqs"))),
                                  let_("sigma", list_at(v("seqs"), v("k")),
                                       let_("base", eval(H, v("sigma")),
                                            if_(stable, v("base"), app(v("find"), succ(v("k")))))),
                                  succ(lit(ind({}).value)))),
                          0);
  const Expr body = let_("d", fst(v("w")),
                         let_("seqs", prim(PrimOp::EnumSeqs, {v("d"), min_(snd(v("w")), lit(Nat(cap)))}), search));
  Learner out{programs::build(body, "w"), OperatorKind::Psd, "g2psd(" + name_of(h) + ")"};
  TransformReport rep{TransformKind::G2Psd, h.program, out.program, ProgramIndex(), cap, probe_totality(h, probe_budget)};
  return {out, rep};
}

/// It -> Sd by sort#.
inline Transformed it_to_sd(const Learner& h) {
  using namespace dsl;
  using namespace detail;
  if (h.kind != OperatorKind::It) throw DomainError("it2sd expects an It-learner");
  const Learner hs = star(h);
  const Expr S = lit(hs.program.value);
  const Expr body = let_("s", prim(PrimOp::SortSharp, {v("d")}),
                         let_("a", eval(S, v("s")),
                              if_(eq(v("a"), eval(S, prim(PrimOp::ListSnoc, {v("s"), 0}))), v("a"),
                                  succ(prim(PrimOp::MkInd, {v("d")})))));
  Learner out{programs::build(body, "d"), OperatorKind::Sd, "it2sd(" + name_of(h) + ")"};
  return {out, TransformReport{TransformKind::It2Sd, h.program, out.program, hs.program, 0, {}}};
}

/// G -> It: the iterative state is pad(h(sigma), code sigma); a ? answer of h
/// is carried as pad(ind(empty), code sigma).
inline Transformed g_to_it_bc(const Learner& h, Budget probe_budget = 100000) {
  using namespace dsl;
  using namespace detail;
  if (h.kind != OperatorKind::G) throw DomainError("g2it-bc expects a G-learner");
  const Expr H = lit(h.program.value);
  const Expr E = lit(ind({}).value);
  auto hyp_of = [&](Expr s) {
    return let_("r", eval(H, s), succ(prim(PrimOp::MkPad, {ifz(v("r"), E, pred(v("r"))), s})));
  };
  const Expr step = let_("sigma",
                         prim(PrimOp::ListSnoc, {prim(PrimOp::UnpadPayload, {pred(fst(pred(v("w"))))}), snd(pred(v("w")))}),
                         hyp_of(v("sigma")));
  const Expr body = ifz(v("w"), hyp_of(lit(0)), step);
  Learner out{programs::build(body, "w"), OperatorKind::It, "g2it-bc(" + name_of(h) + ")"};
  return {out, TransformReport{TransformKind::G2ItBc, h.program, out.program, ProgramIndex(), 0,
                               probe_totality(h, probe_budget)}};
}

/// The Q program of g2psd-bc: input <<D, t>, x>, output 1 iff Q(x, 1, (D, t)).
///   Q(x, a, (D, t)) iff exists sigma in D#^{<=t}:
///     (1) forall tau in D#^{<=t}: phi_{h(sigma tau)}(x) = a, and
///     (2) forall sigma' < sigma over D#: exists tau' in D#^{<=t}: phi_{h(sigma' tau')}(x) = a.
/// A ? answer of h counts as a hypothesis that is not equal to a.
inline ProgramIndex q_program(const Learner& h) {
  using namespace dsl;
  using namespace detail;
  const Expr H = lit(h.program.value);
  // value of the hypothesis of h on s at x, compared with 1; ? never matches
  auto hits = [&](Expr s) { return let_("r", eval(H, s), ifz(v("r"), 0, eq(eval(pred(v("r")), v("x")), 1))); };
  const Expr cond1 = forall_in(v("seqs"), "tau", hits(concat(v("sigma"), v("tau"))));
  const Expr cond2 = forall_in(prim(PrimOp::SeqsBelow, {v("d"), v("sigma")}), "sp",
                               exists_in(v("seqs"), "tp", hits(concat(v("sp"), v("tp")))));
  const Expr q = exists_in(v("seqs"), "sigma", if_(cond1, cond2, 0));
  const Expr body = let_("d", fst(fst(v("z"))),
                         let_("x", snd(v("z")), let_("seqs", prim(PrimOp::EnumSeqs, {v("d"), snd(fst(v("z")))}), q)));
  return programs::build(body, "z");
}

/// G -> Psd for Bc: h'(D, t) = smn(Q, <D, min(t, cap)>).
inline Transformed g_to_psd_bc(const Learner& h, std::size_t cap = kG2PsdBcCap, Budget probe_budget = 100000) {
  using namespace dsl;
  using namespace detail;
  if (h.kind != OperatorKind::G) throw DomainError("g2psd-bc expects a G-learner");
  const ProgramIndex q = q_program(h);
  const Expr body = succ(prim(PrimOp::MkSmn, {lit(q.value), pair(fst(v("w")), min_(snd(v("w")), lit(Nat(cap))))}));
  Learner out{programs::build(body, "w"), OperatorKind::Psd, "g2psd-bc(" + name_of(h) + ")"};
  return {out, TransformReport{TransformKind::G2PsdBc, h.program, out.program, q, cap, probe_totality(h, probe_budget)}};
}

/// Td Bc -> Td Ex by minimal-element search.
inline Transformed td_bc_to_td_ex(const Learner& h) {
  using namespace dsl;
  using namespace detail;
  if (h.kind != OperatorKind::Td) throw DomainError("td-ex expects a Td-learner");
  const Expr H = lit(h.program.value);
  // least datum y with y in C_e and h(y) != ?; the search diverges if there is none
  const Expr y = mu("y", if_(eq(eval(v("e"), v("y")), 1), ifz(eval(H, succ(v("y"))), 1, 0), 1));
  const Expr body = let_("r", eval(H, v("c")), ifz(v("r"), 0, let_("e", pred(v("r")), eval(H, succ(y)))));
  Learner out{programs::build(body, "c"), OperatorKind::Td, "td-ex(" + name_of(h) + ")"};
  return {out, TransformReport{TransformKind::TdEx, h.program, out.program, ProgramIndex(), 0, {}}};
}

inline Transformed apply_transform(TransformKind k, const Learner& h) {
  switch (k) {
    case TransformKind::G2Psd: return g_to_psd(h);
    case TransformKind::It2Sd: return it_to_sd(h);
    case TransformKind::G2ItBc: return g_to_it_bc(h);
    case TransformKind::G2PsdBc: return g_to_psd_bc(h);
    case TransformKind::TdEx: return td_bc_to_td_ex(h);
  }
  throw DomainError("unknown transformation");
}

// ---------------------------------------------------------------------------
// Host-side oracles

/// min p(D, t) by brute force, or nullopt when p(D, t) is empty.
inline std::optional<SeqCode> min_p_set(const Learner& h, const FiniteSet& d, std::size_t t, Budget b) {
  auto p = p_set(h, d, t, b);
  if (p.empty()) return std::nullopt;
  return p.front();
}

/// Host evaluation of Q(x, a, (D, t)); nullopt when a needed evaluation runs out of budget.
class QOracle {
 public:
  QOracle(Learner h, Budget b) : h_(std::move(h)), b_(b) {}

  std::optional<bool> holds(const Nat& x, const Nat& a, const FiniteSet& d, std::size_t t) {
    const auto seqs = enum_bounded_seqs(d, t, std::max(t, kDefaultSeqCap));
    bool unknown = false;
    for (const auto& sigma : seqs) {
      std::optional<bool> c1 = true;
      for (const auto& tau : seqs) {
        auto hit = hits(seq_concat(sigma, tau), x, a);
        if (!hit) {
          c1 = std::nullopt;
          break;
        }
        if (!*hit) {
          c1 = false;
          break;
        }
      }
      if (!c1) {
        unknown = true;
        continue;
      }
      if (!*c1) continue;
      auto below = seqs_below(d, sigma.code(), 1u << 20);
      if (!below) return std::nullopt;
      std::optional<bool> c2 = true;
      for (const auto& sp : *below) {
        const SeqCode sp_code = SeqCode::from_code(sp);
        bool found = false, unk = false;
        for (const auto& tp : seqs) {
          auto hit = hits(seq_concat(sp_code, tp), x, a);
          if (!hit) {
            unk = true;
            continue;
          }
          if (*hit) {
            found = true;
            break;
          }
        }
        if (!found) {
          c2 = unk ? std::nullopt : std::optional<bool>(false);
          break;
        }
      }
      if (!c2) {
        unknown = true;
        continue;
      }
      if (*c2) return true;
    }
    if (unknown) return std::nullopt;
    return false;
  }

 private:
  // phi_{h(s)}(x) = a; a ? answer never matches
  std::optional<bool> hits(const SeqCode& s, const Nat& x, const Nat& a) {
    auto it = hyp_.find(s.code());
    if (it == hyp_.end()) {
      auto r = eval(h_.program, s.code(), b_);
      if (!r.is_halted()) return std::nullopt;
      it = hyp_.emplace(s.code(), r.value()).first;
    }
    if (it->second == 0) return false;
    auto r = eval(ProgramIndex(it->second - 1), x, b_);
    if (!r.is_halted()) return std::nullopt;
    return r.value() == a;
  }

  Learner h_;
  Budget b_;
  std::map<Nat, Nat> hyp_;
};

}  // namespace cind
