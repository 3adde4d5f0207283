#pragma once

// Reference learners. Every learner here is a program in the numbering so it
// can be transformed and attacked; the host-side oracles describe the classes
// they are built for.

#include <string>
#include <vector>

#include "cind/builder.hpp"
#include "cind/criteria.hpp"
#include "cind/learner.hpp"
#include "cind/numbering.hpp"

namespace cind::zoo {

using namespace dsl;

namespace detail {
inline Expr conj(Expr e) { return succ(std::move(e)); }
inline Expr mk_ind(Expr set_code) { return prim(PrimOp::MkInd, {std::move(set_code)}); }
inline Expr mk_pad(Expr e, Expr n) { return prim(PrimOp::MkPad, {std::move(e), std::move(n)}); }
inline Expr mk_smn(Expr e, Expr x) { return prim(PrimOp::MkSmn, {std::move(e), std::move(x)}); }
inline Expr has(Expr set_code, Expr x) { return prim(PrimOp::SetMember, {std::move(set_code), std::move(x)}); }
inline Expr ind_empty() { return lit(ind({}).value); }
}  // namespace detail

/// Constant learner of any kind: every call answers `h`.
inline Learner constant(OperatorKind k, const Hypothesis& h, std::string name = {}) {
  return {programs::constant(h.code()), k, name.empty() ? "const-" + h.str() : std::move(name)};
}

// ---------------------------------------------------------------------------
// Sd

/// h(D) = ind(D).
inline Learner ind_learner() {
  using namespace detail;
  return {programs::build(conj(mk_ind(v("d"))), "d"), OperatorKind::Sd, "ind"};
}

/// h(D) = max D; ind(empty) on the empty set.
inline Learner max_learner() {
  using namespace detail;
  return {programs::build(if_(prim(PrimOp::ListLen, {v("d")}), conj(prim(PrimOp::SetMax, {v("d")})), conj(ind_empty())),
                          "d"),
          OperatorKind::Sd, "max"};
}

/// h(D) = ind(D) if 0 in D, else p.
inline Learner zero_marker(const ProgramIndex& p = programs::positives()) {
  using namespace detail;
  return {programs::build(if_(has(v("d"), 0), conj(mk_ind(v("d"))), conj(lit(p.value))), "d"), OperatorKind::Sd,
          "zero-marker"};
}

// ---------------------------------------------------------------------------
// Psd: the phase learner and its languages
//   L_e  = { <e, x> : x in N }
//   L'_e = { <e, x> : x <= phi_e(0) }

inline const ProgramIndex& phase_L_program() {
  static const ProgramIndex p = programs::build(eq(fst(snd(v("z"))), fst(v("z"))), "z");
  return p;
}
inline const ProgramIndex& phase_Lprime_program() {
  static const ProgramIndex p = programs::build(
      let_("e", fst(fst(v("z"))),
           let_("v", snd(fst(v("z"))),
                let_("y", snd(v("z")), if_(eq(fst(v("y")), v("e")), not_(lt(v("v"), snd(v("y")))), 0)))),
      "z");
  return p;
}

/// C-index of L_e.
inline ProgramIndex phase_p(const Nat& e) { return smn(phase_L_program(), e); }
/// C-index of L'_e when phi_e(0) = v.
inline ProgramIndex phase_p_prime(const Nat& e, const Nat& v) { return smn(phase_Lprime_program(), pair(e, v)); }

/// h(D, t) = ind(empty) on empty D; with e = pi1(min D): p(e) while Phi_e(0) > t,
/// p'(e, phi_e(0)) afterwards.
inline Learner phase_learner() {
  using namespace detail;
  const Expr body = let_(
      "d", fst(v("w")),
      let_("t", snd(v("w")),
           ifz(prim(PrimOp::ListLen, {v("d")}), conj(ind_empty()),
               let_("e", fst(prim(PrimOp::SetMin, {v("d")})),
                    let_("r", evalb(v("e"), 0, v("t")),
                         ifz(v("r"), conj(mk_smn(lit(phase_L_program().value), v("e"))),
                             conj(mk_smn(lit(phase_Lprime_program().value), pair(v("e"), pred(v("r")))))))))));
  return {programs::build(body, "w"), OperatorKind::Psd, "phase"};
}

inline LanguageOracle phase_L(const Nat& e, std::size_t probes = 8) {
  std::vector<Nat> extra;
  for (std::size_t x = 0; x < probes; ++x) {
    extra.push_back(pair(e, Nat(x)));
    extra.push_back(pair(e + 1, Nat(x)));
  }
  return LanguageOracle::predicate([e](const Nat& z) { return pi1(z) == e; }, "L_" + e.str()).with_probes(extra);
}

inline LanguageOracle phase_L_prime(const Nat& e, const Nat& v, std::size_t probes = 8) {
  std::vector<Nat> extra;
  for (std::size_t x = 0; x < probes; ++x) {
    extra.push_back(pair(e, Nat(x)));
    extra.push_back(pair(e + 1, Nat(x)));
  }
  return LanguageOracle::predicate([e, v](const Nat& z) { return pi1(z) == e && pi2(z) <= v; },
                                   "L'_" + e.str())
      .with_probes(extra);
}

// ---------------------------------------------------------------------------
// Td

/// h(#) = ?, h(<x, y>) = x.
inline Learner pair_component() {
  return {programs::build(ifz(v("c"), 0, succ(fst(pred(v("c"))))), "c"), OperatorKind::Td, "pair-component"};
}

/// h(#) = ?, h(x) = x: every datum is its own conjecture.
inline Learner td_identity() { return {programs::identity(), OperatorKind::Td, "td-identity"}; }

/// h(#) = ?, h(x) = ind({x}).
inline Learner td_singleton() {
  using namespace detail;
  return {programs::build(ifz(v("c"), 0, conj(mk_ind(prim(PrimOp::SetInsert, {lit(0), pred(v("c"))})))), "c"),
          OperatorKind::Td, "td-singleton"};
}

/// h(#) = ?, h(x) = pad(ind(L), x): Bc-learns {L} with a fresh index per datum.
inline Learner td_pad_churn(const FiniteSet& l) {
  using namespace detail;
  return {programs::build(ifz(v("c"), 0, conj(mk_pad(lit(ind(l).value), pred(v("c"))))), "c"), OperatorKind::Td,
          "td-pad-churn" + set_str(l)};
}

// ---------------------------------------------------------------------------
// It. Inputs: 0 for the initial call, <prev hypothesis code, symbol code> + 1.

/// Conjectures the largest datum seen; ? before any datum.
inline Learner it_max() {
  return {programs::build(ifz(v("w"), 0,
                              let_("p", fst(pred(v("w"))),
                                   let_("s", snd(pred(v("w"))),
                                        ifz(v("s"), v("p"),
                                            ifz(v("p"), v("s"), if_(lt(v("p"), v("s")), v("s"), v("p"))))))),
                          "w"),
          OperatorKind::It, "it-max"};
}

namespace detail {
// State pad(hyp(D), code D) carried as the hypothesis; hyp maps a set code to an index.
inline Learner it_set_memory(const std::function<Expr(Expr)>& hyp, std::string name) {
  const Expr init = conj(mk_pad(hyp(lit(0)), 0));
  const Expr step = let_(
      "p", fst(pred(v("w"))),
      let_("s", snd(pred(v("w"))),
           ifz(v("s"), v("p"),
               let_("d", prim(PrimOp::SetInsert, {prim(PrimOp::UnpadPayload, {pred(v("p"))}), pred(v("s"))}),
                    conj(mk_pad(hyp(v("d")), v("d")))))));
  return {programs::build(ifz(v("w"), init, step), "w"), OperatorKind::It, std::move(name)};
}
}  // namespace detail

/// Remembers the content in the pad payload and conjectures ind of it.
inline Learner it_ind_memory() {
  return detail::it_set_memory([](Expr d) { return detail::mk_ind(std::move(d)); }, "it-ind-memory");
}

/// The It form of the zero-marker: ind(D) once 0 is seen, p before.
inline Learner it_zero_marker(const ProgramIndex& p = programs::positives()) {
  return detail::it_set_memory(
      [p](Expr d) { return if_(detail::has(d, 0), detail::mk_ind(d), lit(p.value)); }, "it-zero-marker");
}

// ---------------------------------------------------------------------------
// C-index to W-index

/// w(c)(x) = 0 if phi_c(x) = 1, diverges otherwise: W_{w(c)} = C_c.
inline const ProgramIndex& c_to_w_program() {
  static const ProgramIndex p = programs::build(
      ifz(eq(eval(fst(v("z")), snd(v("z"))), 1), Expr(divergent_term()), 0), "z");
  return p;
}

/// Same learner with every conjecture c replaced by w(c). Not for It learners,
/// whose hypotheses are fed back.
inline Learner with_w_indices(const Learner& h) {
  using namespace detail;
  if (h.kind == OperatorKind::It) throw DomainError("with_w_indices does not apply to It learners");
  const Expr body = let_("r", eval(lit(h.program.value), v("i")),
                         ifz(v("r"), 0, conj(mk_smn(lit(c_to_w_program().value), pred(v("r"))))));
  return {programs::build(body, "i"), h.kind, "w(" + h.name + ")"};
}

// ---------------------------------------------------------------------------
// G

/// h(sigma) = pad(ind(content sigma), code sigma): Bc-learns every finite
/// language, never converging syntactically on a growing text.
inline Learner g_pad_churn() {
  using namespace detail;
  return {programs::build(conj(mk_pad(mk_ind(prim(PrimOp::SeqContent, {v("s")})), v("s"))), "s"), OperatorKind::G,
          "g-pad-churn"};
}

/// h(sigma) = ind(content of sigma without its last symbol).
inline Learner g_lagged() {
  using namespace detail;
  const Expr len = prim(PrimOp::ListLen, {v("s")});
  // rebuild the prefix of length len - 1
  const Expr init = app(rec("loop", "ka",
                            let_("k", fst(v("ka")),
                                 if_(lt(succ(v("k")), len),
                                     app(v("loop"), pair(succ(v("k")), prim(PrimOp::ListSnoc, {snd(v("ka")),
                                                                                              prim(PrimOp::ListAt, {v("s"), v("k")})}))),
                                     snd(v("ka"))))),
                        pair(lit(0), lit(0)));
  return {programs::build(conj(mk_ind(prim(PrimOp::SeqContent, {init}))), "s"), OperatorKind::G, "g-lagged"};
}

}  // namespace cind::zoo
