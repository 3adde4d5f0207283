#pragma once

// Recursion theorems and a handful of stock programs on top of the evaluator.

#include <string>

#include "cind/builder.hpp"
#include "cind/eval.hpp"
#include "cind/program_index.hpp"

namespace cind {

namespace programs {

using namespace dsl;

inline ProgramIndex build(const Expr& body, const std::string& input = "x") { return index_of(compile(input, body)); }

inline ProgramIndex constant(const Nat& v) { return build(lit(v)); }
inline ProgramIndex identity() { return build(v("x")); }
inline ProgramIndex successor() { return build(succ(v("x"))); }
inline ProgramIndex divergent() { return index_of(divergent_term()); }
inline ProgramIndex first_component() { return build(fst(v("x"))); }

/// W-index of a finite set: halts (with 0) exactly on members.
inline ProgramIndex w_index(const FiniteSet& d) {
  return build(if_(prim(PrimOp::SetMember, {lit(encode_set(d)), v("x")}), 0, Expr(divergent_term())));
}

/// C-index of N+ = N \ {0}.
inline ProgramIndex positives() { return build(ifz(v("x"), 0, 1)); }
/// W-index of N+.
inline ProgramIndex positives_w() { return build(ifz(v("x"), Expr(divergent_term()), 0)); }

// Fixed-point combinator body: g(<<f, u>, y>) = eval(eval(f, eval(u, u)), y).
inline const ProgramIndex& krt_g() {
  static const ProgramIndex g = build(let_(
      "w", v("x"),
      let_("f", fst(fst(v("w"))),
           let_("u", snd(fst(v("w"))), eval(eval(v("f"), eval(v("u"), v("u"))), snd(v("w")))))));
  return g;
}

}  // namespace programs

/// Kleene fixed point: phi_e = phi_{phi_f(e)} whenever phi_f(e) converges.
inline ProgramIndex krt(const ProgramIndex& f) {
  using namespace dsl;
  const ProgramIndex& g = programs::krt_g();
  // v_f(u) = smn(g, <f, u>), so v_f(v_f) = smn(g, <f, v_f>) = e.
  const ProgramIndex vf = programs::build(prim(PrimOp::MkSmn, {lit(g.value), pair(lit(f.value), v("u"))}), "u");
  return smn(g, pair(f.value, vf.value));
}

/// Transform  e |-> program returning e on every input.
inline const ProgramIndex& quine_transform() {
  using namespace dsl;
  static const ProgramIndex f = [] {
    const ProgramIndex k = programs::first_component();
    return programs::build(prim(PrimOp::MkSmn, {lit(k.value), v("e")}), "e");
  }();
  return f;
}

/// Transform  e |-> program computing phi_e(x) + 1.
inline const ProgramIndex& diagonal_transform() {
  using namespace dsl;
  static const ProgramIndex f = [] {
    const ProgramIndex inc = programs::build(succ(eval(fst(v("w")), snd(v("w")))), "w");
    return programs::build(prim(PrimOp::MkSmn, {lit(inc.value), v("e")}), "e");
  }();
  return f;
}

struct OrtFamily {
  ProgramIndex a;     // a_idx: n |-> a(n), total and strictly increasing
  ProgramIndex body;  // phi_{a(n)}(x) = phi_body(<a_idx, <n, x>>)
};

/// Operator recursion: a computable, strictly increasing family a(n) with
/// phi_{a(n)}(x) = phi_body(<a_idx, <n, x>>).
inline OrtFamily ort(const ProgramIndex& body) {
  using namespace dsl;
  // base(i, n) = smn(call, <i, n>); call(<<i, n>, x>) = body(<i, <n, x>>)
  const ProgramIndex call = programs::build(
      eval(lit(body.value), pair(fst(fst(v("w"))), pair(snd(fst(v("w"))), snd(v("w"))))), "w");
  auto base = [&](Expr i, Expr n) { return prim(PrimOp::MkSmn, {lit(call.value), pair(i, n)}); };
  // mono(<i, n>): pad(base(i,0), 0) at n = 0, else least pad of base(i,n) above mono(i, n-1)
  const Expr loop = rec("self", "n",
                        ifz(v("n"), prim(PrimOp::MkPad, {base(v("i"), 0), 0}),
                            prim(PrimOp::PadAbove, {base(v("i"), v("n")), app(v("self"), pred(v("n")))})));
  const ProgramIndex mono =
      programs::build(let_("i", fst(v("w")), app(loop, snd(v("w")))), "w");
  // F(i) = smn(mono, i); a_idx = fixed point of F
  const ProgramIndex F = programs::build(prim(PrimOp::MkSmn, {lit(mono.value), v("i")}), "i");
  return OrtFamily{krt(F), body};
}

}  // namespace cind
