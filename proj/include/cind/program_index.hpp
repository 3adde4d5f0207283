#pragma once

// Program indices and the code-level constructors the evaluator itself needs
// (s-m-n, padding, finite-set characteristic indices).

#include <compare>
#include <optional>
#include <string>
#include <utility>

#include "cind/codes.hpp"
#include "cind/nat.hpp"
#include "cind/term.hpp"

namespace cind {

/// A natural number naming a program. Every natural decodes to some program.
struct ProgramIndex {
  Nat value = 0;

  ProgramIndex() = default;
  explicit ProgramIndex(Nat v) : value(std::move(v)) {}

  Term term() const { return decode(value); }
  std::string str() const { return value.str(); }

  friend bool operator==(const ProgramIndex&, const ProgramIndex&) = default;
  friend auto operator<=>(const ProgramIndex& a, const ProgramIndex& b) {
    if (a.value < b.value) return std::strong_ordering::less;
    if (b.value < a.value) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
};

inline ProgramIndex index_of(const Term& t) { return ProgramIndex(encode(t)); }

/// Raised by unpad on an index outside the range of pad.
class MalformedIndex : public DomainError {
 public:
  using DomainError::DomainError;
};

// smn(e, x) = program  y |-> eval(e, <x, y>).
inline Term smn_term(const Nat& e, const Nat& x) { return t_eval(t_lit(e), t_pair(t_lit(x), t_var(0))); }
inline ProgramIndex smn(const ProgramIndex& e, const Nat& x) { return index_of(smn_term(e.value, x)); }

// pad(e, n) = program  x |-> ifz 0 then eval(e, x) else n. The payload sits in
// the last field so pad(e, n) is strictly increasing in n.
inline Term pad_term(const Nat& e, const Nat& n) {
  return t_ifz(t_lit(0), t_eval(t_lit(e), t_var(0)), t_lit(n));
}
inline ProgramIndex pad(const ProgramIndex& e, const Nat& n) { return index_of(pad_term(e.value, n)); }

inline std::optional<std::pair<Nat, Nat>> try_unpad(const Nat& p) {
  auto t = try_decode(p);
  if (!t) return std::nullopt;
  const Node& n = **t;
  if (n.kind != Kind::IfZero) return std::nullopt;
  const Node& c = *n.kids[0];
  const Node& body = *n.kids[1];
  const Node& payload = *n.kids[2];
  if (c.kind != Kind::Lit || c.lit != 0) return std::nullopt;
  if (body.kind != Kind::Eval || body.kids[0]->kind != Kind::Lit || body.kids[1]->kind != Kind::Var ||
      body.kids[1]->index != 0)
    return std::nullopt;
  if (payload.kind != Kind::Lit) return std::nullopt;
  return std::make_pair(body.kids[0]->lit, payload.lit);
}

inline std::pair<ProgramIndex, Nat> unpad(const ProgramIndex& p) {
  auto r = try_unpad(p.value);
  if (!r) throw MalformedIndex("index " + p.str() + " is not in the range of pad");
  return {ProgramIndex(r->first), r->second};
}

/// Least pad(e, n) strictly above `bound`.
inline ProgramIndex pad_above(const ProgramIndex& e, const Nat& bound) {
  if (pad(e, 0).value > bound) return pad(e, 0);
  Nat lo = 0;  // pad(e, lo) <= bound
  Nat hi = 1;
  while (pad(e, hi).value <= bound) {
    lo = hi;
    hi *= 2;
  }
  while (hi - lo > 1) {
    Nat mid = (lo + hi) / 2;
    if (pad(e, mid).value <= bound) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return pad(e, hi);
}

// ind(D) = program  x |-> [x in D].
inline Term ind_term(const FiniteSet& d) { return t_prim(PrimOp::SetMember, {t_lit(encode_set(d)), t_var(0)}); }
inline ProgramIndex ind(const FiniteSet& d) { return index_of(ind_term(d)); }
inline ProgramIndex ind_from_code(const Nat& set_code) {
  return index_of(t_prim(PrimOp::SetMember, {t_lit(set_code), t_var(0)}));
}

}  // namespace cind
