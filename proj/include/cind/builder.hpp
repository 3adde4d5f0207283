#pragma once

// Named-variable front end for writing object programs. Expressions are built
// with ordinary names and lowered to de Bruijn terms by `compile`.

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "cind/term.hpp"

namespace cind::dsl {

using Scope = std::vector<std::string>;

class Expr {
 public:
  using Fn = std::function<Term(const Scope&)>;
  Expr(Fn f) : fn_(std::make_shared<Fn>(std::move(f))) {}  // NOLINT
  Expr(int v) : Expr(Fn([v](const Scope&) { return t_lit(Nat(v)); })) {}  // NOLINT
  Expr(const Nat& v) : Expr(Fn([v](const Scope&) { return t_lit(v); })) {}  // NOLINT
  Expr(Term t) : Expr(Fn([t = std::move(t)](const Scope&) { return t; })) {}  // NOLINT (closed terms only)

  Term lower(const Scope& s) const { return (*fn_)(s); }

 private:
  std::shared_ptr<Fn> fn_;
};

inline Expr lit(const Nat& v) { return Expr(v); }

inline Expr v(std::string name) {
  return Expr::Fn([name = std::move(name)](const Scope& s) {
    for (std::size_t i = s.size(); i-- > 0;) {
      if (s[i] == name) return t_var(static_cast<std::uint32_t>(s.size() - 1 - i));
    }
    throw ParseError("unbound name in program builder: " + name);
  });
}

inline Scope extend(Scope s, std::initializer_list<std::string> names) {
  for (const auto& n : names) s.push_back(n);
  return s;
}

inline Expr succ(Expr a) {
  return Expr::Fn([a](const Scope& s) { return t_succ(a.lower(s)); });
}
inline Expr pred(Expr a) {
  return Expr::Fn([a](const Scope& s) { return t_pred(a.lower(s)); });
}
inline Expr fst(Expr a) {
  return Expr::Fn([a](const Scope& s) { return t_fst(a.lower(s)); });
}
inline Expr snd(Expr a) {
  return Expr::Fn([a](const Scope& s) { return t_snd(a.lower(s)); });
}
inline Expr pair(Expr a, Expr b) {
  return Expr::Fn([a, b](const Scope& s) { return t_pair(a.lower(s), b.lower(s)); });
}
/// ifz c then z else nz
inline Expr ifz(Expr c, Expr z, Expr nz) {
  return Expr::Fn([c, z, nz](const Scope& s) { return t_ifz(c.lower(s), z.lower(s), nz.lower(s)); });
}
/// Nonzero c selects `then`.
inline Expr if_(Expr c, Expr then, Expr otherwise) { return ifz(std::move(c), std::move(otherwise), std::move(then)); }

inline Expr lam(std::string x, Expr body) {
  return Expr::Fn([x = std::move(x), body](const Scope& s) { return t_lam(body.lower(extend(s, {x}))); });
}
/// Recursive abstraction: inside body, `self` names the function and `x` its argument.
inline Expr rec(std::string self, std::string x, Expr body) {
  return Expr::Fn([self = std::move(self), x = std::move(x), body](const Scope& s) {
    return t_rec(body.lower(extend(s, {self, x})));
  });
}
inline Expr app(Expr f, Expr a) {
  return Expr::Fn([f, a](const Scope& s) { return t_app(f.lower(s), a.lower(s)); });
}
inline Expr app(Expr f, Expr a, Expr b) { return app(app(std::move(f), std::move(a)), std::move(b)); }

inline Expr let_(std::string x, Expr value, Expr body) { return app(lam(std::move(x), std::move(body)), std::move(value)); }

inline Expr eval(Expr e, Expr x) {
  return Expr::Fn([e, x](const Scope& s) { return t_eval(e.lower(s), x.lower(s)); });
}
/// 0 when the run does not halt within t steps, value+1 otherwise.
inline Expr evalb(Expr e, Expr x, Expr t) {
  return Expr::Fn([e, x, t](const Scope& s) { return t_evalb(e.lower(s), x.lower(s), t.lower(s)); });
}
/// Least y with body(y) = 0.
inline Expr mu(std::string y, Expr body) {
  return Expr::Fn([y = std::move(y), body](const Scope& s) { return t_mu(body.lower(extend(s, {y}))); });
}

inline Expr prim(PrimOp op, std::vector<Expr> args) {
  return Expr::Fn([op, args = std::move(args)](const Scope& s) {
    std::vector<Term> ts;
    ts.reserve(args.size());
    for (const auto& a : args) ts.push_back(a.lower(s));
    return t_prim(op, std::move(ts));
  });
}

inline Expr add(Expr a, Expr b) { return prim(PrimOp::Add, {std::move(a), std::move(b)}); }
inline Expr monus(Expr a, Expr b) { return prim(PrimOp::Monus, {std::move(a), std::move(b)}); }
inline Expr eq(Expr a, Expr b) { return prim(PrimOp::Eq, {std::move(a), std::move(b)}); }
inline Expr lt(Expr a, Expr b) { return prim(PrimOp::Lt, {std::move(a), std::move(b)}); }
inline Expr not_(Expr a) { return ifz(std::move(a), 1, 0); }

/// Closed program with input named `input`.
inline Term compile(const std::string& input, const Expr& body) { return body.lower(Scope{input}); }

}  // namespace cind::dsl
