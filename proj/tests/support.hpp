#pragma once

// Shared helpers for the test suites: random terms and small program pools.

#include <cstdint>
#include <random>
#include <vector>

#include "cind/builder.hpp"
#include "cind/criteria.hpp"
#include "cind/numbering.hpp"
#include "cind/term.hpp"
#include "cind/zoo.hpp"

namespace cind::testing {

using Rng = std::mt19937_64;

inline std::uint64_t below(Rng& rng, std::uint64_t n) { return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(rng); }

/// Arbitrary (possibly ill-formed or divergent) term with free variables < vars.
inline Term random_term(Rng& rng, int depth, std::uint32_t vars = 2) {
  const int kinds = depth <= 0 ? 2 : 15;
  switch (below(rng, kinds)) {
    case 0: return t_lit(Nat(below(rng, 50)));
    case 1: return t_var(static_cast<std::uint32_t>(below(rng, vars + 1)));
    case 2: return t_succ(random_term(rng, depth - 1, vars));
    case 3: return t_pred(random_term(rng, depth - 1, vars));
    case 4:
      return t_ifz(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars),
                   random_term(rng, depth - 1, vars));
    case 5: return t_pair(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars));
    case 6: return t_fst(random_term(rng, depth - 1, vars));
    case 7: return t_snd(random_term(rng, depth - 1, vars));
    case 8: return t_lam(random_term(rng, depth - 1, vars + 1));
    case 9: return t_rec(random_term(rng, depth - 1, vars + 2));
    case 10: return t_app(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars));
    case 11: return t_eval(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars));
    case 12:
      return t_evalb(random_term(rng, depth - 1, vars), random_term(rng, depth - 1, vars),
                     random_term(rng, depth - 1, vars));
    case 13: return t_mu(random_term(rng, depth - 1, vars + 1));
    default: {
      const auto op = static_cast<PrimOp>(below(rng, static_cast<std::uint64_t>(PrimOp::Count_)));
      std::vector<Term> args;
      for (std::size_t i = 0; i < prim_info(op).arity; ++i) args.push_back(random_term(rng, depth - 1, vars));
      return t_prim(op, std::move(args));
    }
  }
}

/// Closed, mostly halting programs over one input: arithmetic on the input,
/// pairs, conditionals, and a few that diverge on some inputs.
inline std::vector<ProgramIndex> program_pool() {
  using namespace dsl;
  std::vector<ProgramIndex> out;
  auto b = [&](const Expr& e) { out.push_back(programs::build(e)); };
  b(v("x"));
  b(succ(succ(v("x"))));
  b(fst(v("x")));
  b(snd(v("x")));
  b(add(fst(v("x")), snd(v("x"))));
  b(prim(PrimOp::Mul, {fst(v("x")), 3}));
  b(ifz(prim(PrimOp::Mod, {v("x"), 2}), v("x"), Expr(divergent_term())));
  b(lit(7));
  b(mu("y", monus(v("x"), v("y"))));  // returns x
  b(app(rec("self", "n", ifz(v("n"), 0, add(2, app(v("self"), pred(v("n")))))), prim(PrimOp::Mod, {v("x"), 20})));
  b(eq(fst(v("x")), snd(v("x"))));
  b(pair(snd(v("x")), fst(v("x"))));
  return out;
}

/// Every sequence over D u {#} of length <= t, built by host recursion.
inline std::vector<Seq> all_seqs(const FiniteSet& d, std::size_t t) {
  std::vector<Symbol> alphabet{Symbol::pause()};
  for (const auto& x : d) alphabet.push_back(Symbol::datum(x));
  std::vector<Seq> out{Seq{}};
  std::vector<Seq> layer{Seq{}};
  for (std::size_t len = 1; len <= t; ++len) {
    std::vector<Seq> next;
    for (const auto& s : layer) {
      for (const auto& a : alphabet) {
        Seq u = s;
        u.push_back(a);
        next.push_back(u);
      }
    }
    out.insert(out.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return out;
}

/// p(D, t) by the double loop over sigma and tau, answers of the G-learner g by direct evaluation.
inline std::vector<Nat> brute_p_set(const ProgramIndex& g, const FiniteSet& d, std::size_t t, Budget b) {
  std::map<Nat, Nat> memo;
  auto h = [&](const Seq& s) {
    const Nat c = encode_seq(s);
    auto it = memo.find(c);
    if (it != memo.end()) return it->second;
    auto r = eval(g, c, b);
    if (!r.is_halted()) throw DomainError("learner diverged in the oracle");
    return memo.emplace(c, r.value()).first->second;
  };
  const auto seqs = all_seqs(d, t);
  std::vector<Nat> out;
  for (const auto& sigma : seqs) {
    bool stable = true;
    for (const auto& tau : seqs) {
      Seq st = sigma;
      st.insert(st.end(), tau.begin(), tau.end());
      if (h(st) != h(sigma)) {
        stable = false;
        break;
      }
    }
    if (stable) out.push_back(encode_seq(sigma));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct DelayInstance {
  Learner h;
  LanguageOracle L;
  Text T;
  Text T2;
  Trace p;
  std::vector<std::size_t> r;
};

/// A random instance satisfying the preconditions of check_delayable_instance:
/// T periodic over a random finite D, T2 = T with pauses inserted early, r
/// shifting by the inserted pauses plus a random lag. The original trace is
/// Satisfied, so the check is never vacuous.
inline DelayInstance delay_instance(Rng& rng, Flavor f, std::size_t horizon, Budget b, std::size_t m) {
  for (;;) {
    FiniteSet d;
    const std::size_t k = 1 + below(rng, 3);
    while (d.size() < k) d.insert(Nat(below(rng, 6)));
    std::vector<Learner> pool;
    switch (f) {
      case Flavor::ExC:
      case Flavor::CInd: pool = {zoo::ind_learner(), star(zoo::ind_learner()), zoo::it_ind_memory()}; break;
      case Flavor::BcC: pool = {zoo::g_pad_churn(), zoo::ind_learner(), zoo::td_pad_churn(d)}; break;
      case Flavor::ExW: pool = {zoo::with_w_indices(zoo::ind_learner())}; break;
      case Flavor::BcW: pool = {zoo::with_w_indices(zoo::g_pad_churn()), zoo::with_w_indices(zoo::ind_learner())}; break;
    }
    const Learner h = pool[below(rng, pool.size())];
    Seq prefix;
    const std::size_t plen = below(rng, 5);
    for (std::size_t i = 0; i < plen; ++i) {
      prefix.push_back(below(rng, 3) == 0 ? Symbol::pause() : Symbol::datum(*std::next(d.begin(), below(rng, d.size()))));
    }
    Seq cycle;
    for (const auto& x : d) cycle.push_back(Symbol::datum(x));
    const Text T = periodic_text(prefix, cycle);
    // pauses inserted before positions in `at`
    std::vector<std::size_t> at;
    const std::size_t pauses = below(rng, 4);
    for (std::size_t i = 0; i < pauses; ++i) at.push_back(below(rng, 10));
    std::sort(at.begin(), at.end());
    const Seq base = T.prefix(horizon + 1);
    Seq s2;
    std::size_t next = 0;
    for (std::size_t i = 0; i < base.size(); ++i) {
      while (next < at.size() && at[next] == i) {
        s2.push_back(Symbol::pause());
        ++next;
      }
      s2.push_back(base[i]);
    }
    s2.erase(s2.begin() + static_cast<std::ptrdiff_t>(horizon + 1), s2.end());
    const Text T2 = explicit_text(s2, Symbol::pause());
    const std::size_t lag = below(rng, 3);
    std::vector<std::size_t> r(horizon + 1);
    for (std::size_t n = 0; n <= horizon; ++n) {
      // symbols of T inside T2[n]
      std::size_t from_t = 0, pos = 0, ins = 0;
      for (std::size_t i = 0; i < base.size() && pos < n; ++i) {
        while (ins < at.size() && at[ins] == i && pos < n) {
          ++pos;
          ++ins;
        }
        if (pos < n) {
          ++pos;
          ++from_t;
        }
      }
      r[n] = from_t > lag ? from_t - lag : 0;
    }
    const LanguageOracle L = LanguageOracle::finite(d);
    Trace p = run_trace(h, T, horizon, b);
    const Verdict v = check_restriction(f, p, L, m, b);
    if (!v.satisfied() || r[horizon] < v.n0) continue;
    if (content_of(T.prefix(horizon)) != content_of(T2.prefix(horizon))) continue;
    return {h, L, T, T2, std::move(p), std::move(r)};
  }
}

}  // namespace cind::testing
