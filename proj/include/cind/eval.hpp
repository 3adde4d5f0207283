#pragma once

// Deterministic step-counting evaluator (the Blum measure of the numbering).
//
// Evaluation is call-by-value on an explicit continuation stack, so object
// programs may recurse as deeply as their budget allows. Every entry into a
// term node costs one step; Eval costs the steps of the sub-evaluation plus
// one; enumeration primitives additionally cost one step per produced item.
// A computation that gets stuck (applying a number, projecting a closure,
// returning a closure from a program, an unbound variable, ...) diverges.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cind/codes.hpp"
#include "cind/nat.hpp"
#include "cind/program_index.hpp"
#include "cind/term.hpp"

namespace cind {

using Budget = std::uint64_t;

class EvalOutcome {
 public:
  static EvalOutcome halted(Nat v, Budget steps) { return EvalOutcome(true, std::move(v), steps, 0); }
  static EvalOutcome out_of_budget(Budget budget) { return EvalOutcome(false, 0, 0, budget); }

  bool is_halted() const { return halted_; }
  const Nat& value() const {
    if (!halted_) throw DomainError("no value: evaluation ran out of budget");
    return value_;
  }
  Budget steps() const { return steps_; }
  Budget budget() const { return budget_; }

  friend bool operator==(const EvalOutcome&, const EvalOutcome&) = default;

 private:
  EvalOutcome(bool h, Nat v, Budget s, Budget b) : halted_(h), value_(std::move(v)), steps_(s), budget_(b) {}
  bool halted_;
  Nat value_;
  Budget steps_;
  Budget budget_;
};

namespace detail {

struct Closure;
struct Value {
  Nat n;
  std::shared_ptr<const Closure> fn;
  bool is_nat() const { return !fn; }
};

struct EnvNode;
using Env = std::shared_ptr<const EnvNode>;
struct EnvNode {
  Value v;
  Env next;
};

struct Closure {
  const Node* body;
  Env env;
  bool rec;
  Term owner;  // keeps `body` alive
};

inline Env env_push(Env e, Value v) { return std::make_shared<const EnvNode>(EnvNode{std::move(v), std::move(e)}); }

/// Per-thread caches: decoded programs and decoded lists. Pure memoization.
struct Caches {
  std::unordered_map<Nat, Term, NatHash> programs;
  std::unordered_map<Nat, std::shared_ptr<const std::vector<Nat>>, NatHash> lists;

  Term program(const Nat& code) {
    auto it = programs.find(code);
    if (it != programs.end()) return it->second;
    if (programs.size() > 200000) programs.clear();
    Term t = decode(code);
    programs.emplace(code, t);
    return t;
  }

  std::shared_ptr<const std::vector<Nat>> list(const Nat& code) {
    auto it = lists.find(code);
    if (it != lists.end()) return it->second;
    if (lists.size() > 20000) lists.clear();
    auto v = std::make_shared<const std::vector<Nat>>(decode_list(code).items);
    lists.emplace(code, v);
    return v;
  }
};

inline Caches& caches() {
  thread_local Caches c;
  return c;
}

enum class FK : std::uint8_t {
  Succ,
  Pred,
  Fst,
  Snd,
  IfZ,
  Pair1,
  Pair2,
  App1,
  App2,
  Eval1,
  Eval2,
  EvalB1,
  EvalB2,
  EvalB3,
  EvalBRet,
  ProgRet,
  Mu,
  Prim,
};

struct Frame {
  FK kind;
  const Node* node = nullptr;
  Env env;
  Value v1, v2;
  Nat k;
  std::vector<Value> args;
};

struct Region {
  Budget limit;       // own absolute step limit (start + t)
  std::size_t depth;  // continuation-stack size at entry, the EvalBRet frame sits here
};

class Machine {
 public:
  explicit Machine(Budget budget) : budget_(budget) {}

  EvalOutcome run(const Nat& program, const Nat& input) {
    Term prog = caches().program(program);
    pins_.push_back(prog);
    node_ = prog.get();
    env_ = env_push(nullptr, Value{input, nullptr});
    evaluating_ = true;
    while (true) {
      if (status_ != Status::Running) break;
      if (evaluating_) {
        step_eval();
      } else {
        if (stack_.empty()) {
          if (!val_.is_nat()) {
            stuck();
            continue;
          }
          return EvalOutcome::halted(val_.n, steps_);
        }
        step_return();
      }
    }
    return EvalOutcome::out_of_budget(budget_);
  }

 private:
  enum class Status { Running, OutOfBudget };

  Budget current_limit() const {
    Budget l = budget_;
    for (const auto& r : regions_) l = std::min(l, r.limit);
    return l;
  }

  // Called whenever steps_ may have passed a limit. Returns false when control
  // was transferred (budget exhausted or a bounded sub-evaluation abandoned).
  bool check_limits() {
    if (steps_ <= cur_limit_) return true;
    // Outermost region whose own limit was passed fails: it did not halt
    // within its allotment, so it is charged exactly that allotment.
    for (std::size_t i = 0; i < regions_.size(); ++i) {
      if (regions_[i].limit < steps_ && regions_[i].limit <= budget_) {
        steps_ = regions_[i].limit;
        stack_.resize(regions_[i].depth);
        regions_.resize(i);
        cur_limit_ = current_limit();
        ret(Value{0, nullptr});
        return false;
      }
    }
    status_ = Status::OutOfBudget;
    return false;
  }

  bool charge(Budget n) {
    if (n > budget_ - std::min(steps_, budget_)) {
      steps_ = budget_ + 1;
    } else {
      steps_ += n;
    }
    return check_limits();
  }

  void stuck() {
    if (regions_.empty() || regions_.back().limit >= budget_) {
      status_ = Status::OutOfBudget;
      return;
    }
    // Divergence inside a bounded sub-evaluation consumes its allotment.
    steps_ = std::max(steps_, regions_.back().limit) + 1;
    check_limits();
  }

  void ret(Value v) {
    val_ = std::move(v);
    evaluating_ = false;
  }
  void eval(const Node* n, Env e) {
    node_ = n;
    env_ = std::move(e);
    evaluating_ = true;
  }
  void push(FK k, const Node* n, Env e) {
    Frame f;
    f.kind = k;
    f.node = n;
    f.env = std::move(e);
    stack_.push_back(std::move(f));
  }

  void step_eval() {
    if (!charge(1)) return;
    const Node* n = node_;
    switch (n->kind) {
      case Kind::Lit:
        ret(Value{n->lit, nullptr});
        return;
      case Kind::Var: {
        const EnvNode* e = env_.get();
        for (std::uint32_t i = 0; e && i < n->index; ++i) e = e->next.get();
        if (!e) return stuck();
        ret(e->v);
        return;
      }
      case Kind::Succ:
        push(FK::Succ, n, nullptr);
        return eval(n->kids[0].get(), env_);
      case Kind::Pred:
        push(FK::Pred, n, nullptr);
        return eval(n->kids[0].get(), env_);
      case Kind::Fst:
        push(FK::Fst, n, nullptr);
        return eval(n->kids[0].get(), env_);
      case Kind::Snd:
        push(FK::Snd, n, nullptr);
        return eval(n->kids[0].get(), env_);
      case Kind::IfZero:
        push(FK::IfZ, n, env_);
        return eval(n->kids[0].get(), env_);
      case Kind::Pair:
        push(FK::Pair1, n, env_);
        return eval(n->kids[0].get(), env_);
      case Kind::Lam:
      case Kind::Rec: {
        auto c = std::make_shared<const Closure>(Closure{n->kids[0].get(), env_, n->kind == Kind::Rec, nullptr});
        ret(Value{0, std::move(c)});
        return;
      }
      case Kind::App:
        push(FK::App1, n, env_);
        return eval(n->kids[0].get(), env_);
      case Kind::Eval:
        push(FK::Eval1, n, env_);
        return eval(n->kids[0].get(), env_);
      case Kind::EvalBounded:
        push(FK::EvalB1, n, env_);
        return eval(n->kids[0].get(), env_);
      case Kind::Mu: {
        push(FK::Mu, n, env_);
        stack_.back().k = 0;
        return eval(n->kids[0].get(), env_push(env_, Value{0, nullptr}));
      }
      case Kind::Prim:
        push(FK::Prim, n, env_);
        return eval(n->kids[0].get(), env_);
    }
  }

  void run_program(const Nat& code, const Nat& input) {
    Term prog = caches().program(code);
    const Node* body = prog.get();
    pins_.push_back(std::move(prog));
    eval(body, env_push(nullptr, Value{input, nullptr}));
  }

  void step_return() {
    Frame f = std::move(stack_.back());
    stack_.pop_back();
    const Node* n = f.node;
    switch (f.kind) {
      case FK::Succ:
        if (!val_.is_nat()) return stuck();
        return ret(Value{val_.n + 1, nullptr});
      case FK::Pred:
        if (!val_.is_nat()) return stuck();
        return ret(Value{val_.n == 0 ? Nat(0) : Nat(val_.n - 1), nullptr});
      case FK::Fst:
        if (!val_.is_nat()) return stuck();
        return ret(Value{pi1(val_.n), nullptr});
      case FK::Snd:
        if (!val_.is_nat()) return stuck();
        return ret(Value{pi2(val_.n), nullptr});
      case FK::IfZ:
        if (!val_.is_nat()) return stuck();
        return eval(val_.n == 0 ? n->kids[1].get() : n->kids[2].get(), f.env);
      case FK::Pair1:
        f.kind = FK::Pair2;
        f.v1 = std::move(val_);
        stack_.push_back(f);
        return eval(n->kids[1].get(), f.env);
      case FK::Pair2:
        if (!f.v1.is_nat() || !val_.is_nat()) return stuck();
        return ret(Value{pair(f.v1.n, val_.n), nullptr});
      case FK::App1:
        f.kind = FK::App2;
        f.v1 = std::move(val_);
        stack_.push_back(f);
        return eval(n->kids[1].get(), f.env);
      case FK::App2: {
        if (f.v1.is_nat()) return stuck();
        const auto& c = f.v1.fn;
        Env e = c->env;
        if (c->rec) e = env_push(std::move(e), f.v1);
        e = env_push(std::move(e), std::move(val_));
        return eval(c->body, std::move(e));
      }
      case FK::Eval1:
        f.kind = FK::Eval2;
        f.v1 = std::move(val_);
        stack_.push_back(f);
        return eval(n->kids[1].get(), f.env);
      case FK::Eval2:
        if (!f.v1.is_nat() || !val_.is_nat()) return stuck();
        push(FK::ProgRet, nullptr, nullptr);
        return run_program(f.v1.n, val_.n);
      case FK::ProgRet:
        if (!val_.is_nat()) return stuck();
        return ret(std::move(val_));
      case FK::EvalB1:
        f.kind = FK::EvalB2;
        f.v1 = std::move(val_);
        stack_.push_back(f);
        return eval(n->kids[1].get(), f.env);
      case FK::EvalB2:
        f.kind = FK::EvalB3;
        f.v2 = std::move(val_);
        stack_.push_back(f);
        return eval(n->kids[2].get(), f.env);
      case FK::EvalB3: {
        if (!f.v1.is_nat() || !f.v2.is_nat() || !val_.is_nat()) return stuck();
        Budget t = fits_u64(val_.n) ? val_.n.convert_to<Budget>() : std::numeric_limits<Budget>::max();
        Budget limit = t > std::numeric_limits<Budget>::max() - steps_ ? std::numeric_limits<Budget>::max()
                                                                          : steps_ + t;
        const std::size_t depth = stack_.size();
        push(FK::EvalBRet, nullptr, nullptr);
        regions_.push_back(Region{limit, depth});
        cur_limit_ = current_limit();
        return run_program(f.v1.n, f.v2.n);
      }
      case FK::EvalBRet:
        if (!val_.is_nat()) {
          // the region is still active; a stuck result diverges inside it
          stack_.push_back(std::move(f));
          return stuck();
        }
        regions_.pop_back();
        cur_limit_ = current_limit();
        return ret(Value{val_.n + 1, nullptr});
      case FK::Mu: {
        if (!val_.is_nat()) return stuck();
        if (val_.n == 0) return ret(Value{f.k, nullptr});
        f.k += 1;
        Env e = env_push(f.env, Value{f.k, nullptr});
        stack_.push_back(std::move(f));
        return eval(n->kids[0].get(), std::move(e));
      }
      case FK::Prim: {
        f.args.push_back(std::move(val_));
        const std::size_t ar = prim_info(n->op).arity;
        if (f.args.size() < ar) {
          const Node* next = n->kids[f.args.size()].get();
          Env e = f.env;
          stack_.push_back(std::move(f));
          return eval(next, std::move(e));
        }
        for (const auto& a : f.args) {
          if (!a.is_nat()) return stuck();
        }
        return apply_prim(n->op, f.args);
      }
    }
  }

  void apply_prim(PrimOp op, const std::vector<Value>& a);

  Budget budget_;
  Budget steps_ = 0;
  Budget cur_limit_ = std::numeric_limits<Budget>::max();
  Status status_ = Status::Running;
  bool evaluating_ = true;
  const Node* node_ = nullptr;
  Env env_;
  Value val_;
  std::vector<Frame> stack_;
  std::vector<Region> regions_;
  std::vector<Term> pins_;


 public:
  void init_limit() { cur_limit_ = budget_; }
};

inline Nat count_bounded_seqs(std::size_t alphabet, const Nat& t) {
  // sum_{k<=t} alphabet^k
  if (t > 64) return Nat(1) << 80;  // larger than any budget
  Nat total = 0, p = 1;
  const auto tt = t.convert_to<unsigned>();
  for (unsigned k = 0; k <= tt; ++k) {
    total += p;
    p *= alphabet;
  }
  return total;
}

inline void Machine::apply_prim(PrimOp op, const std::vector<Value>& a) {
  auto nat = [](Nat v) { return Value{std::move(v), nullptr}; };
  auto boolean = [](bool b) { return Value{b ? Nat(1) : Nat(0), nullptr}; };
  auto& C = caches();
  switch (op) {
    case PrimOp::Add:
      return ret(nat(a[0].n + a[1].n));
    case PrimOp::Monus:
      return ret(nat(a[0].n > a[1].n ? Nat(a[0].n - a[1].n) : Nat(0)));
    case PrimOp::Mul:
      return ret(nat(a[0].n * a[1].n));
    case PrimOp::Div:
      return ret(nat(a[1].n == 0 ? Nat(0) : Nat(a[0].n / a[1].n)));
    case PrimOp::Mod:
      return ret(nat(a[1].n == 0 ? Nat(0) : Nat(a[0].n % a[1].n)));
    case PrimOp::Eq:
      return ret(boolean(a[0].n == a[1].n));
    case PrimOp::Lt:
      return ret(boolean(a[0].n < a[1].n));
    case PrimOp::ListLen:
      return ret(nat(Nat(C.list(a[0].n)->size())));
    case PrimOp::ListAt: {
      auto l = C.list(a[0].n);
      if (a[1].n >= l->size()) return ret(nat(0));
      return ret(nat((*l)[a[1].n.convert_to<std::size_t>()]));
    }
    case PrimOp::ListSnoc: {
      std::vector<Nat> l = *C.list(a[0].n);
      l.push_back(a[1].n);
      return ret(nat(encode_list(l)));
    }
    case PrimOp::ListConcat: {
      std::vector<Nat> l = *C.list(a[0].n);
      const auto& r = *C.list(a[1].n);
      l.insert(l.end(), r.begin(), r.end());
      return ret(nat(encode_list(l)));
    }
    case PrimOp::SeqContent: {
      FiniteSet s;
      for (const auto& c : *C.list(a[0].n)) {
        if (c != 0) s.insert(c - 1);
      }
      return ret(nat(encode_set(s)));
    }
    case PrimOp::SetMember: {
      const auto& l = *C.list(a[0].n);
      return ret(boolean(std::find(l.begin(), l.end(), a[1].n) != l.end()));
    }
    case PrimOp::SetInsert: {
      auto l = *C.list(a[0].n);
      FiniteSet s(l.begin(), l.end());
      s.insert(a[1].n);
      return ret(nat(encode_set(s)));
    }
    case PrimOp::SetMax: {
      const auto& l = *C.list(a[0].n);
      if (l.empty()) return ret(nat(0));
      return ret(nat(*std::max_element(l.begin(), l.end())));
    }
    case PrimOp::SetMin: {
      const auto& l = *C.list(a[0].n);
      if (l.empty()) return ret(nat(0));
      return ret(nat(*std::min_element(l.begin(), l.end())));
    }
    case PrimOp::SetUnion: {
      const auto& l = *C.list(a[0].n);
      const auto& r = *C.list(a[1].n);
      FiniteSet s(l.begin(), l.end());
      s.insert(r.begin(), r.end());
      return ret(nat(encode_set(s)));
    }
    case PrimOp::SortSharp:
      return ret(nat(sort_sharp(decode_set(a[0].n)).code()));
    case PrimOp::EnumSeqs: {
      const FiniteSet d = decode_set(a[0].n);
      const Nat count = count_bounded_seqs(d.size() + 1, a[1].n);
      const Budget room = cur_limit_ >= steps_ ? cur_limit_ - steps_ : 0;
      if (count > room) {
        charge(room + 1);
        return;
      }
      if (!charge(count.convert_to<Budget>())) return;
      auto seqs = enum_bounded_seqs(d, a[1].n.convert_to<std::size_t>(), std::numeric_limits<std::size_t>::max());
      std::vector<Nat> codes;
      codes.reserve(seqs.size());
      for (const auto& s : seqs) codes.push_back(s.code());
      return ret(nat(encode_list(codes)));
    }
    case PrimOp::SeqsBelow: {
      const FiniteSet d = decode_set(a[0].n);
      const Budget room = cur_limit_ >= steps_ ? cur_limit_ - steps_ : 0;
      auto below = seqs_below(d, a[1].n, static_cast<std::size_t>(std::min<Budget>(room, 1u << 24)));
      if (!below || below->size() > room) {
        charge(room + 1);
        return;
      }
      if (!charge(below->size())) return;
      return ret(nat(encode_list(*below)));
    }
    case PrimOp::MkSmn:
      return ret(nat(smn(ProgramIndex(a[0].n), a[1].n).value));
    case PrimOp::MkPad:
      return ret(nat(pad(ProgramIndex(a[0].n), a[1].n).value));
    case PrimOp::PadAbove:
      return ret(nat(pad_above(ProgramIndex(a[0].n), a[1].n).value));
    case PrimOp::MkInd:
      return ret(nat(ind_from_code(encode_set(decode_set(a[0].n))).value));
    case PrimOp::UnpadIndex:
    case PrimOp::UnpadPayload: {
      auto r = try_unpad(a[0].n);
      if (!r) return stuck();
      return ret(nat(op == PrimOp::UnpadIndex ? r->first : r->second));
    }
    case PrimOp::Count_:
      break;
  }
  stuck();
}

}  // namespace detail

/// Runs program e on x for at most `budget` steps.
inline EvalOutcome eval(const ProgramIndex& e, const Nat& x, Budget budget) {
  detail::Machine m(budget);
  m.init_limit();
  return m.run(e.value, x);
}

enum class CDecision { Yes, No, OutOfBudget, NotBoolean };

inline std::string_view to_string(CDecision d) {
  switch (d) {
    case CDecision::Yes: return "yes";
    case CDecision::No: return "no";
    case CDecision::OutOfBudget: return "out-of-budget";
    case CDecision::NotBoolean: return "not-boolean";
  }
  return "?";
}

struct CResult {
  CDecision decision;
  std::optional<Nat> value;  // the halting value, when there is one
};

inline CResult decide_C_detail(const ProgramIndex& e, const Nat& x, Budget budget) {
  auto r = eval(e, x, budget);
  if (!r.is_halted()) return {CDecision::OutOfBudget, std::nullopt};
  if (r.value() == 1) return {CDecision::Yes, r.value()};
  if (r.value() == 0) return {CDecision::No, r.value()};
  return {CDecision::NotBoolean, r.value()};
}

inline CDecision decide_C(const ProgramIndex& e, const Nat& x, Budget budget) {
  return decide_C_detail(e, x, budget).decision;
}

/// Stage count K reached by the dovetailing schedule within `budget`: stage k
/// runs inputs 0..k for k steps each and is allotted k(k+1) steps.
inline std::uint64_t dovetail_stages(Budget budget) {
  std::uint64_t k = 0;
  Budget used = 0;
  while (true) {
    const Budget cost = (k + 1) * (k + 2);
    if (used + cost > budget) return k;
    used += cost;
    ++k;
  }
}

/// Elements of W_e discovered by dovetailing within `budget`.
inline FiniteSet enumerate_W(const ProgramIndex& e, Budget budget) {
  const std::uint64_t stages = dovetail_stages(budget);
  FiniteSet out;
  for (std::uint64_t x = 0; x <= stages && stages > 0; ++x) {
    if (eval(e, Nat(x), stages).is_halted()) out.insert(Nat(x));
  }
  return out;
}

}  // namespace cind
