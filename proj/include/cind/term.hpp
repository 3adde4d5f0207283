#pragma once

// The term language that carries the numbering. Programs are closed terms with
// one free variable (de Bruijn index 0, the input). A program's index is the
// list code of [tag, fields...] where sub-terms contribute their own codes.

#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "cind/codes.hpp"
#include "cind/nat.hpp"

namespace cind {

enum class Kind : std::uint8_t {
  Lit = 0,
  Var = 1,
  Succ = 2,
  Pred = 3,
  IfZero = 4,
  Pair = 5,
  Fst = 6,
  Snd = 7,
  Lam = 8,
  Rec = 9,  // self-referential abstraction: body sees Var 0 = argument, Var 1 = itself
  App = 10,
  Eval = 11,         // run program named by e on x
  EvalBounded = 12,  // 0 if program e does not halt on x within t steps, else value+1
  Mu = 13,           // least y with body(y) = 0
  Prim = 14,
};

enum class PrimOp : std::uint8_t {
  Add,
  Monus,
  Mul,
  Div,
  Mod,
  Eq,
  Lt,
  ListLen,
  ListAt,
  ListSnoc,
  ListConcat,
  SeqContent,
  SetMember,
  SetInsert,
  SetMax,
  SetMin,
  SetUnion,
  SortSharp,
  EnumSeqs,
  SeqsBelow,
  MkSmn,
  MkPad,
  PadAbove,
  MkInd,
  UnpadIndex,
  UnpadPayload,
  Count_
};

struct PrimInfo {
  std::string_view name;
  std::size_t arity;
};

inline constexpr std::array<PrimInfo, static_cast<std::size_t>(PrimOp::Count_)> kPrims{{
    {"add", 2},          {"monus", 2},       {"mul", 2},         {"div", 2},       {"mod", 2},
    {"eq", 2},           {"lt", 2},          {"list-len", 1},    {"list-at", 2},   {"list-snoc", 2},
    {"list-concat", 2},  {"seq-content", 1}, {"set-member", 2},  {"set-insert", 2}, {"set-max", 1},
    {"set-min", 1},      {"set-union", 2},   {"sort-sharp", 1},  {"enum-seqs", 2}, {"seqs-below", 2},
    {"mk-smn", 2},       {"mk-pad", 2},      {"pad-above", 2},   {"mk-ind", 1},    {"unpad-index", 1},
    {"unpad-payload", 1},
}};

inline const PrimInfo& prim_info(PrimOp op) { return kPrims[static_cast<std::size_t>(op)]; }

struct Node;
using Term = std::shared_ptr<const Node>;

struct Node {
  Kind kind;
  Nat lit;                 // Lit payload
  std::uint32_t index = 0; // Var index
  PrimOp op = PrimOp::Add; // Prim operator
  std::vector<Term> kids;
  Nat code;                // this term's index, computed at construction
};

namespace detail {

inline std::size_t arity(Kind k) {
  switch (k) {
    case Kind::Lit:
    case Kind::Var:
      return 0;
    case Kind::Succ:
    case Kind::Pred:
    case Kind::Fst:
    case Kind::Snd:
    case Kind::Lam:
    case Kind::Rec:
    case Kind::Mu:
      return 1;
    case Kind::Pair:
    case Kind::App:
    case Kind::Eval:
      return 2;
    case Kind::IfZero:
    case Kind::EvalBounded:
      return 3;
    case Kind::Prim:
      return 0;
  }
  return 0;
}

inline Term make(Kind k, Nat lit, std::uint32_t index, PrimOp op, std::vector<Term> kids) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->lit = std::move(lit);
  n->index = index;
  n->op = op;
  n->kids = std::move(kids);
  std::vector<Nat> fields{Nat(static_cast<unsigned>(k))};
  if (k == Kind::Lit) fields.push_back(n->lit);
  if (k == Kind::Var) fields.push_back(Nat(n->index));
  if (k == Kind::Prim) fields.push_back(Nat(static_cast<unsigned>(op)));
  for (const auto& c : n->kids) fields.push_back(c->code);
  n->code = encode_list(fields);
  return n;
}

}  // namespace detail

// Constructors.
inline Term t_lit(Nat v) { return detail::make(Kind::Lit, std::move(v), 0, PrimOp::Add, {}); }
inline Term t_var(std::uint32_t i) { return detail::make(Kind::Var, 0, i, PrimOp::Add, {}); }
inline Term t_succ(Term a) { return detail::make(Kind::Succ, 0, 0, PrimOp::Add, {std::move(a)}); }
inline Term t_pred(Term a) { return detail::make(Kind::Pred, 0, 0, PrimOp::Add, {std::move(a)}); }
inline Term t_ifz(Term c, Term z, Term nz) {
  return detail::make(Kind::IfZero, 0, 0, PrimOp::Add, {std::move(c), std::move(z), std::move(nz)});
}
inline Term t_pair(Term a, Term b) { return detail::make(Kind::Pair, 0, 0, PrimOp::Add, {std::move(a), std::move(b)}); }
inline Term t_fst(Term a) { return detail::make(Kind::Fst, 0, 0, PrimOp::Add, {std::move(a)}); }
inline Term t_snd(Term a) { return detail::make(Kind::Snd, 0, 0, PrimOp::Add, {std::move(a)}); }
inline Term t_lam(Term body) { return detail::make(Kind::Lam, 0, 0, PrimOp::Add, {std::move(body)}); }
inline Term t_rec(Term body) { return detail::make(Kind::Rec, 0, 0, PrimOp::Add, {std::move(body)}); }
inline Term t_app(Term f, Term a) { return detail::make(Kind::App, 0, 0, PrimOp::Add, {std::move(f), std::move(a)}); }
inline Term t_eval(Term e, Term x) { return detail::make(Kind::Eval, 0, 0, PrimOp::Add, {std::move(e), std::move(x)}); }
inline Term t_evalb(Term e, Term x, Term t) {
  return detail::make(Kind::EvalBounded, 0, 0, PrimOp::Add, {std::move(e), std::move(x), std::move(t)});
}
inline Term t_mu(Term body) { return detail::make(Kind::Mu, 0, 0, PrimOp::Add, {std::move(body)}); }
inline Term t_prim(PrimOp op, std::vector<Term> args) {
  if (args.size() != prim_info(op).arity) throw DomainError("wrong arity for " + std::string(prim_info(op).name));
  return detail::make(Kind::Prim, 0, 0, op, std::move(args));
}

/// The canonical everywhere-divergent program: mu y. 1.
inline Term divergent_term() {
  static const Term t = t_mu(t_lit(1));
  return t;
}

inline bool term_equal(const Term& a, const Term& b) { return a == b || a->code == b->code; }

inline const Nat& encode(const Term& t) { return t->code; }

namespace detail {

inline constexpr std::size_t kMaxDecodeDepth = 4096;

inline std::optional<Term> decode_rec(const Nat& code, std::size_t depth) {
  if (depth > kMaxDecodeDepth) return std::nullopt;
  auto d = decode_list(code);
  if (!d.valid || d.items.empty()) return std::nullopt;
  const auto& f = d.items;
  if (f[0] > 14) return std::nullopt;
  const auto kind = static_cast<Kind>(f[0].convert_to<unsigned>());
  std::size_t first_kid = 1;
  Nat lit = 0;
  std::uint32_t index = 0;
  PrimOp op = PrimOp::Add;
  std::size_t nkids = arity(kind);
  if (kind == Kind::Lit) {
    if (f.size() != 2) return std::nullopt;
    lit = f[1];
    first_kid = 2;
  } else if (kind == Kind::Var) {
    if (f.size() != 2 || f[1] > 0xFFFFFFFFU) return std::nullopt;
    index = f[1].convert_to<std::uint32_t>();
    first_kid = 2;
  } else if (kind == Kind::Prim) {
    if (f.size() < 2 || f[1] >= static_cast<unsigned>(PrimOp::Count_)) return std::nullopt;
    op = static_cast<PrimOp>(f[1].convert_to<unsigned>());
    nkids = prim_info(op).arity;
    first_kid = 2;
  }
  if (f.size() != first_kid + nkids) return std::nullopt;
  std::vector<Term> kids;
  kids.reserve(nkids);
  for (std::size_t i = first_kid; i < f.size(); ++i) {
    auto k = decode_rec(f[i], depth + 1);
    if (!k) return std::nullopt;
    kids.push_back(std::move(*k));
  }
  return make(kind, std::move(lit), index, op, std::move(kids));
}

}  // namespace detail

/// Strict decoding: nullopt when `code` is not the code of any term.
inline std::optional<Term> try_decode(const Nat& code) { return detail::decode_rec(code, 0); }

/// Total decoding: invalid codes name the everywhere-divergent program.
inline Term decode(const Nat& code) {
  auto t = try_decode(code);
  return t ? *t : divergent_term();
}

// ---------------------------------------------------------------------------
// s-expression text form.

inline std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Lit: return "lit";
    case Kind::Var: return "var";
    case Kind::Succ: return "succ";
    case Kind::Pred: return "pred";
    case Kind::IfZero: return "ifz";
    case Kind::Pair: return "pair";
    case Kind::Fst: return "fst";
    case Kind::Snd: return "snd";
    case Kind::Lam: return "lam";
    case Kind::Rec: return "rec";
    case Kind::App: return "app";
    case Kind::Eval: return "eval";
    case Kind::EvalBounded: return "evalb";
    case Kind::Mu: return "mu";
    case Kind::Prim: return "prim";
  }
  return "?";
}

inline void write_sexpr(std::ostream& os, const Term& t) {
  os << '(' << kind_name(t->kind);
  if (t->kind == Kind::Lit) os << ' ' << t->lit;
  if (t->kind == Kind::Var) os << ' ' << t->index;
  if (t->kind == Kind::Prim) os << ' ' << prim_info(t->op).name;
  for (const auto& k : t->kids) {
    os << ' ';
    write_sexpr(os, k);
  }
  os << ')';
}

inline std::string to_sexpr(const Term& t) {
  std::ostringstream os;
  write_sexpr(os, t);
  return os.str();
}

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

class SexprParser {
 public:
  explicit SexprParser(std::string_view s) : s_(s) {}

  Term parse_all() {
    Term t = parse();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("s-expression: " + msg + " at offset " + std::to_string(pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  std::string atom() {
    skip_ws();
    std::size_t b = pos_;
    while (pos_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[pos_])) && s_[pos_] != '(' &&
           s_[pos_] != ')')
      ++pos_;
    if (b == pos_) fail("expected atom");
    return std::string(s_.substr(b, pos_ - b));
  }
  void expect(char c) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  Nat number() {
    auto a = atom();
    try {
      return parse_nat(a);
    } catch (const DomainError&) {
      fail("expected natural, got '" + a + "'");
    }
  }

  Term parse() {
    expect('(');
    const std::string head = atom();
    Term out;
    auto kid = [&] { return parse(); };
    if (head == "lit") {
      out = t_lit(number());
    } else if (head == "var") {
      Nat i = number();
      if (i > 0xFFFFFFFFU) fail("variable index too large");
      out = t_var(i.convert_to<std::uint32_t>());
    } else if (head == "succ") {
      out = t_succ(kid());
    } else if (head == "pred") {
      out = t_pred(kid());
    } else if (head == "ifz") {
      auto c = kid();
      auto z = kid();
      out = t_ifz(c, z, kid());
    } else if (head == "pair") {
      auto a = kid();
      out = t_pair(a, kid());
    } else if (head == "fst") {
      out = t_fst(kid());
    } else if (head == "snd") {
      out = t_snd(kid());
    } else if (head == "lam") {
      out = t_lam(kid());
    } else if (head == "rec") {
      out = t_rec(kid());
    } else if (head == "app") {
      auto f = kid();
      out = t_app(f, kid());
    } else if (head == "eval") {
      auto e = kid();
      out = t_eval(e, kid());
    } else if (head == "evalb") {
      auto e = kid();
      auto x = kid();
      out = t_evalb(e, x, kid());
    } else if (head == "mu") {
      out = t_mu(kid());
    } else if (head == "prim") {
      const std::string name = atom();
      std::optional<PrimOp> op;
      for (std::size_t i = 0; i < kPrims.size(); ++i) {
        if (kPrims[i].name == name) op = static_cast<PrimOp>(i);
      }
      if (!op) fail("unknown primitive '" + name + "'");
      std::vector<Term> args;
      for (std::size_t i = 0; i < prim_info(*op).arity; ++i) args.push_back(kid());
      out = t_prim(*op, std::move(args));
    } else {
      fail("unknown form '" + head + "'");
    }
    expect(')');
    return out;
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Term parse_sexpr(std::string_view s) { return detail::SexprParser(s).parse_all(); }

}  // namespace cind
