#pragma once

// Texts: total symbol streams N -> N u {#}, given explicitly, canonically for
// a language, by dovetailing an enumerator, by a program, or by combinators.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <memory>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "cind/codes.hpp"
#include "cind/eval.hpp"

namespace cind {

/// A queried text position could not be produced (budget exhausted or the
/// describing program misbehaved).
class TextError : public DomainError {
 public:
  using DomainError::DomainError;
};

class TextSource {
 public:
  virtual ~TextSource() = default;
  /// First n symbols.
  virtual Seq prefix(std::size_t n) const = 0;
  virtual std::string describe() const = 0;
};

class Text {
 public:
  explicit Text(std::shared_ptr<const TextSource> s) : src_(std::move(s)) {}

  Seq prefix(std::size_t n) const { return src_->prefix(n); }
  Symbol at(std::size_t i) const { return src_->prefix(i + 1).back(); }
  std::string describe() const { return src_->describe(); }
  const std::shared_ptr<const TextSource>& source() const { return src_; }

 private:
  std::shared_ptr<const TextSource> src_;
};

namespace detail {

inline std::string seq_list(const Seq& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i].str();
  }
  return out;
}

class ExplicitSource : public TextSource {
 public:
  ExplicitSource(Seq prefix, Seq cycle) : prefix_(std::move(prefix)), cycle_(std::move(cycle)) {
    if (cycle_.empty()) cycle_.push_back(Symbol::pause());
  }
  Seq prefix(std::size_t n) const override {
    Seq out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      out.push_back(i < prefix_.size() ? prefix_[i] : cycle_[(i - prefix_.size()) % cycle_.size()]);
    }
    return out;
  }
  std::string describe() const override {
    return "explicit([" + seq_list(prefix_) + "] then [" + seq_list(cycle_) + "]^inf)";
  }
  const Seq& head() const { return prefix_; }
  const Seq& cycle() const { return cycle_; }

 private:
  Seq prefix_;
  Seq cycle_;
};

class CIndexSource : public TextSource {
 public:
  CIndexSource(ProgramIndex e, Budget b) : e_(std::move(e)), budget_(b) {}
  Seq prefix(std::size_t n) const override {
    Seq out;
    for (std::size_t x = 0; x < n; ++x) {
      auto r = decide_C_detail(e_, Nat(x), budget_);
      switch (r.decision) {
        case CDecision::Yes: out.push_back(Symbol::datum(Nat(x))); break;
        case CDecision::No: out.push_back(Symbol::pause()); break;
        case CDecision::NotBoolean:
          throw TextError("canonical text: index " + e_.str() + " is not boolean at " + std::to_string(x));
        case CDecision::OutOfBudget:
          throw TextError("canonical text: budget exhausted deciding " + std::to_string(x));
      }
    }
    return out;
  }
  std::string describe() const override { return "canonical(C-index " + e_.str() + ")"; }

 private:
  ProgramIndex e_;
  Budget budget_;
};

class EnumeratorSource : public TextSource {
 public:
  EnumeratorSource(ProgramIndex e, Budget per_stage) : e_(std::move(e)), cap_(per_stage) {}
  // Position i is produced at stage i+1: inputs 0..i+1 run for i+1 steps each
  // (capped); the least newly found element not yet emitted is emitted, # if none.
  Seq prefix(std::size_t n) const override {
    Seq out;
    FiniteSet found, emitted;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t stage = i + 1;
      const Budget t = std::min<Budget>(stage, cap_);
      for (std::size_t x = 0; x <= stage; ++x) {
        if (!found.count(Nat(x)) && eval(e_, Nat(x), t).is_halted()) found.insert(Nat(x));
      }
      std::optional<Nat> next;
      for (const auto& x : found) {
        if (!emitted.count(x)) {
          next = x;
          break;
        }
      }
      if (next) {
        emitted.insert(*next);
        out.push_back(Symbol::datum(*next));
      } else {
        out.push_back(Symbol::pause());
      }
    }
    return out;
  }
  std::string describe() const override { return "enumerator(" + e_.str() + ")"; }

 private:
  ProgramIndex e_;
  Budget cap_;
};

class ProgramSource : public TextSource {
 public:
  ProgramSource(ProgramIndex e, Budget b) : e_(std::move(e)), budget_(b) {}
  Seq prefix(std::size_t n) const override {
    Seq out;
    for (std::size_t i = 0; i < n; ++i) {
      auto r = eval(e_, Nat(i), budget_);
      if (!r.is_halted()) throw TextError("programmatic text: budget exhausted at position " + std::to_string(i));
      out.push_back(Symbol::from_code(r.value()));
    }
    return out;
  }
  std::string describe() const override { return "program(" + e_.str() + ")"; }

 private:
  ProgramIndex e_;
  Budget budget_;
};

class FunctionSource : public TextSource {
 public:
  FunctionSource(std::function<Symbol(std::size_t)> f, std::string name) : f_(std::move(f)), name_(std::move(name)) {}
  Seq prefix(std::size_t n) const override {
    Seq out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(f_(i));
    return out;
  }
  std::string describe() const override { return name_; }

 private:
  std::function<Symbol(std::size_t)> f_;
  std::string name_;
};

class InterleaveSource : public TextSource {
 public:
  InterleaveSource(Text base, Nat x) : base_(std::move(base)), x_(std::move(x)) {}
  Seq prefix(std::size_t n) const override {
    const Seq b = base_.prefix((n + 1) / 2);
    Seq out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(i % 2 == 0 ? b[i / 2] : Symbol::datum(x_));
    return out;
  }
  std::string describe() const override { return "interleave(" + base_.describe() + ", " + x_.str() + ")"; }

 private:
  Text base_;
  Nat x_;
};

class BlockShuffleSource : public TextSource {
 public:
  BlockShuffleSource(Text base, std::uint64_t seed, std::size_t block)
      : base_(std::move(base)), seed_(seed), block_(std::max<std::size_t>(block, 1)) {}
  Seq prefix(std::size_t n) const override {
    const std::size_t blocks = (n + block_ - 1) / block_;
    const Seq b = base_.prefix(blocks * block_);
    Seq out;
    out.reserve(n);
    for (std::size_t k = 0; k < blocks && out.size() < n; ++k) {
      std::vector<std::size_t> perm(block_);
      std::iota(perm.begin(), perm.end(), 0);
      std::mt19937_64 rng(seed_ * 0x9e3779b97f4a7c15ULL + k);
      std::shuffle(perm.begin(), perm.end(), rng);
      for (std::size_t j = 0; j < block_ && out.size() < n; ++j) out.push_back(b[k * block_ + perm[j]]);
    }
    return out;
  }
  std::string describe() const override {
    return "shuffle(" + base_.describe() + ", seed " + std::to_string(seed_) + ", block " + std::to_string(block_) + ")";
  }

 private:
  Text base_;
  std::uint64_t seed_;
  std::size_t block_;
};

}  // namespace detail

/// sigma followed by s repeated forever.
inline Text explicit_text(Seq prefix, Symbol tail = Symbol::pause()) {
  return Text(std::make_shared<detail::ExplicitSource>(std::move(prefix), Seq{tail}));
}
/// sigma followed by the block `cycle` repeated forever.
inline Text periodic_text(Seq prefix, Seq cycle) {
  return Text(std::make_shared<detail::ExplicitSource>(std::move(prefix), std::move(cycle)));
}

/// Finite D: its elements ascending, then #^inf.
inline Text canonical_text(const FiniteSet& d) {
  Seq s;
  for (const auto& x : d) s.push_back(Symbol::datum(x));
  return explicit_text(std::move(s));
}

/// Position x carries x when decide_C(e, x) = Yes and # otherwise.
inline Text canonical_text(const ProgramIndex& c_index, Budget budget) {
  return Text(std::make_shared<detail::CIndexSource>(c_index, budget));
}

inline Text text_from_enumerator(const ProgramIndex& e, Budget per_stage_cap = 1000) {
  return Text(std::make_shared<detail::EnumeratorSource>(e, per_stage_cap));
}

/// T(i) = symbol coded by phi_e(i).
inline Text text_from_program(const ProgramIndex& e, Budget budget) {
  return Text(std::make_shared<detail::ProgramSource>(e, budget));
}

inline Text function_text(std::function<Symbol(std::size_t)> f, std::string name) {
  return Text(std::make_shared<detail::FunctionSource>(std::move(f), std::move(name)));
}

/// T'(2k) = T(k), T'(2k+1) = x. Requires x in content(T); checked on the
/// first `check` positions.
inline Text interleave_text(const Text& t, const Nat& x, std::size_t check = 64) {
  bool present = false;
  for (const auto& s : t.prefix(check)) present = present || (!s.is_pause() && s.value() == x);
  if (!present) throw DomainError("interleave would change the content: " + x.str() + " not seen in the text");
  return Text(std::make_shared<detail::InterleaveSource>(t, x));
}

/// Permutes positions inside consecutive blocks; content is unchanged.
inline Text shuffled_text(const Text& t, std::uint64_t seed, std::size_t block = 4) {
  return Text(std::make_shared<detail::BlockShuffleSource>(t, seed, block));
}

inline FiniteSet content_of(const Seq& s) {
  FiniteSet out;
  for (const auto& x : s) {
    if (!x.is_pause()) out.insert(x.value());
  }
  return out;
}

}  // namespace cind
