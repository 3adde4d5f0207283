#pragma once

// Canonical codes for finite lists, symbol sequences (Seq), finite sets and
// hypotheses.
//
// A list (a1, ..., ak) of naturals is coded as the number whose binary form is
// "1" followed by the Elias-delta codewords of a1+1, ..., ak+1, minus one. The
// empty list codes to 0. Codes are injective and their numeric order is the
// order used on Seq. A natural whose trailing bits do not form a complete
// codeword is an invalid list code; `decode_list` reports it and keeps the
// complete prefix.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "cind/nat.hpp"

namespace cind {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecodedList {
  std::vector<Nat> items;
  bool valid = true;
};

inline Nat encode_list(const std::vector<Nat>& items) {
  Nat acc = 1;
  for (const Nat& a : items) {
    const Nat v = a + 1;
    const std::size_t len = bit_length(v);
    const std::size_t lenlen = bits::bit_length_u64(len);
    acc <<= static_cast<unsigned>(2 * lenlen - 1);
    acc |= Nat(len);
    if (len > 1) {
      acc <<= static_cast<unsigned>(len - 1);
      Nat low = v;
      boost::multiprecision::bit_unset(low, static_cast<unsigned>(len - 1));
      acc |= low;
    }
  }
  return acc - 1;
}

inline DecodedList decode_list(const Nat& code) {
  DecodedList out;
  if (code < 0) {
    out.valid = false;
    return out;
  }
  const Nat n = code + 1;
  // Bit positions counted from the most significant bit (position 0, the
  // leading 1 marker).
  const std::size_t total = bit_length(n);
  auto bit = [&](std::size_t pos) { return boost::multiprecision::bit_test(n, static_cast<unsigned>(total - 1 - pos)); };
  auto field = [&](std::size_t pos, std::size_t width) {
    // bits [pos, pos + width) as a number
    Nat v = n >> static_cast<unsigned>(total - pos - width);
    if (width < total) v &= (Nat(1) << static_cast<unsigned>(width)) - 1;
    return v;
  };
  std::size_t p = 1;
  while (p < total) {
    std::size_t zeros = 0;
    while (p + zeros < total && !bit(p + zeros)) ++zeros;
    if (p + zeros >= total || zeros >= 63 || p + 2 * zeros + 1 > total) {
      out.valid = false;
      break;
    }
    const std::uint64_t len = field(p + zeros, zeros + 1).convert_to<std::uint64_t>();
    const std::size_t q = p + 2 * zeros + 1;
    if (len == 0 || q + (len - 1) > total) {
      out.valid = false;
      break;
    }
    Nat v = 1;
    if (len > 1) {
      v = field(q, len - 1);
      boost::multiprecision::bit_set(v, static_cast<unsigned>(len - 1));
    }
    out.items.push_back(v - 1);
    p = q + (len - 1);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Symbols: 0 <-> #, k+1 <-> datum k.

class Symbol {
 public:
  static Symbol pause() { return Symbol(); }
  static Symbol datum(Nat v) { return Symbol(std::move(v)); }
  static Symbol from_code(const Nat& c) { return c == 0 ? pause() : datum(c - 1); }

  bool is_pause() const { return !value_.has_value(); }
  const Nat& value() const {
    if (!value_) throw DomainError("pause symbol has no datum value");
    return *value_;
  }
  Nat code() const { return value_ ? *value_ + 1 : Nat(0); }

  friend bool operator==(const Symbol&, const Symbol&) = default;

  std::string str() const { return value_ ? value_->str() : std::string("#"); }

 private:
  Symbol() = default;
  explicit Symbol(Nat v) : value_(std::move(v)) {}
  std::optional<Nat> value_;
};

using FiniteSet = std::set<Nat>;

inline std::string set_str(const FiniteSet& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& x : s) {
    if (!first) out += ",";
    out += x.str();
    first = false;
  }
  return out + "}";
}

// Finite sets code as the list of their elements in ascending order.
inline Nat encode_set(const FiniteSet& s) { return encode_list(std::vector<Nat>(s.begin(), s.end())); }

inline FiniteSet decode_set(const Nat& code) {
  auto d = decode_list(code);
  return FiniteSet(d.items.begin(), d.items.end());
}

// ---------------------------------------------------------------------------
// Finite sequences over N u {#}.

using Seq = std::vector<Symbol>;

inline Nat encode_seq(const Seq& s) {
  std::vector<Nat> codes;
  codes.reserve(s.size());
  for (const auto& sym : s) codes.push_back(sym.code());
  return encode_list(codes);
}

/// Total decoding: an invalid code yields its longest complete prefix.
inline Seq decode_seq(const Nat& code) {
  Seq out;
  for (const auto& c : decode_list(code).items) out.push_back(Symbol::from_code(c));
  return out;
}

inline std::string seq_str(const Seq& s) {
  std::string out = "(";
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += ",";
    out += s[i].str();
  }
  return out + ")";
}

/// A sequence code with cached decoded view. Numeric order of `code()` is the
/// order on Seq.
class SeqCode {
 public:
  SeqCode() = default;
  explicit SeqCode(Seq s) : code_(encode_seq(s)), seq_(std::move(s)) {}
  static SeqCode from_code(const Nat& c) {
    SeqCode out;
    out.seq_ = decode_seq(c);
    out.code_ = encode_seq(out.seq_);
    return out;
  }

  const Nat& code() const { return code_; }
  const Seq& symbols() const { return seq_; }
  std::size_t length() const { return seq_.size(); }
  const Symbol& at(std::size_t i) const { return seq_.at(i); }

  FiniteSet content() const {
    FiniteSet out;
    for (const auto& s : seq_) {
      if (!s.is_pause()) out.insert(s.value());
    }
    return out;
  }

  friend bool operator==(const SeqCode& a, const SeqCode& b) { return a.code_ == b.code_; }
  friend bool operator<(const SeqCode& a, const SeqCode& b) { return a.code_ < b.code_; }

  std::string str() const { return seq_str(seq_); }

 private:
  Nat code_ = 0;
  Seq seq_;
};

inline SeqCode seq_empty() { return SeqCode(); }

inline SeqCode seq_snoc(const SeqCode& s, const Symbol& x) {
  Seq v = s.symbols();
  v.push_back(x);
  return SeqCode(std::move(v));
}

inline SeqCode seq_concat(const SeqCode& a, const SeqCode& b) {
  Seq v = a.symbols();
  v.insert(v.end(), b.symbols().begin(), b.symbols().end());
  return SeqCode(std::move(v));
}

inline FiniteSet seq_content(const SeqCode& s) { return s.content(); }

inline bool seq_is_prefix(const SeqCode& a, const SeqCode& b) {
  if (a.length() > b.length()) return false;
  return std::equal(a.symbols().begin(), a.symbols().end(), b.symbols().begin());
}

inline constexpr std::size_t kDefaultSeqCap = 6;

/// All sequences over D u {#} of length <= t, ascending by code.
inline std::vector<SeqCode> enum_bounded_seqs(const FiniteSet& d, std::size_t t, std::size_t cap = kDefaultSeqCap) {
  if (t > cap) throw CapExceeded("sequence length bound " + std::to_string(t) + " exceeds cap " + std::to_string(cap));
  std::vector<Symbol> alphabet{Symbol::pause()};
  for (const auto& x : d) alphabet.push_back(Symbol::datum(x));
  std::vector<SeqCode> out;
  std::vector<Seq> layer{Seq{}};
  out.emplace_back(Seq{});
  for (std::size_t len = 1; len <= t; ++len) {
    std::vector<Seq> next;
    next.reserve(layer.size() * alphabet.size());
    for (const auto& s : layer) {
      for (const auto& a : alphabet) {
        Seq e = s;
        e.push_back(a);
        out.emplace_back(e);
        next.push_back(std::move(e));
      }
    }
    layer = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Elements of D ascending with a single # between neighbours.
inline SeqCode sort_sharp(const FiniteSet& d) {
  Seq s;
  for (const auto& x : d) {
    if (!s.empty()) s.push_back(Symbol::pause());
    s.push_back(Symbol::datum(x));
  }
  return SeqCode(std::move(s));
}

/// All sequences over D u {#} whose code is strictly below `bound`, ascending.
/// Returns nullopt when more than `limit` such sequences exist.
inline std::optional<std::vector<Nat>> seqs_below(const FiniteSet& d, const Nat& bound, std::size_t limit) {
  if (bound <= 0) return std::vector<Nat>{};
  // A code c has bit_length(c+1)-1 payload bits; codes below bound have at
  // most bit_length(bound) payload bits.
  const std::size_t max_payload = bit_length(bound);
  std::vector<std::pair<std::size_t, bits::BitString>> alphabet;
  {
    bits::BitString p;
    bits::append_delta(p, Nat(1));
    alphabet.emplace_back(p.size(), p);
  }
  for (const auto& x : d) {
    bits::BitString p;
    bits::append_delta(p, x + 2);
    alphabet.emplace_back(p.size(), std::move(p));
  }
  std::vector<Nat> out;
  bits::BitString cur{1};
  bool overflow = false;
  // Depth-first over payloads that fit.
  auto rec = [&](auto&& self) -> void {
    if (overflow) return;
    Nat c = bits::from_bits(cur, 0, cur.size()) - 1;
    if (c < bound) {
      out.push_back(std::move(c));
      if (out.size() > limit) {
        overflow = true;
        return;
      }
    }
    for (const auto& [len, word] : alphabet) {
      if (cur.size() - 1 + len > max_payload) continue;
      cur.insert(cur.end(), word.begin(), word.end());
      self(self);
      cur.resize(cur.size() - len);
      if (overflow) return;
    }
  };
  rec(rec);
  if (overflow) return std::nullopt;
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Hypotheses: 0 <-> ?, e+1 <-> conjecture e.

class Hypothesis {
 public:
  static Hypothesis unknown() { return Hypothesis(); }
  static Hypothesis conjecture(Nat e) { return Hypothesis(std::move(e)); }
  static Hypothesis from_code(const Nat& c) { return c == 0 ? unknown() : conjecture(c - 1); }

  bool is_unknown() const { return !index_.has_value(); }
  const Nat& index() const {
    if (!index_) throw DomainError("? carries no index");
    return *index_;
  }
  Nat code() const { return index_ ? *index_ + 1 : Nat(0); }
  std::string str() const { return index_ ? index_->str() : std::string("?"); }

  friend bool operator==(const Hypothesis&, const Hypothesis&) = default;

 private:
  Hypothesis() = default;
  explicit Hypothesis(Nat e) : index_(std::move(e)) {}
  std::optional<Nat> index_;
};

}  // namespace cind
