#pragma once

// Arbitrary-precision naturals, Cantor pairing and the bit-level helpers the
// self-delimiting list code is built on.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cind {

using Nat = boost::multiprecision::cpp_int;

/// Raised when an operation is handed a value outside its documented domain
/// (negative naturals, malformed indices, ...).
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string to_string(const Nat& n) { return n.str(); }

inline Nat parse_nat(std::string_view s) {
  if (s.empty()) throw DomainError("empty natural");
  for (char c : s) {
    if (c < '0' || c > '9') throw DomainError("not a natural: " + std::string(s));
  }
  return Nat(std::string(s));
}

inline bool fits_u64(const Nat& n) { return n >= 0 && n <= Nat(UINT64_MAX); }

inline std::uint64_t to_u64(const Nat& n) {
  if (!fits_u64(n)) throw DomainError("natural too large: " + n.str());
  return n.convert_to<std::uint64_t>();
}

/// Number of bits in the binary representation; bit_length(0) == 0.
inline std::size_t bit_length(const Nat& n) {
  if (n <= 0) return 0;
  return static_cast<std::size_t>(boost::multiprecision::msb(n)) + 1;
}

struct NatHash {
  std::size_t operator()(const Nat& n) const noexcept {
    const auto& be = n.backend();
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ be.size();
    const auto* limbs = be.limbs();
    for (std::size_t i = 0; i < be.size(); ++i) {
      h ^= std::hash<std::uint64_t>{}(static_cast<std::uint64_t>(limbs[i])) + 0x9e3779b97f4a7c15ULL +
           (h << 6) + (h >> 2);
    }
    return h;
  }
};

// Cantor pairing <x,y> = (x+y)(x+y+1)/2 + y.
inline Nat pair(const Nat& x, const Nat& y) {
  Nat s = x + y;
  return s * (s + 1) / 2 + y;
}

/// floor(sqrt(n)) by Newton iteration from above.
inline Nat isqrt(const Nat& n) {
  if (n < 2) return n;
  Nat x = Nat(1) << static_cast<unsigned>((bit_length(n) + 1) / 2);
  while (true) {
    Nat y = (x + n / x) >> 1;
    if (y >= x) return x;
    x = std::move(y);
  }
}

inline std::pair<Nat, Nat> unpair_direct(const Nat& z) {
  // w = floor((sqrt(8z+1)-1)/2)
  Nat w = (isqrt(8 * z + 1) - 1) / 2;
  Nat t = w * (w + 1) / 2;
  Nat y = z - t;
  return {w - y, y};
}

inline std::pair<Nat, Nat> unpair(const Nat& z) {
  if (bit_length(z) <= 256) return unpair_direct(z);
  // Large codes (program indices) are unpaired over and over by the
  // evaluator; remember recent ones per thread.
  thread_local std::unordered_map<Nat, std::pair<Nat, Nat>, NatHash> memo;
  auto it = memo.find(z);
  if (it != memo.end()) return it->second;
  if (memo.size() > 50000) memo.clear();
  auto r = unpair_direct(z);
  memo.emplace(z, r);
  return r;
}

inline Nat pi1(const Nat& z) { return unpair(z).first; }
inline Nat pi2(const Nat& z) { return unpair(z).second; }

namespace bits {

/// MSB-first bit string; each element is 0 or 1.
using BitString = std::vector<std::uint8_t>;

inline void append_binary(BitString& out, const Nat& n, std::size_t width) {
  // Writes the low `width` bits of n, most significant first.
  const std::size_t start = out.size();
  out.resize(start + width, 0);
  for (std::size_t i = 0; i < width; ++i) {
    if (boost::multiprecision::bit_test(n, static_cast<unsigned>(width - 1 - i))) out[start + i] = 1;
  }
}

inline void append_binary_u64(BitString& out, std::uint64_t n, std::size_t width) {
  for (std::size_t i = 0; i < width; ++i) out.push_back(static_cast<std::uint8_t>((n >> (width - 1 - i)) & 1U));
}

inline std::size_t bit_length_u64(std::uint64_t n) {
  std::size_t l = 0;
  while (n != 0) {
    ++l;
    n >>= 1;
  }
  return l;
}

/// Elias delta code of n >= 1.
inline void append_delta(BitString& out, const Nat& n) {
  const std::size_t len = bit_length(n);
  const std::size_t lenlen = bit_length_u64(len);
  out.insert(out.end(), lenlen - 1, 0);
  append_binary_u64(out, len, lenlen);
  if (len > 1) append_binary(out, n, len - 1);
}

inline Nat from_bits(const BitString& b, std::size_t begin, std::size_t end) {
  Nat n = 0;
  if (begin >= end) return n;
  boost::multiprecision::import_bits(n, b.begin() + static_cast<std::ptrdiff_t>(begin),
                                     b.begin() + static_cast<std::ptrdiff_t>(end), 1, true);
  return n;
}

inline BitString to_bits(const Nat& n) {
  BitString out;
  if (n <= 0) return out;
  out.reserve(bit_length(n));
  boost::multiprecision::export_bits(n, std::back_inserter(out), 1, true);
  return out;
}

class Reader {
 public:
  Reader(const BitString& b, std::size_t pos) : bits_(b), pos_(pos) {}

  bool at_end() const { return pos_ >= bits_.size(); }
  std::size_t position() const { return pos_; }

  /// Reads one delta codeword; returns false (without consuming) when the
  /// remaining bits are not a complete codeword.
  bool read_delta(Nat& out) {
    std::size_t p = pos_;
    std::size_t zeros = 0;
    while (p < bits_.size() && bits_[p] == 0) {
      ++zeros;
      ++p;
    }
    if (p >= bits_.size() || zeros >= 63) return false;
    if (p + zeros + 1 > bits_.size()) return false;
    std::uint64_t len = 0;
    for (std::size_t i = 0; i <= zeros; ++i) len = (len << 1) | bits_[p + i];
    p += zeros + 1;
    if (len == 0 || p + (len - 1) > bits_.size()) return false;
    Nat v = 1;
    if (len > 1) {
      Nat low = from_bits(bits_, p, p + len - 1);
      v = (Nat(1) << static_cast<unsigned>(len - 1)) | low;
    }
    p += len - 1;
    out = std::move(v);
    pos_ = p;
    return true;
  }

 private:
  const BitString& bits_;
  std::size_t pos_;
};

}  // namespace bits
}  // namespace cind
