// Finite binary words and prefix-free sets of them.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aitherm/errors.hpp"

namespace aitherm {

class BitString {
 public:
  BitString() = default;  // the empty string (lambda)
  explicit BitString(std::string_view ascii) : bits_(ascii) {
    for (char c : bits_)
      if (c != '0' && c != '1') throw InvalidBitString("bit-string must be over {0,1}: " + bits_);
  }

  static BitString zeros(std::size_t n) { return BitString(std::string(n, '0')); }

  std::size_t length() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  char bit(std::size_t i) const { return bits_[i]; }
  const std::string& str() const { return bits_; }

  bool is_prefix_of(const BitString& other) const {
    return bits_.size() <= other.bits_.size() &&
           other.bits_.compare(0, bits_.size(), bits_) == 0;
  }

  friend BitString operator+(const BitString& a, const BitString& b) {
    BitString r;
    r.bits_ = a.bits_ + b.bits_;
    return r;
  }

  friend bool operator==(const BitString& a, const BitString& b) = default;

 private:
  std::string bits_;
};

// Canonical program order: by length, then lexicographically.
inline bool canonical_less(const BitString& a, const BitString& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  return a.str() < b.str();
}

inline bool operator<(const BitString& a, const BitString& b) { return canonical_less(a, b); }

// True iff no element is a prefix of a distinct element. Duplicates count as
// violations. Order-insensitive.
bool is_prefix_free(std::span<const BitString> strings);

// Enumerate all 2^len strings of one length in lexicographic order, calling
// f(s) for each; used by canonical program searches.
BitString nth_string_of_length(std::size_t len, std::uint64_t lex_index);

// A duplicate-free set of bit-strings none of which prefixes another,
// kept in canonical order.
class PrefixSet {
 public:
  PrefixSet() = default;
  explicit PrefixSet(std::vector<BitString> members);

  const std::vector<BitString>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains_lambda() const { return !members_.empty() && members_.front().empty(); }

 private:
  std::vector<BitString> members_;
};

}  // namespace aitherm
