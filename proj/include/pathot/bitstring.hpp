#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "pathot/errors.hpp"

namespace pathot {

class RandomSource;

/// A single choice/share bit. Distinct from a length-1 BitString so message
/// bits and choice bits cannot be mixed up.
struct ChoiceBit {
  bool value = false;

  static ChoiceBit random(RandomSource& rng);

  ChoiceBit operator^(ChoiceBit o) const { return ChoiceBit{value != o.value}; }
  ChoiceBit flipped() const { return ChoiceBit{!value}; }
  bool operator==(const ChoiceBit&) const = default;
  auto operator<=>(const ChoiceBit&) const = default;
  std::string str() const { return value ? "1" : "0"; }
};

/// Fixed-length string over GF(2), length 1..64. Immutable value type;
/// '+' is bitwise XOR, '·' with a ChoiceBit is scalar multiplication mod 2.
/// Serialized as a string of '0'/'1' characters, most significant bit first.
class BitString {
public:
  BitString() = default;  // length 0, the "unset" sentinel
  BitString(std::uint64_t value, int length);

  static BitString zero(int length) { return BitString(0, length); }
  static BitString random(RandomSource& rng, int length);
  /// Strict parse of a '0'/'1' string; rejects anything else.
  static BitString parse(const std::string& bits);
  /// Adversary-tolerant parse: non-'1' characters read as 0, the result is
  /// truncated or zero-padded to `length` (low bits kept).
  static BitString parse_lenient(const std::string& bits, int length);

  int length() const { return length_; }
  std::uint64_t value() const { return value_; }
  bool empty() const { return length_ == 0; }
  /// Bit i counted from the most significant end.
  bool bit(int i) const;
  std::string str() const;

  BitString operator^(const BitString& o) const;
  /// Scalar multiplication: c=1 keeps the string, c=0 zeroes it.
  BitString operator*(ChoiceBit c) const {
    return c.value ? *this : zero(length_);
  }

  bool operator==(const BitString&) const = default;
  auto operator<=>(const BitString&) const = default;

private:
  std::uint64_t value_ = 0;
  int length_ = 0;
};

/// Splits a secret into n shares whose XOR is the secret; the first n-1
/// shares are fresh uniform draws.
std::vector<BitString> share_xor(const BitString& secret, int n,
                                 RandomSource& rng);
std::vector<ChoiceBit> share_xor(ChoiceBit secret, int n, RandomSource& rng);

BitString reconstruct_xor(const std::vector<BitString>& shares);
ChoiceBit reconstruct_xor(const std::vector<ChoiceBit>& shares);

}  // namespace pathot
