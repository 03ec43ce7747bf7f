#include "pathot/bitstring.hpp"

#include "pathot/random.hpp"

namespace pathot {

ChoiceBit ChoiceBit::random(RandomSource& rng) {
  return ChoiceBit{rng.draw(2) == 1};
}

BitString::BitString(std::uint64_t value, int length) : length_(length) {
  if (length < 1 || length > 64)
    throw ContractViolation("BitString length must be in [1, 64]");
  const std::uint64_t mask =
      length == 64 ? ~0ull : ((1ull << length) - 1);
  value_ = value & mask;
}

BitString BitString::random(RandomSource& rng, int length) {
  if (length < 1 || length > 64)
    throw ContractViolation("BitString length must be in [1, 64]");
  std::uint64_t v = 0;
  int remaining = length;
  // Fixed 16-bit limbs, most significant first, so the draw sequence is the
  // same on every tape.
  while (remaining > 0) {
    const int chunk = remaining < 16 ? remaining : 16;
    v = (v << chunk) | rng.draw(1ull << chunk);
    remaining -= chunk;
  }
  return BitString(v, length);
}

BitString BitString::parse(const std::string& bits) {
  if (bits.empty() || bits.size() > 64)
    throw ContractViolation("BitString::parse: length must be in [1, 64]");
  std::uint64_t v = 0;
  for (char ch : bits) {
    if (ch != '0' && ch != '1')
      throw ContractViolation("BitString::parse: expected only '0'/'1'");
    v = (v << 1) | (ch == '1' ? 1u : 0u);
  }
  return BitString(v, static_cast<int>(bits.size()));
}

BitString BitString::parse_lenient(const std::string& bits, int length) {
  std::uint64_t v = 0;
  for (char ch : bits) v = (v << 1) | (ch == '1' ? 1u : 0u);
  return BitString(v, length);
}

bool BitString::bit(int i) const {
  if (i < 0 || i >= length_)
    throw ContractViolation("BitString::bit: index out of range");
  return (value_ >> (length_ - 1 - i)) & 1u;
}

std::string BitString::str() const {
  std::string s(static_cast<std::size_t>(length_), '0');
  for (int i = 0; i < length_; ++i)
    if (bit(i)) s[static_cast<std::size_t>(i)] = '1';
  return s;
}

BitString BitString::operator^(const BitString& o) const {
  if (length_ != o.length_)
    throw ContractViolation("xor: length mismatch");
  if (length_ == 0) throw ContractViolation("xor: empty bit string");
  return BitString(value_ ^ o.value_, length_);
}

std::vector<BitString> share_xor(const BitString& secret, int n,
                                 RandomSource& rng) {
  if (n < 1) throw ContractViolation("share_xor: need at least one share");
  if (secret.empty()) throw ContractViolation("share_xor: empty secret");
  std::vector<BitString> shares;
  shares.reserve(static_cast<std::size_t>(n));
  BitString closing = secret;
  for (int i = 0; i + 1 < n; ++i) {
    BitString r = BitString::random(rng, secret.length());
    closing = closing ^ r;
    shares.push_back(r);
  }
  shares.push_back(closing);
  return shares;
}

std::vector<ChoiceBit> share_xor(ChoiceBit secret, int n, RandomSource& rng) {
  if (n < 1) throw ContractViolation("share_xor: need at least one share");
  std::vector<ChoiceBit> shares;
  shares.reserve(static_cast<std::size_t>(n));
  ChoiceBit closing = secret;
  for (int i = 0; i + 1 < n; ++i) {
    ChoiceBit r = ChoiceBit::random(rng);
    closing = closing ^ r;
    shares.push_back(r);
  }
  shares.push_back(closing);
  return shares;
}

BitString reconstruct_xor(const std::vector<BitString>& shares) {
  if (shares.empty())
    throw ContractViolation("reconstruct_xor: empty share list");
  BitString acc = shares.front();
  for (std::size_t i = 1; i < shares.size(); ++i) acc = acc ^ shares[i];
  return acc;
}

ChoiceBit reconstruct_xor(const std::vector<ChoiceBit>& shares) {
  if (shares.empty())
    throw ContractViolation("reconstruct_xor: empty share list");
  ChoiceBit acc = shares.front();
  for (std::size_t i = 1; i < shares.size(); ++i) acc = acc ^ shares[i];
  return acc;
}

}  // namespace pathot
