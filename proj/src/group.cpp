#include "pathot/group.hpp"

namespace pathot {

std::uint64_t CyclicGroup::mul(std::uint64_t a, std::uint64_t b) const {
  return static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}

std::uint64_t CyclicGroup::pow(std::uint64_t base, std::uint64_t e) const {
  std::uint64_t acc = 1;
  base %= p;
  while (e > 0) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

std::uint64_t CyclicGroup::inv(std::uint64_t x) const {
  if (x % p == 0) throw ContractViolation("group inverse of zero");
  return pow(x, p - 2);
}

bool CyclicGroup::in_subgroup(std::uint64_t x) const {
  return x % p != 0 && pow(x, q) == 1;
}

void CyclicGroup::validate() const {
  if (p < 3 || q < 2 || g < 2 || g >= p)
    throw ContractViolation("group: parameters out of range");
  if (!is_small_prime(p) || !is_small_prime(q))
    throw ContractViolation("group: p and q must be prime");
  if ((p - 1) % q != 0)
    throw ContractViolation("group: q must divide p-1");
  if (pow(g, q) != 1 || g == 1)
    throw ContractViolation("group: g must have order q");
}

bool is_small_prime(std::uint64_t n) {
  if (n >= (1ull << 40))
    throw ContractViolation("is_small_prime: value too large");
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

CyclicGroup toy_group() { return CyclicGroup{23, 11, 2}; }

CyclicGroup find_safe_prime_group(std::uint64_t min_q) {
  std::uint64_t q = min_q < 5 ? 5 : min_q | 1;
  for (;; q += 2) {
    if (!is_small_prime(q)) continue;
    if (!is_small_prime(2 * q + 1)) continue;
    CyclicGroup grp{2 * q + 1, q, 4};
    grp.validate();
    return grp;
  }
}

}  // namespace pathot
