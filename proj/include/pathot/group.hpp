#pragma once

#include <cstdint>

#include "pathot/errors.hpp"

namespace pathot {

/// Prime-order subgroup of Z_p^*: element arithmetic mod p, exponent
/// arithmetic mod q. Desk-scale parameters only.
struct CyclicGroup {
  std::uint64_t p = 0;  // prime modulus
  std::uint64_t q = 0;  // prime order of the subgroup, q | p-1
  std::uint64_t g = 0;  // generator of the order-q subgroup

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t pow(std::uint64_t base, std::uint64_t e) const;
  std::uint64_t inv(std::uint64_t x) const;  // x^(p-2) mod p
  bool in_subgroup(std::uint64_t x) const;
  void validate() const;
};

/// p=23, q=11, g=2. Small enough for exhaustive checks.
CyclicGroup toy_group();

/// Smallest safe-prime group (p = 2q+1, both prime) with q >= min_q,
/// generator 4 (a square, hence of order q).
CyclicGroup find_safe_prime_group(std::uint64_t min_q);

bool is_small_prime(std::uint64_t n);  // trial division, n < 2^40

}  // namespace pathot
