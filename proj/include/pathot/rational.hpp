#pragma once

#include <boost/rational.hpp>
#include <string>

namespace pathot {

/// Exact rational probability. All denominators here are products of draw
/// radices (<= 2^24), so long long never overflows.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) /
         static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// 2^-k as an exact rational, k in [0, 62].
inline Rational pow2_inverse(int k) { return Rational(1, 1ll << k); }

}  // namespace pathot
