#pragma once

#include <cstdint>
#include <vector>

#include "pathot/errors.hpp"

namespace pathot {

/// Uniform bounded draws. Protocol code consumes randomness only through this
/// interface, so an execution is a deterministic function of its draw sequence.
class RandomSource {
public:
  virtual ~RandomSource() = default;

  /// Uniform value in [0, n), n >= 1. n == 1 consumes no randomness.
  virtual std::uint64_t draw(std::uint64_t n) = 0;

  bool draw_bit() { return draw(2) == 1; }
};

/// Counter-mode splitmix64. Identical seeds yield identical draw streams.
class SeededRng final : public RandomSource {
public:
  explicit SeededRng(std::uint64_t seed) : state_(seed) {}

  /// Independent stream for one trial of a Monte Carlo experiment.
  static SeededRng for_trial(std::uint64_t seed, std::uint64_t trial);

  std::uint64_t next_u64();
  std::uint64_t draw(std::uint64_t n) override;

private:
  std::uint64_t state_;
};

/// Largest number of distinct tapes the exact enumerator will walk.
constexpr std::uint64_t kEnumerationBound = 1ull << 24;

/// One assignment of every bounded-uniform draw a scenario makes.
///
/// In probe mode (digits == nullptr) every draw records its radix, yields 0,
/// and the running product of radices is checked against max_total. In replay
/// mode the draws return the supplied digits and the radix sequence must match
/// the probe exactly (scenarios must make the same draws on every tape).
class TapeSource final : public RandomSource {
public:
  TapeSource(std::vector<std::uint64_t>* radices,
             const std::vector<std::uint64_t>* digits, std::uint64_t max_total)
      : radices_(radices), digits_(digits), max_total_(max_total) {}

  std::uint64_t draw(std::uint64_t n) override;

  std::size_t position() const { return pos_; }

private:
  std::vector<std::uint64_t>* radices_;
  const std::vector<std::uint64_t>* digits_;
  std::uint64_t max_total_;
  std::uint64_t running_total_ = 1;
  std::size_t pos_ = 0;
};

}  // namespace pathot
