#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>

#include "pathot/errors.hpp"
#include "pathot/random.hpp"
#include "pathot/rational.hpp"

namespace pathot {

/// Exact probability map from canonicalized adversary views to rationals.
struct ViewDistribution {
  std::map<std::string, Rational> p;

  Rational mass() const;
  Rational probability(const std::string& view) const;
};

/// Half the L1 distance between two distributions; 0 means the views are
/// perfectly indistinguishable, 1 means disjoint supports.
Rational statistical_distance(const ViewDistribution& a,
                              const ViewDistribution& b);

/// Exact joint distribution of (secret, view) pairs.
struct JointDistribution {
  /// view -> secret -> probability of the pair.
  std::map<std::string, std::map<std::string, Rational>> by_view;

  Rational mass() const;
  /// Optimal-guess average success: sum over views of max over secrets.
  Rational guessing_probability() const;
  /// Maximum-likelihood guess for one observed view (ties broken towards the
  /// lexicographically smallest secret). Throws on an unseen view.
  const std::string& ml_guess(const std::string& view) const;
};

/// Walks every assignment of the bounded-uniform draws `scenario` makes and
/// aggregates its outcomes with exact probabilities. The scenario must make
/// the same draw sequence on every tape. Throws EnumerationBoundError when
/// the tape space exceeds `max_outcomes`.
template <class Outcome>
std::map<Outcome, Rational> enumerate_outcomes(
    const std::function<Outcome(RandomSource&)>& scenario,
    std::uint64_t max_outcomes = kEnumerationBound) {
  std::vector<std::uint64_t> radices;
  Outcome first = [&] {
    TapeSource probe(&radices, nullptr, max_outcomes);
    return scenario(probe);
  }();

  std::uint64_t total = 1;
  for (std::uint64_t r : radices) total *= r;  // bound enforced by the probe
  const Rational weight(1, static_cast<long long>(total));

  std::map<Outcome, Rational> acc;
  acc[std::move(first)] += weight;

  std::vector<std::uint64_t> digits(radices.size(), 0);
  for (std::uint64_t index = 1; index < total; ++index) {
    // Mixed-radix odometer, last draw varies fastest.
    for (std::size_t i = digits.size(); i-- > 0;) {
      if (++digits[i] < radices[i]) break;
      digits[i] = 0;
    }
    TapeSource replay(&radices, &digits, max_outcomes);
    acc[scenario(replay)] += weight;
    if (replay.position() != digits.size())
      throw Error("tape replay: scenario drew fewer values than the probe run");
  }
  return acc;
}

/// Exact view distribution of a protocol execution scenario: enumerates all
/// tapes and aggregates each canonical view with probability 1/#tapes.
ViewDistribution exact_view_distribution(
    const std::function<std::string(RandomSource&)>& view_scenario,
    std::uint64_t max_outcomes = kEnumerationBound);

JointDistribution exact_joint_distribution(
    const std::function<std::pair<std::string, std::string>(RandomSource&)>&
        secret_and_view,
    std::uint64_t max_outcomes = kEnumerationBound);

/// Exact probability that a boolean scenario reports success.
Rational exact_event_probability(
    const std::function<bool(RandomSource&)>& event,
    std::uint64_t max_outcomes = kEnumerationBound);

struct MonteCarloResult {
  double frequency = 0.0;
  double half_width99 = 0.0;  // normal-approximation 99% half width
  std::uint64_t trials = 0;
};

/// i.i.d. trials with per-trial derived seeds.
MonteCarloResult monte_carlo(std::uint64_t trials, std::uint64_t seed,
                             const std::function<bool(RandomSource&)>& trial);

}  // namespace pathot
