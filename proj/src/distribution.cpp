#include "pathot/distribution.hpp"

#include <cmath>

namespace pathot {

Rational ViewDistribution::mass() const {
  Rational m(0);
  for (const auto& [_, q] : p) m += q;
  return m;
}

Rational ViewDistribution::probability(const std::string& view) const {
  auto it = p.find(view);
  return it == p.end() ? Rational(0) : it->second;
}

Rational statistical_distance(const ViewDistribution& a,
                              const ViewDistribution& b) {
  Rational sum(0);
  auto ia = a.p.begin();
  auto ib = b.p.begin();
  while (ia != a.p.end() || ib != b.p.end()) {
    if (ib == b.p.end() || (ia != a.p.end() && ia->first < ib->first)) {
      sum += ia->second;
      ++ia;
    } else if (ia == a.p.end() || ib->first < ia->first) {
      sum += ib->second;
      ++ib;
    } else {
      Rational d = ia->second - ib->second;
      sum += d < Rational(0) ? -d : d;
      ++ia;
      ++ib;
    }
  }
  return sum / 2;
}

Rational JointDistribution::mass() const {
  Rational m(0);
  for (const auto& [_, secrets] : by_view)
    for (const auto& [__, q] : secrets) m += q;
  return m;
}

Rational JointDistribution::guessing_probability() const {
  Rational total(0);
  for (const auto& [_, secrets] : by_view) {
    Rational best(0);
    for (const auto& [__, q] : secrets)
      if (q > best) best = q;
    total += best;
  }
  return total;
}

const std::string& JointDistribution::ml_guess(const std::string& view) const {
  auto it = by_view.find(view);
  if (it == by_view.end() || it->second.empty())
    throw Error("ml_guess: view outside the joint distribution's support");
  const std::string* best = nullptr;
  Rational best_p(0);
  for (const auto& [secret, q] : it->second) {
    if (best == nullptr || q > best_p) {  // ties keep the smaller secret
      best = &secret;
      best_p = q;
    }
  }
  return *best;
}

ViewDistribution exact_view_distribution(
    const std::function<std::string(RandomSource&)>& view_scenario,
    std::uint64_t max_outcomes) {
  ViewDistribution d;
  d.p = enumerate_outcomes<std::string>(view_scenario, max_outcomes);
  return d;
}

JointDistribution exact_joint_distribution(
    const std::function<std::pair<std::string, std::string>(RandomSource&)>&
        secret_and_view,
    std::uint64_t max_outcomes) {
  auto flat = enumerate_outcomes<std::pair<std::string, std::string>>(
      secret_and_view, max_outcomes);
  JointDistribution joint;
  for (const auto& [key, q] : flat) joint.by_view[key.second][key.first] += q;
  return joint;
}

Rational exact_event_probability(
    const std::function<bool(RandomSource&)>& event,
    std::uint64_t max_outcomes) {
  auto outcomes = enumerate_outcomes<bool>(event, max_outcomes);
  auto it = outcomes.find(true);
  return it == outcomes.end() ? Rational(0) : it->second;
}

MonteCarloResult monte_carlo(std::uint64_t trials, std::uint64_t seed,
                             const std::function<bool(RandomSource&)>& trial) {
  if (trials < 100)
    throw ContractViolation("monte_carlo: need at least 100 trials");
  std::uint64_t successes = 0;
  for (std::uint64_t t = 0; t < trials; ++t) {
    SeededRng rng = SeededRng::for_trial(seed, t);
    if (trial(rng)) ++successes;
  }
  MonteCarloResult r;
  r.trials = trials;
  r.frequency = static_cast<double>(successes) / static_cast<double>(trials);
  constexpr double z99 = 2.5758293035489004;
  r.half_width99 =
      z99 * std::sqrt(r.frequency * (1.0 - r.frequency) /
                      static_cast<double>(trials));
  return r;
}

}  // namespace pathot
