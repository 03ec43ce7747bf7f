#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pathot/rational.hpp"

namespace pathot {

/// One declared invariant evaluated against a run.
struct ReportCheck {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = true;
};

/// Security metrics of one configured experiment. Exact-mode values are
/// rationals; Monte Carlo values are frequencies with confidence half-widths.
struct SecurityReport {
  std::string protocol;
  std::string attack;  // empty when the run is a plain protocol experiment
  int ell = 0;
  int n_paths = 0;
  std::string corrupted;  // sorted node ids joined with ';'
  std::string controller;
  bool honest_path = false;
  bool disjoint_paths = false;
  bool separating = false;
  std::string mode;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  std::optional<Rational> correctness_rate;
  std::optional<Rational> epsilon_receiver;
  std::optional<Rational> epsilon_sender;
  std::optional<double> mc_frequency;
  std::optional<double> mc_half_width;
  std::optional<Rational> attack_success_exact;
  std::optional<double> attack_expected;

  std::vector<ReportCheck> checks;

  void add_check(const std::string& name, const std::string& expected,
                 const std::string& actual, bool pass);
  bool all_pass() const;
  nlohmann::json to_json() const;
};

}  // namespace pathot
