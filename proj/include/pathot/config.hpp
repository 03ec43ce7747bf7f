#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "pathot/group.hpp"
#include "pathot/protocols.hpp"
#include "pathot/report.hpp"

namespace pathot {

/// One experiment: a topology with explicit paths and corruption, a protocol
/// (or attack) selector, parameters, and an evaluation mode.
struct ExperimentConfig {
  NetworkTopology topology;
  PathSet paths;
  CorruptionSet corruption;
  std::string protocol = "p1";  // p1|p2|hybrid1|hybrid2|combined|weak|tamper
  int ell = 1;
  std::optional<BitString> s0;  // defaults: all-zero / all-one
  std::optional<BitString> s1;
  ChoiceBit choice{false};
  int k = 8;                    // tamper-check repetitions
  double open_fraction = 0.5;
  std::string mode = "exact";   // exact | montecarlo
  std::uint64_t trials = 10000;
  std::uint64_t seed = 1;
  CyclicGroup group = toy_group();
  std::string attack;  // "", claim2, collude, tamper, reduction
  /// Realize link-OT classically on each link (demo only; Monte Carlo mode).
  bool linkot_demo = false;

  BitString input_s0() const;
  BitString input_s1() const;

  /// Throws ConfigError naming the offending field.
  static ExperimentConfig from_json(const nlohmann::json& j);
  static ExperimentConfig load_file(const std::string& path);
};

/// Runs the configured experiment and evaluates its declared invariants.
SecurityReport run_experiment(const ExperimentConfig& cfg);

/// One CSV row per combination in the sweep spec (fields "ell", "n_paths",
/// "corruption_subsets"); absent fields inherit the base config. An empty
/// spec yields a header-only table.
std::string run_sweep_csv(const ExperimentConfig& base,
                          const nlohmann::json& sweep_spec);

/// Transcript of one execution of the configured protocol, as JSON lines.
std::string run_transcript(const ExperimentConfig& cfg);

}  // namespace pathot
