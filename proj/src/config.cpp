#include "pathot/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "pathot/attacks.hpp"
#include "pathot/distribution.hpp"

namespace pathot {

namespace {

const nlohmann::json& require_field(const nlohmann::json& j,
                                    const std::string& key) {
  if (!j.is_object() || !j.contains(key))
    throw ConfigError(key, "missing required field");
  return j.at(key);
}

std::string want_string(const nlohmann::json& v, const std::string& field) {
  if (!v.is_string()) throw ConfigError(field, "expected a string");
  return v.get<std::string>();
}

std::uint64_t want_uint(const nlohmann::json& v, const std::string& field) {
  if (!v.is_number_unsigned() && !v.is_number_integer())
    throw ConfigError(field, "expected a non-negative integer");
  auto n = v.get<long long>();
  if (n < 0) throw ConfigError(field, "expected a non-negative integer");
  return static_cast<std::uint64_t>(n);
}

std::vector<ChoiceBit> bits_of(std::uint64_t mask, int n) {
  std::vector<ChoiceBit> d;
  for (int j = 0; j < n; ++j) d.push_back(ChoiceBit{((mask >> j) & 1) != 0});
  return d;
}

std::string join_ids(const std::set<NodeId>& ids) {
  std::string out;
  for (const NodeId& n : ids) {
    if (!out.empty()) out += ';';
    out += n;
  }
  return out.empty() ? "-" : out;
}

bool is_hybrid_variant(const std::string& p) {
  return p == "hybrid1" || p == "hybrid2";
}

}  // namespace

BitString ExperimentConfig::input_s0() const {
  return s0.has_value() ? *s0 : BitString::zero(ell);
}

BitString ExperimentConfig::input_s1() const {
  if (s1.has_value()) return *s1;
  return ell == 64 ? BitString(~0ull, 64)
                   : BitString((1ull << ell) - 1, ell);
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j) {
  ExperimentConfig cfg;
  if (!j.is_object()) throw ConfigError("", "config must be a JSON object");

  const auto& nodes = require_field(j, "nodes");
  if (!nodes.is_array()) throw ConfigError("nodes", "expected an array");
  for (std::size_t i = 0; i < nodes.size(); ++i)
    cfg.topology.nodes.insert(
        want_string(nodes[i], "nodes[" + std::to_string(i) + "]"));

  const auto& edges = require_field(j, "edges");
  if (!edges.is_array()) throw ConfigError("edges", "expected an array");
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const std::string field = "edges[" + std::to_string(i) + "]";
    const auto& e = edges[i];
    if (!e.is_array() || e.size() != 2)
      throw ConfigError(field, "expected a two-element array");
    cfg.topology.add_edge(want_string(e[0], field + "[0]"),
                          want_string(e[1], field + "[1]"));
  }

  cfg.topology.alice = want_string(require_field(j, "alice"), "alice");
  cfg.topology.bob = want_string(require_field(j, "bob"), "bob");

  const auto& paths = require_field(j, "paths");
  if (!paths.is_array() || paths.empty())
    throw ConfigError("paths", "expected a non-empty array of node lists");
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const std::string field = "paths[" + std::to_string(i) + "]";
    const auto& p = paths[i];
    if (!p.is_array()) throw ConfigError(field, "expected an array of nodes");
    std::vector<NodeId> path;
    for (std::size_t k = 0; k < p.size(); ++k)
      path.push_back(want_string(p[k], field + "[" + std::to_string(k) + "]"));
    cfg.paths.paths.push_back(std::move(path));
  }

  if (j.contains("corrupt")) {
    const auto& c = j.at("corrupt");
    if (!c.is_array()) throw ConfigError("corrupt", "expected an array");
    for (std::size_t i = 0; i < c.size(); ++i)
      cfg.corruption.corrupted.insert(
          want_string(c[i], "corrupt[" + std::to_string(i) + "]"));
  }
  if (j.contains("controller")) {
    try {
      cfg.corruption.controller =
          controller_from_string(want_string(j.at("controller"), "controller"));
    } catch (const ContractViolation& e) {
      throw ConfigError("controller", e.what());
    }
  }

  if (j.contains("protocol"))
    cfg.protocol = want_string(j.at("protocol"), "protocol");
  if (cfg.protocol != "p1" && cfg.protocol != "p2" &&
      !is_hybrid_variant(cfg.protocol) && cfg.protocol != "combined" &&
      cfg.protocol != "weak" && cfg.protocol != "tamper")
    throw ConfigError("protocol",
                      "expected p1|p2|hybrid1|hybrid2|combined|weak|tamper");

  if (j.contains("ell")) {
    cfg.ell = static_cast<int>(want_uint(j.at("ell"), "ell"));
    if (cfg.ell < 1 || cfg.ell > 64)
      throw ConfigError("ell", "expected a length in [1, 64]");
  }
  if (j.contains("inputs")) {
    const auto& in = j.at("inputs");
    if (!in.is_object()) throw ConfigError("inputs", "expected an object");
    auto read_bits = [&](const char* key) -> std::optional<BitString> {
      if (!in.contains(key)) return std::nullopt;
      const std::string s = want_string(in.at(key), std::string("inputs.") + key);
      try {
        BitString b = BitString::parse(s);
        if (b.length() != cfg.ell)
          throw ConfigError(std::string("inputs.") + key,
                            "length does not match ell");
        return b;
      } catch (const ContractViolation& e) {
        throw ConfigError(std::string("inputs.") + key, e.what());
      }
    };
    cfg.s0 = read_bits("s0");
    cfg.s1 = read_bits("s1");
  }
  if (j.contains("choice"))
    cfg.choice = ChoiceBit{want_uint(j.at("choice"), "choice") != 0};
  if (j.contains("k")) {
    cfg.k = static_cast<int>(want_uint(j.at("k"), "k"));
    if (cfg.k < 2 || cfg.k > 30)
      throw ConfigError("k", "expected between 2 and 30 repetitions");
  }
  if (j.contains("open_fraction")) {
    if (!j.at("open_fraction").is_number())
      throw ConfigError("open_fraction", "expected a number");
    cfg.open_fraction = j.at("open_fraction").get<double>();
    if (cfg.open_fraction <= 0.0 || cfg.open_fraction >= 1.0)
      throw ConfigError("open_fraction", "expected a fraction in (0, 1)");
  }
  if (j.contains("mode")) {
    cfg.mode = want_string(j.at("mode"), "mode");
    if (cfg.mode != "exact" && cfg.mode != "montecarlo")
      throw ConfigError("mode", "expected exact|montecarlo");
  }
  if (j.contains("trials")) cfg.trials = want_uint(j.at("trials"), "trials");
  if (j.contains("seed")) cfg.seed = want_uint(j.at("seed"), "seed");
  if (j.contains("group")) {
    const auto& g = j.at("group");
    if (!g.is_object()) throw ConfigError("group", "expected an object");
    cfg.group.p = want_uint(require_field(g, "p"), "group.p");
    cfg.group.q = want_uint(require_field(g, "q"), "group.q");
    cfg.group.g = want_uint(require_field(g, "g"), "group.g");
    try {
      cfg.group.validate();
    } catch (const ContractViolation& e) {
      throw ConfigError("group", e.what());
    }
  }
  if (j.contains("attack")) {
    cfg.attack = want_string(j.at("attack"), "attack");
    if (cfg.attack != "" && cfg.attack != "claim2" && cfg.attack != "collude" &&
        cfg.attack != "tamper" && cfg.attack != "reduction")
      throw ConfigError("attack", "expected claim2|collude|tamper|reduction");
  }
  if (j.contains("linkot")) {
    const std::string realization = want_string(j.at("linkot"), "linkot");
    if (realization == "ddh-demo")
      cfg.linkot_demo = true;
    else if (realization != "ideal")
      throw ConfigError("linkot", "expected ideal|ddh-demo");
    if (cfg.linkot_demo && cfg.mode == "exact")
      throw ConfigError("linkot",
                        "the demo realization draws too much randomness for "
                        "exact mode; use mode=montecarlo");
  }

  try {
    cfg.topology.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError("edges", e.what());
  }
  try {
    cfg.paths.validate(cfg.topology);
  } catch (const ContractViolation& e) {
    throw ConfigError("paths", e.what());
  }
  try {
    cfg.corruption.validate(cfg.topology);
  } catch (const ContractViolation& e) {
    throw ConfigError("corrupt", e.what());
  }
  return cfg;
}

ExperimentConfig ExperimentConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  return from_json(j);
}

namespace {

// ---- exact metrics ---------------------------------------------------------

Rational receiver_distance_exact(const ExperimentConfig& cfg) {
  CorruptionSet coalition{cfg.corruption.corrupted, Controller::alice};
  auto dist_for = [&](const std::string& variant_name) {
    auto view_for = [&](ChoiceBit c) {
      std::function<std::string(RandomSource&)> scenario;
      if (variant_name == "combined") {
        const ExperimentConfig local = cfg;
        scenario = [local, coalition, c](RandomSource& rng) {
          SeededRng ddh(local.seed ^ 0x5bd1e995u);
          PathOTInstance inst{local.paths, local.input_s0(), local.input_s1(),
                              c, Variant::protocol1};
          return run_combined(inst, local.topology, coalition, local.group,
                              rng, {}, &ddh)
              .view.canonical_filtered("p1");
        };
      } else if (variant_name == "weak") {
        const ExperimentConfig local = cfg;
        scenario = [local, coalition, c](RandomSource& rng) {
          WeakOTInstance inst{local.paths,       local.input_s0(),
                              local.input_s1(),  local.input_s0(),
                              local.input_s1(),  local.choice,
                              c};
          return run_weak_ot(inst, local.topology, coalition, rng)
              .view.canonical();
        };
      } else {
        const ExperimentConfig local = cfg;
        const Variant v = variant_from_string(variant_name);
        scenario = [local, coalition, c, v](RandomSource& rng) {
          PathOTInstance inst{local.paths, local.input_s0(), local.input_s1(),
                              c, v};
          return run_variant(inst, local.topology, coalition, rng)
              .view.canonical();
        };
      }
      return exact_view_distribution(scenario);
    };
    return statistical_distance(view_for(ChoiceBit{false}),
                                view_for(ChoiceBit{true}));
  };
  return dist_for(cfg.protocol);
}

Rational sender_epsilon_exact(const ExperimentConfig& cfg,
                              const std::string& variant_name) {
  CorruptionSet coalition{cfg.corruption.corrupted, Controller::bob};
  const Variant v = variant_from_string(variant_name);
  const int n = cfg.paths.count();
  Rational worst(0);
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<ChoiceBit> d = bits_of(mask, n);
    Rational gp0 = sender_security_joint(v, cfg.paths, cfg.topology, coalition,
                                         d, cfg.ell, 0)
                       .guessing_probability();
    Rational gp1 = sender_security_joint(v, cfg.paths, cfg.topology, coalition,
                                         d, cfg.ell, 1)
                       .guessing_probability();
    Rational hidden = gp0 < gp1 ? gp0 : gp1;
    Rational adv = hidden - pow2_inverse(cfg.ell);
    if (adv > worst) worst = adv;
  }
  return worst;
}

Rational correctness_exact(const ExperimentConfig& cfg) {
  const ExperimentConfig local = cfg;
  std::function<bool(RandomSource&)> event;
  const BitString want =
      cfg.choice.value ? cfg.input_s1() : cfg.input_s0();
  if (cfg.protocol == "combined") {
    event = [local, want](RandomSource& rng) {
      SeededRng ddh(local.seed ^ 0x9e3779b9u);
      PathOTInstance inst{local.paths, local.input_s0(), local.input_s1(),
                          local.choice, Variant::protocol1};
      return run_combined(inst, local.topology, local.corruption, local.group,
                          rng, {}, &ddh)
                 .bob_output == want;
    };
  } else if (cfg.protocol == "weak") {
    event = [local](RandomSource& rng) {
      WeakOTInstance inst{local.paths,      local.input_s0(),
                          local.input_s1(), local.input_s1(),
                          local.input_s0(), local.choice,
                          local.choice};
      WeakOTResult r = run_weak_ot(inst, local.topology, local.corruption, rng);
      const BitString want1 =
          local.choice.value ? local.input_s1() : local.input_s0();
      const BitString want2 =
          local.choice.value ? local.input_s0() : local.input_s1();
      return r.out_first == want1 && r.out_second == want2;
    };
  } else if (cfg.protocol == "tamper") {
    event = [local, want](RandomSource& rng) {
      PathOTInstance inst{local.paths, local.input_s0(), local.input_s1(),
                          local.choice, Variant::protocol1};
      TamperOutcome out =
          tamper_check_run(inst, local.topology, local.corruption, local.k,
                           local.open_fraction, rng);
      return out.accepted && out.output.has_value() && *out.output == want;
    };
  } else {
    const Variant v = variant_from_string(cfg.protocol);
    event = [local, want, v](RandomSource& rng) {
      PathOTInstance inst{local.paths, local.input_s0(), local.input_s1(),
                          local.choice, v};
      return run_variant(inst, local.topology, local.corruption, rng)
                 .bob_output == want;
    };
  }
  return exact_event_probability(event);
}

bool honest_alice_neighbor(const ExperimentConfig& cfg) {
  for (int j = 0; j < cfg.paths.count(); ++j)
    if (!cfg.corruption.corrupted.count(cfg.paths.v(j))) return true;
  return false;
}

bool honest_bob_neighbor(const ExperimentConfig& cfg) {
  for (int j = 0; j < cfg.paths.count(); ++j)
    if (!cfg.corruption.corrupted.count(cfg.paths.w(j))) return true;
  return false;
}

void run_protocol_experiment(const ExperimentConfig& cfg,
                             SecurityReport& report) {
  const bool honest_path =
      exists_honest_path(cfg.topology, cfg.paths, cfg.corruption);

  if (cfg.mode == "montecarlo") {
    const ExperimentConfig local = cfg;
    const BitString want =
        cfg.choice.value ? cfg.input_s1() : cfg.input_s0();
    auto trial = [&](RandomSource& rng) {
      if (local.protocol == "combined") {
        PathOTInstance inst{local.paths, local.input_s0(), local.input_s1(),
                            local.choice, Variant::protocol1};
        return run_combined(inst, local.topology, local.corruption,
                            local.group, rng)
                   .bob_output == want;
      }
      if (local.protocol == "weak") {
        WeakOTInstance inst{local.paths,      local.input_s0(),
                            local.input_s1(), local.input_s1(),
                            local.input_s0(), local.choice,
                            local.choice};
        WeakOTResult r =
            run_weak_ot(inst, local.topology, local.corruption, rng);
        const BitString want2 =
            local.choice.value ? local.input_s0() : local.input_s1();
        return r.out_first == want && r.out_second == want2;
      }
      if (local.protocol == "tamper") {
        PathOTInstance inst{local.paths, local.input_s0(), local.input_s1(),
                            local.choice, Variant::protocol1};
        TamperOutcome out =
            tamper_check_run(inst, local.topology, local.corruption, local.k,
                             local.open_fraction, rng);
        return out.accepted && out.output.has_value() && *out.output == want;
      }
      PathOTInstance inst{local.paths, local.input_s0(), local.input_s1(),
                          local.choice, variant_from_string(local.protocol)};
      SimOptions opts;
      if (local.linkot_demo) {
        opts.linkot = LinkOTRealization::ddh_demo;
        opts.demo_group = &local.group;
      }
      return run_variant(inst, local.topology, local.corruption, rng, {},
                         opts)
                 .bob_output == want;
    };
    MonteCarloResult mc = monte_carlo(cfg.trials, cfg.seed, trial);
    report.mc_frequency = mc.frequency;
    report.mc_half_width = mc.half_width99;
    report.add_check("correctness-frequency", "1", std::to_string(mc.frequency),
                     mc.frequency == 1.0);
    return;
  }

  // Exact mode: correctness plus the declared security invariants.
  Rational correct;
  try {
    correct = correctness_exact(cfg);
  } catch (const EnumerationBoundError& e) {
    throw ConfigError("mode", std::string(e.what()) +
                                  " (this configuration needs "
                                  "mode=montecarlo)");
  }
  report.correctness_rate = correct;
  report.add_check("correctness", "1", to_string(correct),
                   correct == Rational(1));

  if (cfg.protocol == "tamper") return;  // wrapper checks live in the attack

  Rational recv = receiver_distance_exact(cfg);
  report.epsilon_receiver = recv;
  if (cfg.protocol == "p1") {
    Rational expect = honest_path ? Rational(0) : Rational(1);
    report.add_check("receiver-view-distance", to_string(expect),
                     to_string(recv), recv == expect);
  } else if (cfg.protocol == "hybrid1") {
    Rational expect = honest_alice_neighbor(cfg) ? Rational(0) : Rational(1);
    report.add_check("receiver-view-distance", to_string(expect),
                     to_string(recv), recv == expect);
  } else if (cfg.protocol == "p2" || cfg.protocol == "hybrid2" ||
             cfg.protocol == "combined" || cfg.protocol == "weak") {
    // p2/hybrid2: unconditional. combined: the candidate-A component alone
    // is independent of the choice. weak: distance on the second choice bit.
    report.add_check("receiver-view-distance", "0", to_string(recv),
                     recv == Rational(0));
  }

  if (cfg.protocol == "p1" || cfg.protocol == "p2" ||
      is_hybrid_variant(cfg.protocol)) {
    if (cfg.paths.count() <= 4) {
      Rational eps = sender_epsilon_exact(cfg, cfg.protocol);
      report.epsilon_sender = eps;
      Rational expect(0);
      if (cfg.protocol == "p2" && !honest_path)
        expect = Rational(1) - pow2_inverse(cfg.ell);
      if (cfg.protocol == "hybrid2" && !honest_bob_neighbor(cfg))
        expect = Rational(1) - pow2_inverse(cfg.ell);
      report.add_check("sender-guessing-advantage", to_string(expect),
                       to_string(eps), eps == expect);
    }
  }
}

void run_claim2_experiment(const ExperimentConfig& cfg,
                           SecurityReport& report) {
  if (cfg.protocol != "p1" && cfg.protocol != "p2")
    throw ConfigError("attack", "claim2 runs on protocol p1 or p2");
  Claim2Setup setup{variant_from_string(cfg.protocol), cfg.topology, cfg.paths,
                    cfg.corruption.corrupted, cfg.ell};
  const double expected =
      cfg.protocol == "p1"
          ? 1.0 - std::pow(2.0, -(cfg.ell + 1))
          : 1.0;
  report.attack_expected = expected;

  if (cfg.mode == "exact") {
    Rational success = claim2_attack_exact(setup);
    report.attack_success_exact = success;
    Rational exact_expected =
        cfg.protocol == "p1" ? Rational(1) - pow2_inverse(cfg.ell + 1)
                             : Rational(1);
    report.add_check("attack-success", to_string(exact_expected),
                     to_string(success), success == exact_expected);
    if (cfg.protocol == "p1") {
      // The achieved advantage over 1/2 rules out any run with a smaller
      // security parameter than 1/4 - 2^-(ell+2).
      Rational threshold = Rational(1, 4) - pow2_inverse(cfg.ell + 2);
      Rational advantage = success - Rational(1, 2);
      report.add_check("epsilon-threshold-exceeded",
                       "> " + to_string(threshold), to_string(advantage),
                       advantage > threshold);
    }
  } else {
    MonteCarloResult mc =
        claim2_attack_montecarlo(setup, cfg.trials, cfg.seed);
    report.mc_frequency = mc.frequency;
    report.mc_half_width = mc.half_width99;
    report.add_check("attack-success-within-0.02", std::to_string(expected),
                     std::to_string(mc.frequency),
                     std::abs(mc.frequency - expected) <= 0.02);
  }
}

void run_collude_experiment(const ExperimentConfig& cfg,
                            SecurityReport& report) {
  CorruptionSet coalition{cfg.paths.all_internal(), Controller::bob};
  const int n = cfg.paths.count();
  bool all_ok = true;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    std::vector<ChoiceBit> d = bits_of(mask, n);
    bool odd = false;
    for (ChoiceBit b : d) odd = odd != b.value;
    const int determined = odd ? 1 : 0;
    Rational gp_det =
        sender_security_joint(Variant::protocol1, cfg.paths, cfg.topology,
                              coalition, d, cfg.ell, determined)
            .guessing_probability();
    Rational gp_hidden =
        sender_security_joint(Variant::protocol1, cfg.paths, cfg.topology,
                              coalition, d, cfg.ell, 1 - determined)
            .guessing_probability();
    all_ok = all_ok && gp_det == Rational(1) &&
             gp_hidden == pow2_inverse(cfg.ell);
  }
  report.add_check("one-input-determined-one-uniform",
                   "guess=1 and guess=" + to_string(pow2_inverse(cfg.ell)),
                   all_ok ? "as expected" : "mismatch", all_ok);
}

void run_tamper_experiment(const ExperimentConfig& cfg,
                           SecurityReport& report) {
  if (cfg.paths.v(0) == cfg.topology.bob)
    throw ConfigError("paths", "tamper attack needs an intermediary on path 1");
  const NodeId flip_node = cfg.paths.v(0);
  CorruptionSet corruption{{flip_node}, Controller::independent};
  const int open_count =
      static_cast<int>(std::llround(cfg.open_fraction * cfg.k));

  // Baseline: one flip steers Bob to the other input.
  {
    SeededRng rng(cfg.seed);
    PathOTInstance inst{cfg.paths, cfg.input_s0(), cfg.input_s1(), cfg.choice,
                        Variant::protocol1};
    BitString out = tamper_attack(0, inst, cfg.topology, rng);
    const BitString want = cfg.choice.value ? cfg.input_s0() : cfg.input_s1();
    report.add_check("unchecked-flip-swaps-output", want.str(), out.str(),
                     out == want);
  }

  // Single tampered run: detection probability is exactly the opened
  // fraction, by walking every audit subset. The fixed catchable inputs make
  // detection a function of the subset alone, so the remaining draws can run
  // on any seed.
  {
    std::vector<TamperRunInputs> fixed(
        static_cast<std::size_t>(cfg.k),
        TamperRunInputs{cfg.input_s0(), cfg.input_s1(), ChoiceBit{false}});
    PathOTInstance inst{cfg.paths, cfg.input_s0(), cfg.input_s1(), cfg.choice,
                        Variant::protocol1};
    const std::uint64_t n_subsets = binomial(cfg.k, open_count);
    if (n_subsets > (1ull << 24))
      throw ConfigError("k", "too many audit subsets to enumerate");
    std::uint64_t detected = 0;
    for (std::uint64_t rank = 0; rank < n_subsets; ++rank) {
      SeededRng rng(cfg.seed);
      TamperOutcome out = tamper_check_run(
          inst, cfg.topology, corruption, cfg.k, cfg.open_fraction, rng,
          flip_choice_in_run_hooks(flip_node, 0), &fixed, rank);
      if (!out.accepted) ++detected;
    }
    Rational detection(static_cast<long long>(detected),
                       static_cast<long long>(n_subsets));
    Rational expect(open_count, cfg.k);
    report.attack_success_exact = detection;
    report.add_check("single-flip-detection", to_string(expect),
                     to_string(detection), detection == expect);
  }

  // Always-flip adversary, Monte Carlo over fresh run inputs.
  {
    const ExperimentConfig local = cfg;
    auto trial = [local, flip_node, corruption](RandomSource& rng) {
      PathOTInstance inst{local.paths, local.input_s0(), local.input_s1(),
                          local.choice, Variant::protocol1};
      TamperOutcome out = tamper_check_run(inst, local.topology, corruption,
                                           local.k, local.open_fraction, rng,
                                           flip_choice_hooks(flip_node));
      return !out.accepted;
    };
    MonteCarloResult mc = monte_carlo(cfg.trials, cfg.seed, trial);
    const double expected =
        1.0 - std::pow(2.0, -static_cast<double>(cfg.ell * open_count));
    report.mc_frequency = mc.frequency;
    report.mc_half_width = mc.half_width99;
    report.attack_expected = expected;
    report.add_check("always-flip-detection-within-0.02",
                     std::to_string(expected), std::to_string(mc.frequency),
                     std::abs(mc.frequency - expected) <= 0.02);
  }
}

void run_reduction_experiment(const ExperimentConfig& cfg,
                              SecurityReport& report) {
  if (cfg.paths.count() < 2)
    throw ConfigError("paths", "the reduction needs at least two paths");
  std::vector<int> anne{0};
  std::vector<int> bill;
  for (int j = 1; j < cfg.paths.count(); ++j) bill.push_back(j);
  TwoPartyOT two_party = anne_bill_reduction(
      Variant::protocol1, cfg.topology, cfg.paths, anne, bill);

  // Correct on the configured inputs, for every tape.
  {
    const ExperimentConfig local = cfg;
    const BitString want =
        cfg.choice.value ? cfg.input_s1() : cfg.input_s0();
    std::function<bool(RandomSource&)> event =
        [&two_party, local, want](RandomSource& rng) {
          return two_party.run(local.input_s0(), local.input_s1(),
                               local.choice, rng) == want;
        };
    Rational correct = exact_event_probability(event);
    report.correctness_rate = correct;
    report.add_check("reduction-correct", "1", to_string(correct),
                     correct == Rational(1));
  }

  // Dishonest Bill: one input hidden for every choice vector.
  {
    bool ok = true;
    const int n = cfg.paths.count();
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
      std::vector<ChoiceBit> d = bits_of(mask, n);
      bool odd = false;
      for (ChoiceBit b : d) odd = odd != b.value;
      Rational gp_hidden =
          sender_security_joint(Variant::protocol1, cfg.paths, cfg.topology,
                                two_party.bill_coalition(), d, cfg.ell,
                                odd ? 0 : 1)
              .guessing_probability();
      ok = ok && gp_hidden == pow2_inverse(cfg.ell);
    }
    report.add_check("reduction-sender-secure",
                     to_string(pow2_inverse(cfg.ell)),
                     ok ? "as expected" : "mismatch", ok);
  }

  // Dishonest Anne: choice hidden.
  {
    const ExperimentConfig local = cfg;
    auto view_for = [&](ChoiceBit c) {
      std::function<std::string(RandomSource&)> scenario =
          [&two_party, local, c](RandomSource& rng) {
            return two_party.view_against(Controller::alice, local.input_s0(),
                                          local.input_s1(), c, rng);
          };
      return exact_view_distribution(scenario);
    };
    Rational dist = statistical_distance(view_for(ChoiceBit{false}),
                                         view_for(ChoiceBit{true}));
    report.epsilon_receiver = dist;
    report.add_check("reduction-choice-hidden", "0", to_string(dist),
                     dist == Rational(0));
  }
}

}  // namespace

SecurityReport run_experiment(const ExperimentConfig& cfg) {
  SecurityReport report;
  report.protocol = cfg.protocol;
  report.attack = cfg.attack;
  report.ell = cfg.ell;
  report.n_paths = cfg.paths.count();
  report.corrupted = join_ids(cfg.corruption.corrupted);
  report.controller = to_string(cfg.corruption.controller);
  report.honest_path =
      exists_honest_path(cfg.topology, cfg.paths, cfg.corruption);
  report.disjoint_paths = cfg.paths.internally_disjoint();
  report.separating = separates(cfg.topology, cfg.corruption.corrupted);
  report.mode = cfg.mode;
  report.trials = cfg.trials;
  report.seed = cfg.seed;

  if (cfg.attack == "claim2")
    run_claim2_experiment(cfg, report);
  else if (cfg.attack == "collude")
    run_collude_experiment(cfg, report);
  else if (cfg.attack == "tamper")
    run_tamper_experiment(cfg, report);
  else if (cfg.attack == "reduction")
    run_reduction_experiment(cfg, report);
  else
    run_protocol_experiment(cfg, report);
  return report;
}

std::string run_sweep_csv(const ExperimentConfig& base,
                          const nlohmann::json& sweep_spec) {
  if (!sweep_spec.is_object())
    throw ConfigError("sweep", "sweep spec must be a JSON object");

  std::vector<int> ells;
  if (sweep_spec.contains("ell"))
    for (const auto& v : sweep_spec.at("ell"))
      ells.push_back(static_cast<int>(want_uint(v, "sweep.ell")));
  std::vector<int> n_paths;
  if (sweep_spec.contains("n_paths"))
    for (const auto& v : sweep_spec.at("n_paths"))
      n_paths.push_back(static_cast<int>(want_uint(v, "sweep.n_paths")));
  std::vector<std::set<NodeId>> subsets;
  if (sweep_spec.contains("corruption_subsets"))
    for (const auto& sub : sweep_spec.at("corruption_subsets")) {
      std::set<NodeId> s;
      for (const auto& v : sub)
        s.insert(want_string(v, "sweep.corruption_subsets"));
      subsets.push_back(std::move(s));
    }

  std::ostringstream csv;
  csv << "protocol,attack,ell,n_paths,corrupt,controller,honest_path,"
         "disjoint_paths,correctness_rate,epsilon_receiver,epsilon_sender,"
         "attack_success,attack_expected,all_pass\n";
  if (ells.empty() && n_paths.empty() && subsets.empty()) return csv.str();

  // Absent dimensions inherit the base configuration.
  if (ells.empty()) ells.push_back(base.ell);
  if (n_paths.empty()) n_paths.push_back(base.paths.count());
  if (subsets.empty()) subsets.push_back(base.corruption.corrupted);

  auto fmt_rational = [](const std::optional<Rational>& r) {
    return r.has_value() ? to_string(*r) : std::string("-");
  };

  for (int ell : ells)
    for (int n : n_paths)
      for (const auto& subset : subsets) {
        ExperimentConfig cfg = base;
        cfg.ell = ell;
        cfg.s0.reset();
        cfg.s1.reset();
        if (n != base.paths.count()) {
          if (n < 1 || n > base.paths.count())
            throw ConfigError("sweep.n_paths",
                              "path count outside the configured path set");
          cfg.paths.paths.assign(base.paths.paths.begin(),
                                 base.paths.paths.begin() + n);
        }
        cfg.corruption.corrupted = subset;
        cfg.corruption.validate(cfg.topology);
        SecurityReport r = run_experiment(cfg);
        csv << r.protocol << ',' << (r.attack.empty() ? "-" : r.attack) << ','
            << r.ell << ',' << r.n_paths << ',' << r.corrupted << ','
            << r.controller << ',' << (r.honest_path ? 1 : 0) << ','
            << (r.disjoint_paths ? 1 : 0) << ','
            << fmt_rational(r.correctness_rate) << ','
            << fmt_rational(r.epsilon_receiver) << ','
            << fmt_rational(r.epsilon_sender) << ',';
        if (r.attack_success_exact.has_value())
          csv << to_string(*r.attack_success_exact);
        else if (r.mc_frequency.has_value())
          csv << *r.mc_frequency;
        else
          csv << '-';
        csv << ',';
        if (r.attack_expected.has_value())
          csv << *r.attack_expected;
        else
          csv << '-';
        csv << ',' << (r.all_pass() ? 1 : 0) << '\n';
      }
  return csv.str();
}

std::string run_transcript(const ExperimentConfig& cfg) {
  SeededRng rng(cfg.seed);
  if (cfg.protocol == "combined") {
    PathOTInstance inst{cfg.paths, cfg.input_s0(), cfg.input_s1(), cfg.choice,
                        Variant::protocol1};
    ProtocolResult r =
        run_combined(inst, cfg.topology, cfg.corruption, cfg.group, rng);
    return transcript_to_jsonl(r.transcript, r.sessions, cfg.topology,
                               cfg.corruption);
  }
  if (cfg.protocol == "weak") {
    WeakOTInstance inst{cfg.paths,      cfg.input_s0(), cfg.input_s1(),
                        cfg.input_s0(), cfg.input_s1(), cfg.choice,
                        cfg.choice};
    WeakOTResult r = run_weak_ot(inst, cfg.topology, cfg.corruption, rng);
    return transcript_to_jsonl(r.transcript, r.sessions, cfg.topology,
                               cfg.corruption);
  }
  if (cfg.protocol == "p1" || cfg.protocol == "p2" ||
      is_hybrid_variant(cfg.protocol)) {
    PathOTInstance inst{cfg.paths, cfg.input_s0(), cfg.input_s1(), cfg.choice,
                        variant_from_string(cfg.protocol)};
    SimOptions opts;
    if (cfg.linkot_demo) {
      opts.linkot = LinkOTRealization::ddh_demo;
      opts.demo_group = &cfg.group;
    }
    ProtocolResult r =
        run_variant(inst, cfg.topology, cfg.corruption, rng, {}, opts);
    return transcript_to_jsonl(r.transcript, r.sessions, cfg.topology,
                               cfg.corruption);
  }
  throw ConfigError("protocol",
                    "transcript export supports p1|p2|hybrid1|hybrid2|"
                    "combined|weak");
}

}  // namespace pathot
