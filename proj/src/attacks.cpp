#include "pathot/attacks.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "pathot/ddh_ot.hpp"

namespace pathot {

namespace {

CorruptionSet everyone_with_bob(const PathSet& paths) {
  return CorruptionSet{paths.all_internal(), Controller::bob};
}

ChoiceBit parity(const std::vector<ChoiceBit>& d) {
  ChoiceBit acc{false};
  for (ChoiceBit b : d) acc = acc ^ b;
  return acc;
}

struct HonestSample {
  std::string view;
  BitString s0;
  BitString s1;
  ChoiceBit c;
};

// One honest execution on uniformly random inputs, seen by the coalition.
HonestSample honest_random_run(Variant variant, const NetworkTopology& topo,
                               const PathSet& paths,
                               const CorruptionSet& corruption, int ell,
                               RandomSource& rng) {
  HonestSample s;
  s.s0 = BitString::random(rng, ell);
  s.s1 = BitString::random(rng, ell);
  s.c = ChoiceBit::random(rng);
  PathOTInstance inst{paths, s.s0, s.s1, s.c, variant};
  ProtocolResult res = run_variant(inst, topo, corruption, rng);
  s.view = res.view.canonical();
  return s;
}

// M's per-input maximum-likelihood tables, from exact enumeration of
// everything M does not know.
std::pair<JointDistribution, JointDistribution> build_ml_joints(
    const Claim2Setup& setup, const CorruptionSet& m_only) {
  std::function<std::pair<std::string, std::string>(RandomSource&)> tagged =
      [&](RandomSource& rng) {
        HonestSample s = honest_random_run(setup.variant, setup.topo,
                                           setup.paths, m_only, setup.ell,
                                           rng);
        return std::make_pair(s.s0.str() + "|" + s.s1.str(), s.view);
      };
  JointDistribution both = exact_joint_distribution(tagged);
  JointDistribution joint0, joint1;
  for (const auto& [view, secrets] : both.by_view)
    for (const auto& [pair, p] : secrets) {
      auto cut = pair.find('|');
      joint0.by_view[view][pair.substr(0, cut)] += p;
      joint1.by_view[view][pair.substr(cut + 1)] += p;
    }
  return {std::move(joint0), std::move(joint1)};
}

}  // namespace

ColludingBobResult colluding_bob_attack(const std::vector<ChoiceBit>& d,
                                        const PathOTInstance& inst,
                                        const NetworkTopology& topo,
                                        RandomSource& rng) {
  if (static_cast<int>(d.size()) != inst.paths.count())
    throw ContractViolation("colluding bob: one choice per path");
  CorruptionSet corruption = everyone_with_bob(inst.paths);
  AdversaryHooks hooks;
  hooks.bob_choice_vector = d;
  ProtocolResult res = run_protocol1(inst, topo, corruption, rng, hooks);

  // The coalition saw every transferred value t_{d_j, j}; their XOR is the
  // input selected by the parity of d.
  BitString learned = BitString::zero(inst.ell());
  for (const OTSessionRecord& s : res.sessions) learned = learned ^ s.output;
  return {learned, parity(d).value ? 1 : 0, res.view};
}

JointDistribution sender_security_joint(
    Variant variant, const PathSet& paths, const NetworkTopology& topo,
    const CorruptionSet& corruption, const std::vector<ChoiceBit>& d, int ell,
    int target_index, std::uint64_t bound) {
  if (static_cast<int>(d.size()) != paths.count())
    throw ContractViolation("sender_security_joint: one choice per path");
  if (target_index != 0 && target_index != 1)
    throw ContractViolation("sender_security_joint: target is s0 or s1");
  AdversaryHooks hooks;
  hooks.bob_choice_vector = d;
  auto scenario = [&](RandomSource& rng) {
    BitString s0 = BitString::random(rng, ell);
    BitString s1 = BitString::random(rng, ell);
    PathOTInstance inst{paths, s0, s1, ChoiceBit{false}, variant};
    ProtocolResult res = run_variant(inst, topo, corruption, rng, hooks);
    return std::make_pair(target_index == 0 ? s0.str() : s1.str(),
                          res.view.canonical());
  };
  return exact_joint_distribution(scenario, bound);
}

Rational claim2_attack_exact(const Claim2Setup& setup,
                             bool require_separating) {
  if (require_separating && !separates(setup.topo, setup.m))
    throw NotSeparatingError("corruption set does not separate alice from bob");
  CorruptionSet m_only{setup.m, Controller::independent};
  auto [joint0, joint1] = build_ml_joints(setup, m_only);

  if (setup.variant == Variant::protocol2) {
    // Mirrored break: a dishonest Bob asks M for both inputs.
    std::function<bool(RandomSource&)> event = [&](RandomSource& rng) {
      HonestSample s = honest_random_run(setup.variant, setup.topo,
                                         setup.paths, m_only, setup.ell, rng);
      return joint0.ml_guess(s.view) == s.s0.str() &&
             joint1.ml_guess(s.view) == s.s1.str();
    };
    return exact_event_probability(event);
  }

  // Alice's b-game on protocol 1.
  std::function<bool(RandomSource&)> event = [&](RandomSource& rng) {
    HonestSample s = honest_random_run(setup.variant, setup.topo, setup.paths,
                                       m_only, setup.ell, rng);
    bool b = rng.draw_bit();
    const JointDistribution& joint = b ? joint1 : joint0;
    bool m_right = joint.ml_guess(s.view) == (b ? s.s1.str() : s.s0.str());
    bool guess = m_right ? b : !b;
    return guess == s.c.value;
  };
  return exact_event_probability(event);
}

MonteCarloResult claim2_attack_montecarlo(const Claim2Setup& setup,
                                          std::uint64_t trials,
                                          std::uint64_t seed,
                                          bool require_separating) {
  if (require_separating && !separates(setup.topo, setup.m))
    throw NotSeparatingError("corruption set does not separate alice from bob");
  CorruptionSet m_only{setup.m, Controller::independent};
  auto [joint0, joint1] = build_ml_joints(setup, m_only);

  auto trial = [&](RandomSource& rng) {
    HonestSample s = honest_random_run(setup.variant, setup.topo, setup.paths,
                                       m_only, setup.ell, rng);
    if (setup.variant == Variant::protocol2)
      return joint0.ml_guess(s.view) == s.s0.str() &&
             joint1.ml_guess(s.view) == s.s1.str();
    bool b = rng.draw_bit();
    const JointDistribution& joint = b ? joint1 : joint0;
    bool m_right = joint.ml_guess(s.view) == (b ? s.s1.str() : s.s0.str());
    bool guess = m_right ? b : !b;
    return guess == s.c.value;
  };
  return monte_carlo(trials, seed, trial);
}

BitString tamper_attack(int flip_path_index, const PathOTInstance& inst,
                        const NetworkTopology& topo, RandomSource& rng) {
  if (flip_path_index < 0 || flip_path_index >= inst.paths.count())
    throw ContractViolation("tamper_attack: path index out of range");
  const NodeId node = inst.paths.v(flip_path_index);
  if (node == topo.bob)
    throw ContractViolation(
        "tamper_attack: the flipped path has no intermediary");
  CorruptionSet corruption{{node}, Controller::independent};
  ProtocolResult res =
      run_protocol1(inst, topo, corruption, rng, flip_choice_hooks(node));
  return res.bob_output;
}

AdversaryHooks flip_choice_hooks(const NodeId& node) {
  AdversaryHooks hooks;
  hooks.ot_choice = [node](const NodeId& receiver, const std::string&,
                           ChoiceBit honest) {
    return receiver == node ? honest.flipped() : honest;
  };
  return hooks;
}

AdversaryHooks flip_choice_in_run_hooks(const NodeId& node, int run_index) {
  AdversaryHooks hooks;
  const std::string target = tamper_run_context(run_index);
  hooks.ot_choice = [node, target](const NodeId& receiver,
                                   const std::string& context,
                                   ChoiceBit honest) {
    return receiver == node && context == target ? honest.flipped() : honest;
  };
  return hooks;
}

TwoPartyOT::TwoPartyOT(Variant variant, NetworkTopology inner, PathSet paths,
                       std::vector<int> anne_paths, std::vector<int> bill_paths)
    : variant_(variant), inner_(std::move(inner)), paths_(std::move(paths)) {
  if (anne_paths.empty() || bill_paths.empty())
    throw ContractViolation("reduction: both sides need at least one path");
  std::vector<bool> covered(static_cast<std::size_t>(paths_.count()), false);
  auto mark = [&](const std::vector<int>& side) {
    for (int j : side) {
      if (j < 0 || j >= paths_.count())
        throw ContractViolation("reduction: path index out of range");
      if (covered[static_cast<std::size_t>(j)])
        throw ContractViolation("reduction: path assigned twice");
      covered[static_cast<std::size_t>(j)] = true;
    }
  };
  mark(anne_paths);
  mark(bill_paths);
  for (bool b : covered)
    if (!b) throw ContractViolation("reduction: partition must cover all paths");

  // A node shared between paths follows the first path that contains it.
  std::set<NodeId> assigned;
  for (int j = 0; j < paths_.count(); ++j) {
    const bool is_anne =
        std::find(anne_paths.begin(), anne_paths.end(), j) != anne_paths.end();
    for (const NodeId& n : paths_.internal_nodes(j)) {
      if (!assigned.insert(n).second) continue;
      (is_anne ? anne_nodes_ : bill_nodes_).insert(n);
    }
  }
}

NetworkTopology TwoPartyOT::two_node_topology() const {
  NetworkTopology t;
  t.nodes = {kAnne, kBill};
  t.alice = kAnne;
  t.bob = kBill;
  t.add_edge(kAnne, kBill);
  return t;
}

CorruptionSet TwoPartyOT::anne_coalition() const {
  return {anne_nodes_, Controller::alice};
}

CorruptionSet TwoPartyOT::bill_coalition() const {
  return {bill_nodes_, Controller::bob};
}

BitString TwoPartyOT::run(const BitString& s0, const BitString& s1,
                          ChoiceBit c, RandomSource& rng) const {
  PathOTInstance inst{paths_, s0, s1, c, variant_};
  CorruptionSet honest;
  return run_variant(inst, inner_, honest, rng).bob_output;
}

std::string TwoPartyOT::view_against(
    Controller dishonest_side, const BitString& s0, const BitString& s1,
    ChoiceBit c, RandomSource& rng,
    const std::optional<std::vector<ChoiceBit>>& bill_choices) const {
  if (dishonest_side == Controller::independent)
    throw ContractViolation("reduction: the dishonest side is anne or bill");
  CorruptionSet corruption = dishonest_side == Controller::alice
                                 ? anne_coalition()
                                 : bill_coalition();
  AdversaryHooks hooks;
  if (dishonest_side == Controller::bob && bill_choices.has_value())
    hooks.bob_choice_vector = *bill_choices;
  PathOTInstance inst{paths_, s0, s1, c, variant_};
  ProtocolResult res = run_variant(inst, inner_, corruption, rng, hooks);
  return res.view.canonical();
}

TwoPartyOT anne_bill_reduction(Variant variant, const NetworkTopology& topo,
                               const PathSet& paths,
                               const std::vector<int>& anne_paths,
                               const std::vector<int>& bill_paths) {
  return TwoPartyOT(variant, topo, paths, anne_paths, bill_paths);
}

AttackStrategy combined_backup_strategy(const std::set<NodeId>& m,
                                        const CyclicGroup& grp, int n_paths) {
  AttackStrategy strategy;
  strategy.name = "combined-backup";
  strategy.corruption = {m, Controller::alice};
  strategy.postprocess = [grp, n_paths](const AdversaryView& view)
      -> std::string {
    // Reassemble cA from the candidate-A choice shares the coalition saw,
    // then attack the DDH ciphertext for cB. "?" means the strategy has to
    // fall back to a blind guess.
    std::map<std::string, bool> shares;
    std::uint64_t pk = 0;
    HomCiphertext choice_ct;
    for (const TranscriptEntry& e : view.entries) {
      if (e.context == "p1" && e.kind.rfind("cshare.", 0) == 0)
        shares[e.kind] = !e.payload.empty() && e.payload[0] == '1';
      if (e.context == "ddh" && e.kind == "ddh.pk")
        pk = std::strtoull(e.payload.c_str(), nullptr, 10);
      if (e.context == "ddh" && e.kind == "ddh.ct") {
        auto cut = e.payload.find(',');
        choice_ct.a =
            std::strtoull(e.payload.substr(0, cut).c_str(), nullptr, 10);
        choice_ct.b =
            std::strtoull(e.payload.substr(cut + 1).c_str(), nullptr, 10);
      }
    }
    if (static_cast<int>(shares.size()) != n_paths || pk == 0) return "?";
    bool c_a = false;
    for (const auto& [_, bit] : shares) c_a = c_a != bit;
    try {
      bool c_b = sender_choice_attack(grp, pk, choice_ct) == 1;
      return (c_a != c_b) ? "1" : "0";
    } catch (const RefusesToBruteForceError&) {
      return "?";
    }
  };
  return strategy;
}

MonteCarloResult combined_backup_guess(const NetworkTopology& topo,
                                       const PathSet& paths,
                                       const std::set<NodeId>& m,
                                       const CyclicGroup& grp, int ell,
                                       std::uint64_t trials,
                                       std::uint64_t seed) {
  AttackStrategy strategy = combined_backup_strategy(m, grp, paths.count());

  auto trial = [&](RandomSource& rng) {
    BitString s0 = BitString::random(rng, ell);
    BitString s1 = BitString::random(rng, ell);
    ChoiceBit c = ChoiceBit::random(rng);
    PathOTInstance inst{paths, s0, s1, c, Variant::protocol1};
    ProtocolResult res = run_combined(inst, topo, strategy.corruption, grp,
                                      rng, strategy.hooks);
    std::string guess = strategy.postprocess(res.view);
    if (guess == "?") return rng.draw_bit() == c.value;
    return (guess == "1") == c.value;
  };
  return monte_carlo(trials, seed, trial);
}

}  // namespace pathot
