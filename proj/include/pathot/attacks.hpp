#pragma once

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pathot/distribution.hpp"
#include "pathot/protocols.hpp"

namespace pathot {

/// A packaged dishonest behaviour: who must be corrupted, what the corrupted
/// nodes do, and how the coalition turns its view into a guess.
struct AttackStrategy {
  std::string name;
  CorruptionSet corruption;
  AdversaryHooks hooks;
  std::function<std::string(const AdversaryView&)> postprocess;
};

struct ColludingBobResult {
  BitString learned;       // s_{d1+...+dN}, reconstructed from the view
  int determined_index;    // which input the coalition pinned down
  AdversaryView view;
};

/// Bob and all intermediaries run protocol 1 with arbitrary link-OT choices
/// d1..dN; the coalition XORs the transferred values into s_{d1+...+dN}.
/// The other input stays information-theoretically hidden (certified by
/// sender_security_joint).
ColludingBobResult colluding_bob_attack(const std::vector<ChoiceBit>& d,
                                        const PathOTInstance& inst,
                                        const NetworkTopology& topo,
                                        RandomSource& rng);

/// Exact joint distribution of (value of s_target, Bob-coalition view) over
/// uniformly random inputs, with the dishonest receiver playing choice
/// vector d. guessing_probability() of the result is 1 when the coalition
/// determines the input and 2^-ell when it is perfectly hidden.
JointDistribution sender_security_joint(
    Variant variant, const PathSet& paths, const NetworkTopology& topo,
    const CorruptionSet& corruption, const std::vector<ChoiceBit>& d, int ell,
    int target_index, std::uint64_t bound = kEnumerationBound);

/// Honest-path-necessity attack: Alice runs honestly with random inputs,
/// picks b at random, asks the separating coalition M for a maximum-
/// likelihood guess of s_b, and outputs b when M is right and 1-b when M is
/// wrong. On protocol 1 this guesses Bob's choice with probability exactly
/// 1 - 2^-(ell+1). On protocol 2 the roles mirror: M reconstructs both of
/// Alice's inputs for a dishonest Bob, and the reported success is the
/// probability that both maximum-likelihood guesses are right (exactly 1 on
/// a separating set).
struct Claim2Setup {
  Variant variant = Variant::protocol1;
  NetworkTopology topo;
  PathSet paths;
  std::set<NodeId> m;  // the candidate separating set
  int ell = 1;
};

/// Throws NotSeparatingError when m does not separate alice from bob
/// (pass require_separating = false to probe non-separating sets; the
/// identical strategy then degrades to 1/2 on protocol 1).
Rational claim2_attack_exact(const Claim2Setup& setup,
                             bool require_separating = true);
MonteCarloResult claim2_attack_montecarlo(const Claim2Setup& setup,
                                          std::uint64_t trials,
                                          std::uint64_t seed,
                                          bool require_separating = true);

/// Non-robust baseline: an independent corrupted path neighbour flips the
/// choice share it feeds into its link-OT, steering honest Bob's output to
/// s_{1-c}. Returns Bob's output.
BitString tamper_attack(int flip_path_index, const PathOTInstance& inst,
                        const NetworkTopology& topo, RandomSource& rng);

/// Hooks for the same tampering inside tamper_check_run.
AdversaryHooks flip_choice_hooks(const NodeId& node);
AdversaryHooks flip_choice_in_run_hooks(const NodeId& node, int run_index);

/// Two-party OT obtained by letting Anne simulate Alice plus the nodes on
/// her paths and Bill simulate Bob plus the nodes on his. Whichever side is
/// dishonest, the other side's simulated path is an honest path of the
/// underlying protocol, so the reduction inherits its guarantees.
class TwoPartyOT {
public:
  TwoPartyOT(Variant variant, NetworkTopology inner, PathSet paths,
             std::vector<int> anne_paths, std::vector<int> bill_paths);

  static constexpr const char* kAnne = "anne";
  static constexpr const char* kBill = "bill";

  NetworkTopology two_node_topology() const;
  const NetworkTopology& inner_topology() const { return inner_; }
  const PathSet& paths() const { return paths_; }
  CorruptionSet anne_coalition() const;
  CorruptionSet bill_coalition() const;

  BitString run(const BitString& s0, const BitString& s1, ChoiceBit c,
                RandomSource& rng) const;
  /// Canonical coalition view of the dishonest side for one execution; a
  /// dishonest Bill may force his per-path link-OT choices.
  std::string view_against(
      Controller dishonest_side, const BitString& s0, const BitString& s1,
      ChoiceBit c, RandomSource& rng,
      const std::optional<std::vector<ChoiceBit>>& bill_choices =
          std::nullopt) const;

private:
  Variant variant_;
  NetworkTopology inner_;
  PathSet paths_;
  std::set<NodeId> anne_nodes_;
  std::set<NodeId> bill_nodes_;
};

TwoPartyOT anne_bill_reduction(Variant variant, const NetworkTopology& topo,
                               const PathSet& paths,
                               const std::vector<int>& anne_paths,
                               const std::vector<int>& bill_paths);

/// The assembled adversary against the combined protocol: dishonest Alice
/// plus the separating set reconstruct cA from the protocol-1 shares and
/// attack the DDH ciphertext for cB. Its postprocess answers "0"/"1", or "?"
/// when the solver refuses and only a blind guess remains.
AttackStrategy combined_backup_strategy(const std::set<NodeId>& m,
                                        const CyclicGroup& grp, int n_paths);

/// Guess frequency of the strategy above: 1 on a brute-forceable group,
/// 1/2 when the solver refuses.
MonteCarloResult combined_backup_guess(const NetworkTopology& topo,
                                       const PathSet& paths,
                                       const std::set<NodeId>& m,
                                       const CyclicGroup& grp, int ell,
                                       std::uint64_t trials,
                                       std::uint64_t seed);

}  // namespace pathot
