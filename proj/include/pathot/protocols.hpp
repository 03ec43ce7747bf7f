#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pathot/bitstring.hpp"
#include "pathot/group.hpp"
#include "pathot/sim.hpp"
#include "pathot/topology.hpp"

namespace pathot {

enum class Variant { protocol1, protocol2, hybrid1, hybrid2 };

std::string to_string(Variant v);
Variant variant_from_string(const std::string& s);

/// One path-OT execution: Alice holds (s0, s1), Bob holds the choice bit,
/// and the transfer runs over the given alice-to-bob paths.
struct PathOTInstance {
  PathSet paths;
  BitString s0;
  BitString s1;
  ChoiceBit choice;
  Variant variant = Variant::protocol1;

  int ell() const { return s0.length(); }
  void validate(const NetworkTopology& topo) const;
};

struct ProtocolResult {
  BitString bob_output;
  std::vector<TranscriptEntry> transcript;
  std::vector<OTSessionRecord> sessions;
  AdversaryView view;
};

/// Bob XOR-shares his choice along the paths; Alice masks her inputs with
/// keys that cancel and runs one link-OT with each of her path neighbours;
/// the chosen masked values return to Bob, whose XOR is s_choice.
/// Unconditionally secure for Alice; hides the choice when an honest path
/// exists.
ProtocolResult run_protocol1(const PathOTInstance& inst,
                             const NetworkTopology& topo,
                             const CorruptionSet& corruption, RandomSource& rng,
                             const AdversaryHooks& hooks = {},
                             const SimOptions& options = {});

/// Alice XOR-shares both inputs to Bob's path neighbours; Bob runs one
/// link-OT per neighbour with the same choice and XORs the outputs.
/// Mirrored security profile.
ProtocolResult run_protocol2(const PathOTInstance& inst,
                             const NetworkTopology& topo,
                             const CorruptionSet& corruption, RandomSource& rng,
                             const AdversaryHooks& hooks = {},
                             const SimOptions& options = {});

/// Same algebra, but the share-distribution messages travel on direct
/// private channels to the relevant neighbour instead of along the path.
/// Requires instance.variant hybrid1 or hybrid2.
ProtocolResult run_hybrid(const PathOTInstance& inst,
                          const NetworkTopology& topo,
                          const CorruptionSet& corruption, RandomSource& rng,
                          const AdversaryHooks& hooks = {},
                          const SimOptions& options = {});

/// Dispatch on instance.variant.
ProtocolResult run_variant(const PathOTInstance& inst,
                           const NetworkTopology& topo,
                           const CorruptionSet& corruption, RandomSource& rng,
                           const AdversaryHooks& hooks = {},
                           const SimOptions& options = {});

/// XOR combiner over two candidates: protocol 1 on masked inputs
/// (s0+r, s1+r) with share cA of the choice, and a classical DDH OT on
/// (r, s0+s1+r) with the complementary share cB, its messages routed along
/// path 1. Bob outputs the XOR of the candidates' outputs. Secure if either
/// an honest path exists or the adversary cannot break DDH.
///
/// `ddh_rng`, when given, sources the DDH candidate's randomness separately;
/// candidate-A exact enumerations use this (the DDH draws cannot appear in a
/// candidate-A-filtered view).
ProtocolResult run_combined(const PathOTInstance& inst,
                            const NetworkTopology& topo,
                            const CorruptionSet& corruption,
                            const CyclicGroup& grp, RandomSource& rng,
                            const AdversaryHooks& hooks = {},
                            RandomSource* ddh_rng = nullptr);

/// Four inputs, two choice bits: protocol 1 on (s00, s01) with choice c,
/// then protocol 2 on (s10, s11) with choice c2. Honest Bob learns exactly
/// (s_{0c}, s_{1c2}).
struct WeakOTInstance {
  PathSet paths;
  BitString s00, s01, s10, s11;
  ChoiceBit c;
  ChoiceBit c2;

  void validate(const NetworkTopology& topo) const;
};

struct WeakOTResult {
  BitString out_first;
  BitString out_second;
  std::vector<TranscriptEntry> transcript;
  std::vector<OTSessionRecord> sessions;
  AdversaryView view;
};

WeakOTResult run_weak_ot(const WeakOTInstance& inst,
                         const NetworkTopology& topo,
                         const CorruptionSet& corruption, RandomSource& rng,
                         const AdversaryHooks& hooks = {});

/// Cut-and-choose wrapper around protocol 1: k runs on fresh random inputs,
/// a uniform size-(open_fraction*k) subset is opened and checked over a
/// direct authenticated channel, and one surviving run is re-based to the
/// real inputs with XOR offset announcements.
struct TamperRunInputs {
  BitString s0;
  BitString s1;
  ChoiceBit c;
};

struct TamperOutcome {
  bool accepted = false;
  std::optional<BitString> output;     // set when accepted
  std::optional<int> aborted_run;      // offending run index otherwise
  std::vector<int> opened;             // the audited subset
};

TamperOutcome tamper_check_run(
    const PathOTInstance& inst, const NetworkTopology& topo,
    const CorruptionSet& corruption, int k, double open_fraction,
    RandomSource& rng, const AdversaryHooks& hooks = {},
    const std::vector<TamperRunInputs>* fixed_run_inputs = nullptr,
    std::optional<std::uint64_t> fixed_subset_index = std::nullopt);

/// Contexts inside tamper_check_run are "run<i>"; hooks can target one run.
std::string tamper_run_context(int run_index);

std::uint64_t binomial(int n, int k);
/// Lexicographic combination of given rank: the rank-th size-k subset of
/// {0..n-1}.
std::vector<int> unrank_combination(std::uint64_t rank, int n, int k);

}  // namespace pathot
