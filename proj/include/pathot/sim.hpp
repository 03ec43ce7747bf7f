#pragma once

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "pathot/bitstring.hpp"
#include "pathot/random.hpp"
#include "pathot/topology.hpp"

namespace pathot {

struct CyclicGroup;

/// One delivered hop of classical communication.
struct TranscriptEntry {
  int round = 0;
  NodeId sender;
  NodeId receiver;
  std::string kind;     // e.g. "cshare.1", "tvalue.2"
  std::string payload;  // serialized value as transmitted on this hop
  std::string context;  // protocol component label, used for sub-view filters
  bool direct = false;  // private overlay channel instead of a topology edge
};

/// One link-OT invocation, with the inputs/choice actually used.
struct OTSessionRecord {
  int round = 0;
  NodeId sender;
  NodeId receiver;
  BitString m0;
  BitString m1;
  ChoiceBit choice;
  BitString output;
  std::string context;
};

/// A fact local to one party (inputs, drawn randomness, computed outputs).
struct Note {
  NodeId node;
  std::string key;
  std::string value;
  std::string context;
};

/// Adversary-supplied behaviour for corrupted nodes. Hooks fire only at
/// nodes in the corrupted set; dishonest endpoint behaviour is expressed
/// through bob_choice_vector or dedicated attack drivers.
struct AdversaryHooks {
  /// Called when a corrupted node transmits a hop (including the first hop of
  /// a message it originates). Returns the payload to put on the wire, or
  /// nullopt to drop the message.
  std::function<std::optional<std::string>(const NodeId& node,
                                           const TranscriptEntry& hop)>
      on_relay;
  /// Called when a corrupted node is the receiver of a link-OT; may pick the
  /// choice bit adaptively.
  std::function<ChoiceBit(const NodeId& receiver, const std::string& context,
                          ChoiceBit honest)>
      ot_choice;
  /// Called when a corrupted node is the sender of a link-OT; may substitute
  /// arbitrary inputs.
  std::function<std::pair<BitString, BitString>(const NodeId& sender,
                                                const std::string& context,
                                                const BitString& m0,
                                                const BitString& m1)>
      ot_inputs;
  /// Dishonest Bob's per-path choice bits (applies only when the controller
  /// is bob): used as his transmitted shares and as the link-OT inputs of
  /// colluding receivers.
  std::optional<std::vector<ChoiceBit>> bob_choice_vector;
};

/// Everything a coalition observed in one execution: visible hops, link-OT
/// leakage, and coalition members' local state.
struct AdversaryView {
  struct OTLeak {
    int round = 0;
    NodeId sender;
    NodeId receiver;
    bool sender_side = false;  // true: inputs leak; false: (choice, output)
    std::string a;
    std::string b;
    std::string context;
  };

  std::vector<TranscriptEntry> entries;
  std::vector<OTLeak> ot_leaks;
  std::vector<Note> internal;

  /// Deterministic string form; injective on distinct views.
  std::string canonical() const;
  /// Same, restricted to items whose context starts with `context_prefix`.
  std::string canonical_filtered(const std::string& context_prefix) const;
};

enum class LinkOTRealization {
  ideal,     // trusted functionality; the model all security metrics use
  ddh_demo,  // classical OT on the link, for end-to-end demonstrations
};

struct SimOptions {
  LinkOTRealization linkot = LinkOTRealization::ideal;
  const CyclicGroup* demo_group = nullptr;  // required for ddh_demo
  int round_bound = 10000;
};

/// Synchronous-round message-passing simulation. Messages sent in round k
/// are delivered in round k+1; one instance is single-threaded and
/// deterministic given its RandomSource.
class Simulation {
public:
  Simulation(const NetworkTopology& topo, const CorruptionSet& corruption,
             RandomSource& rng, AdversaryHooks hooks = {},
             SimOptions options = {});

  RandomSource& rng() { return *rng_; }
  const NetworkTopology& topology() const { return *topo_; }
  const CorruptionSet& corruption() const { return *corruption_; }
  const AdversaryHooks& hooks() const { return hooks_; }

  /// Sends a payload hop-by-hop along `route` (route[0] is the originator;
  /// consecutive nodes must be adjacent). A single-node route delivers to
  /// that node immediately.
  void send_route(const std::vector<NodeId>& route, const std::string& kind,
                  const std::string& payload, const std::string& context);
  /// One-hop private overlay channel; does not require adjacency.
  void send_direct(const NodeId& from, const NodeId& to,
                   const std::string& kind, const std::string& payload,
                   const std::string& context);
  /// Delivers everything in flight, advancing rounds. Throws DeadlockError
  /// if the round bound is exceeded.
  void run_rounds();

  std::optional<std::string> take_received(const NodeId& node,
                                           const std::string& kind,
                                           const std::string& context);
  /// Like take_received but a missing value is a protocol deadlock.
  std::string expect_received(const NodeId& node, const std::string& kind,
                              const std::string& context);

  /// Ideal 1-out-of-2 string OT between adjacent nodes. The receiver learns
  /// m_choice; the sender learns nothing about the choice. Corruption hooks
  /// may substitute the choice (corrupted receiver) or the inputs (corrupted
  /// sender). Throws NotALinkError for non-adjacent parties.
  BitString link_ot(const NodeId& sender, const NodeId& receiver,
                    const BitString& m0, const BitString& m1, ChoiceBit choice,
                    const std::string& context);

  void note(const NodeId& node, const std::string& key,
            const std::string& value, const std::string& context = "");

  bool in_coalition(const NodeId& n) const {
    return corruption_->is_coalition(n, *topo_);
  }

  int round() const { return round_; }
  const std::vector<TranscriptEntry>& transcript() const { return entries_; }
  const std::vector<OTSessionRecord>& sessions() const { return sessions_; }
  const std::vector<Note>& notes() const { return notes_; }

  AdversaryView adversary_view() const;
  /// Full transcript export, one JSON object per line (entries, then OT
  /// sessions).
  std::string transcript_jsonl() const;

private:
  struct InFlight {
    std::vector<NodeId> route;
    std::size_t at;  // index of the node currently holding the payload
    std::string kind;
    std::string payload;
    std::string context;
    bool direct;
  };

  void deliver(InFlight msg);

  const NetworkTopology* topo_;
  const CorruptionSet* corruption_;
  RandomSource* rng_;
  AdversaryHooks hooks_;
  SimOptions options_;
  int round_ = 0;
  std::deque<InFlight> in_flight_;
  std::vector<TranscriptEntry> entries_;
  std::vector<OTSessionRecord> sessions_;
  std::vector<Note> notes_;
  std::map<std::tuple<NodeId, std::string, std::string>, std::string>
      received_;
};

/// One JSON object per line: every hop (with its privacy flag), then every
/// link-OT session with who could see the choice.
std::string transcript_to_jsonl(const std::vector<TranscriptEntry>& entries,
                                const std::vector<OTSessionRecord>& sessions,
                                const NetworkTopology& topo,
                                const CorruptionSet& corruption);

struct SimOutcome {
  std::vector<TranscriptEntry> transcript;
  std::vector<OTSessionRecord> sessions;
  AdversaryView view;
};

/// Runs an arbitrary program against a fresh simulation and returns what it
/// produced; deterministic given the random source.
SimOutcome run_simulation(const NetworkTopology& topo,
                          const CorruptionSet& corruption, RandomSource& rng,
                          const std::function<void(Simulation&)>& program,
                          AdversaryHooks hooks = {}, SimOptions options = {});

}  // namespace pathot
