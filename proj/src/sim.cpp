#include "pathot/sim.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "pathot/ddh_ot.hpp"

namespace pathot {

namespace {

std::string fmt_entry(const TranscriptEntry& e) {
  std::ostringstream os;
  os << "M|" << e.round << '|' << e.sender << '|' << e.receiver << '|'
     << e.kind << '|' << e.payload << '|' << (e.direct ? 'D' : 'E') << '|'
     << e.context;
  return os.str();
}

std::string fmt_leak(const AdversaryView::OTLeak& l) {
  std::ostringstream os;
  os << "O|" << l.round << '|' << l.sender << '|' << l.receiver << '|'
     << (l.sender_side ? 'S' : 'R') << '|' << l.a << '|' << l.b << '|'
     << l.context;
  return os.str();
}

std::string fmt_note(const Note& n) {
  return "I|" + n.node + '|' + n.key + '|' + n.value + '|' + n.context;
}

bool has_prefix(const std::string& s, const std::string& prefix) {
  return s.rfind(prefix, 0) == 0;
}

std::string render_view(std::vector<Note> notes,
                        std::vector<TranscriptEntry> entries,
                        std::vector<AdversaryView::OTLeak> leaks) {
  std::sort(notes.begin(), notes.end(), [](const Note& a, const Note& b) {
    return std::tie(a.node, a.key, a.value, a.context) <
           std::tie(b.node, b.key, b.value, b.context);
  });
  std::sort(entries.begin(), entries.end(),
            [](const TranscriptEntry& a, const TranscriptEntry& b) {
              return std::tie(a.round, a.sender, a.receiver, a.kind, a.payload,
                              a.context) < std::tie(b.round, b.sender,
                                                    b.receiver, b.kind,
                                                    b.payload, b.context);
            });
  std::sort(leaks.begin(), leaks.end(),
            [](const AdversaryView::OTLeak& a, const AdversaryView::OTLeak& b) {
              return std::tie(a.round, a.sender, a.receiver, a.sender_side,
                              a.a, a.b, a.context) <
                     std::tie(b.round, b.sender, b.receiver, b.sender_side,
                              b.a, b.b, b.context);
            });
  std::ostringstream os;
  for (const Note& n : notes) os << fmt_note(n) << '\n';
  for (const TranscriptEntry& e : entries) os << fmt_entry(e) << '\n';
  for (const AdversaryView::OTLeak& l : leaks) os << fmt_leak(l) << '\n';
  return os.str();
}

}  // namespace

std::string AdversaryView::canonical() const {
  return render_view(internal, entries, ot_leaks);
}

std::string AdversaryView::canonical_filtered(
    const std::string& context_prefix) const {
  std::vector<Note> notes;
  for (const Note& n : internal)
    if (has_prefix(n.context, context_prefix)) notes.push_back(n);
  std::vector<TranscriptEntry> es;
  for (const TranscriptEntry& e : entries)
    if (has_prefix(e.context, context_prefix)) es.push_back(e);
  std::vector<OTLeak> ls;
  for (const OTLeak& l : ot_leaks)
    if (has_prefix(l.context, context_prefix)) ls.push_back(l);
  return render_view(std::move(notes), std::move(es), std::move(ls));
}

Simulation::Simulation(const NetworkTopology& topo,
                       const CorruptionSet& corruption, RandomSource& rng,
                       AdversaryHooks hooks, SimOptions options)
    : topo_(&topo),
      corruption_(&corruption),
      rng_(&rng),
      hooks_(std::move(hooks)),
      options_(options) {
  topo.validate();
  corruption.validate(topo);
  if (options_.linkot == LinkOTRealization::ddh_demo &&
      options_.demo_group == nullptr)
    throw ContractViolation("ddh_demo link-OT needs a group");
}

void Simulation::send_route(const std::vector<NodeId>& route,
                            const std::string& kind,
                            const std::string& payload,
                            const std::string& context) {
  if (route.empty()) throw ContractViolation("send_route: empty route");
  for (const NodeId& n : route)
    if (!topo_->nodes.count(n))
      throw ContractViolation("send_route: unknown node '" + n + "'");
  for (std::size_t i = 0; i + 1 < route.size(); ++i)
    if (!topo_->has_edge(route[i], route[i + 1]))
      throw ContractViolation("send_route: route uses a non-edge");
  if (route.size() == 1) {
    received_[{route[0], context, kind}] = payload;
    return;
  }
  in_flight_.push_back({route, 0, kind, payload, context, false});
}

void Simulation::send_direct(const NodeId& from, const NodeId& to,
                             const std::string& kind,
                             const std::string& payload,
                             const std::string& context) {
  if (!topo_->nodes.count(from) || !topo_->nodes.count(to))
    throw ContractViolation("send_direct: unknown node");
  if (from == to) {
    received_[{to, context, kind}] = payload;
    return;
  }
  in_flight_.push_back({{from, to}, 0, kind, payload, context, true});
}

void Simulation::run_rounds() {
  while (!in_flight_.empty()) {
    if (++round_ > options_.round_bound)
      throw DeadlockError("round bound exceeded with messages in flight");
    std::size_t pending = in_flight_.size();
    while (pending-- > 0) {
      InFlight msg = std::move(in_flight_.front());
      in_flight_.pop_front();
      deliver(std::move(msg));
    }
  }
}

void Simulation::deliver(InFlight msg) {
  const NodeId& from = msg.route[msg.at];
  const NodeId& to = msg.route[msg.at + 1];

  std::string payload = msg.payload;
  if (corruption_->corrupted.count(from) && hooks_.on_relay) {
    TranscriptEntry hop{round_, from, to, msg.kind, payload, msg.context,
                        msg.direct};
    auto replaced = hooks_.on_relay(from, hop);
    if (!replaced.has_value()) return;  // dropped
    payload = *replaced;
  }

  entries_.push_back(
      {round_, from, to, msg.kind, payload, msg.context, msg.direct});

  if (msg.at + 2 == msg.route.size()) {
    received_[{to, msg.context, msg.kind}] = payload;
    return;
  }
  msg.payload = std::move(payload);
  msg.at += 1;
  in_flight_.push_back(std::move(msg));
}

std::optional<std::string> Simulation::take_received(
    const NodeId& node, const std::string& kind, const std::string& context) {
  auto it = received_.find({node, context, kind});
  if (it == received_.end()) return std::nullopt;
  std::string v = it->second;
  received_.erase(it);
  return v;
}

std::string Simulation::expect_received(const NodeId& node,
                                        const std::string& kind,
                                        const std::string& context) {
  auto v = take_received(node, kind, context);
  if (!v.has_value())
    throw DeadlockError("party '" + node + "' never received '" + kind +
                        "' (" + context + ")");
  return *v;
}

BitString Simulation::link_ot(const NodeId& sender, const NodeId& receiver,
                              const BitString& m0, const BitString& m1,
                              ChoiceBit choice, const std::string& context) {
  if (sender == receiver)
    throw NotALinkError("link-OT needs two distinct parties");
  if (!topo_->has_edge(sender, receiver))
    throw NotALinkError("link-OT only exists on links: " + sender + "-" +
                        receiver);
  if (m0.length() != m1.length())
    throw ContractViolation("link-OT inputs must have equal length");

  BitString in0 = m0, in1 = m1;
  if (corruption_->corrupted.count(sender) && hooks_.ot_inputs) {
    auto subst = hooks_.ot_inputs(sender, context, in0, in1);
    in0 = subst.first;
    in1 = subst.second;
  }
  ChoiceBit used = choice;
  if (corruption_->corrupted.count(receiver) && hooks_.ot_choice)
    used = hooks_.ot_choice(receiver, context, choice);

  ++round_;
  BitString output = used.value ? in1 : in0;

  if (options_.linkot == LinkOTRealization::ddh_demo) {
    // Classical realization on the link, for demonstrations: the OT's own
    // messages appear on the wire; security metrics are claimed only against
    // the ideal realization.
    DdhOtTranscript wire;
    BitString got =
        run_ddh_ot(*options_.demo_group, in0, in1, used, *rng_, &wire);
    const std::string demo_ctx = context + "|linkot-demo";
    entries_.push_back({round_, receiver, sender, "linkot.pk",
                        std::to_string(wire.pk), demo_ctx, false});
    entries_.push_back({round_, receiver, sender, "linkot.ct",
                        std::to_string(wire.choice_ct.a) + "," +
                            std::to_string(wire.choice_ct.b),
                        demo_ctx, false});
    for (std::size_t i = 0; i < wire.responses.size(); ++i) {
      const auto& [z0, z1] = wire.responses[i];
      entries_.push_back({round_, sender, receiver,
                          "linkot.z." + std::to_string(i),
                          std::to_string(z0.a) + "," + std::to_string(z0.b) +
                              "|" + std::to_string(z1.a) + "," +
                              std::to_string(z1.b),
                          demo_ctx, false});
    }
    output = got;
  }

  sessions_.push_back({round_, sender, receiver, in0, in1, used, output,
                       context});
  return output;
}

void Simulation::note(const NodeId& node, const std::string& key,
                      const std::string& value, const std::string& context) {
  notes_.push_back({node, key, value, context});
}

AdversaryView Simulation::adversary_view() const {
  AdversaryView view;
  for (const TranscriptEntry& e : entries_)
    if (in_coalition(e.sender) || in_coalition(e.receiver))
      view.entries.push_back(e);
  for (const OTSessionRecord& s : sessions_) {
    if (in_coalition(s.sender))
      view.ot_leaks.push_back({s.round, s.sender, s.receiver, true,
                               s.m0.str(), s.m1.str(), s.context});
    if (in_coalition(s.receiver))
      view.ot_leaks.push_back({s.round, s.sender, s.receiver, false,
                               s.choice.str(), s.output.str(), s.context});
  }
  for (const Note& n : notes_)
    if (in_coalition(n.node)) view.internal.push_back(n);
  return view;
}

std::string Simulation::transcript_jsonl() const {
  return transcript_to_jsonl(entries_, sessions_, *topo_, *corruption_);
}

std::string transcript_to_jsonl(const std::vector<TranscriptEntry>& entries,
                                const std::vector<OTSessionRecord>& sessions,
                                const NetworkTopology& topo,
                                const CorruptionSet& corruption) {
  auto coalition = [&](const NodeId& n) {
    return corruption.is_coalition(n, topo);
  };
  std::ostringstream os;
  for (const TranscriptEntry& e : entries) {
    nlohmann::json j{{"round", e.round},
                     {"sender", e.sender},
                     {"receiver", e.receiver},
                     {"kind", e.kind},
                     {"payload", e.payload},
                     {"direct", e.direct},
                     {"context", e.context},
                     {"link_private",
                      !coalition(e.sender) && !coalition(e.receiver)}};
    os << j.dump() << '\n';
  }
  for (const OTSessionRecord& s : sessions) {
    nlohmann::json visible = nlohmann::json::array();
    visible.push_back(s.receiver);
    if (coalition(s.receiver)) {
      for (const NodeId& n : corruption.corrupted)
        if (n != s.receiver) visible.push_back(n);
      if (corruption.controller == Controller::alice)
        visible.push_back(topo.alice);
      if (corruption.controller == Controller::bob && s.receiver != topo.bob)
        visible.push_back(topo.bob);
    }
    nlohmann::json j{{"type", "ot_session"},
                     {"round", s.round},
                     {"sender", s.sender},
                     {"receiver", s.receiver},
                     {"choice_visible_to", visible},
                     {"received", s.output.str()}};
    os << j.dump() << '\n';
  }
  return os.str();
}

SimOutcome run_simulation(const NetworkTopology& topo,
                          const CorruptionSet& corruption, RandomSource& rng,
                          const std::function<void(Simulation&)>& program,
                          AdversaryHooks hooks, SimOptions options) {
  Simulation sim(topo, corruption, rng, std::move(hooks), options);
  program(sim);
  sim.run_rounds();
  return {sim.transcript(), sim.sessions(), sim.adversary_view()};
}

}  // namespace pathot
