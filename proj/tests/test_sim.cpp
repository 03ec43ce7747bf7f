#include <doctest.h>

#include <functional>

#include "pathot/distribution.hpp"
#include "pathot/group.hpp"
#include "pathot/protocols.hpp"
#include "pathot/sim.hpp"
#include "test_helpers.hpp"

using namespace pathot;
using namespace pathot::testing;

namespace {

// Forward one payload a->v1->b.
void echo_program(Simulation& sim) {
  sim.send_route({"a", "v1", "b"}, "echo", "hello", "t");
  sim.run_rounds();
}

}  // namespace

TEST_CASE("echo program: honest run leaves an empty adversary view") {
  NetworkTopology t = parallel_topology(1);
  SeededRng rng(1);
  SimOutcome out = run_simulation(t, {{}, Controller::independent}, rng,
                                  echo_program);
  CHECK(out.transcript.size() == 2);  // two hops
  CHECK(out.view.canonical().empty());
}

TEST_CASE("echo program: a corrupted relay sees both hops") {
  NetworkTopology t = parallel_topology(1);
  SeededRng rng(1);
  SimOutcome out = run_simulation(t, {{"v1"}, Controller::independent}, rng,
                                  echo_program);
  CHECK(out.view.entries.size() == 2);
  // Every visible hop touches the corrupted node.
  for (const TranscriptEntry& e : out.view.entries)
    CHECK((e.sender == "v1" || e.receiver == "v1"));
}

TEST_CASE("honest-honest traffic never enters the view") {
  NetworkTopology t = parallel_topology(2);
  SeededRng rng(1);
  SimOutcome out = run_simulation(
      t, {{"v2"}, Controller::independent}, rng, [](Simulation& sim) {
        sim.send_route({"a", "v1", "b"}, "m1", "private", "t");
        sim.send_route({"a", "v2", "b"}, "m2", "seen", "t");
        sim.run_rounds();
      });
  CHECK(out.transcript.size() == 4);
  CHECK(out.view.entries.size() == 2);
  for (const TranscriptEntry& e : out.view.entries) CHECK(e.kind == "m2");
}

TEST_CASE("replays with the same source are byte-identical") {
  NetworkTopology t = parallel_topology(2);
  auto run_once = [&](std::uint64_t seed) {
    SeededRng rng(seed);
    CorruptionSet corr{{"v1"}, Controller::alice};
    Simulation sim(t, corr, rng);
    BitString m0 = BitString::random(rng, 4);
    BitString m1 = BitString::random(rng, 4);
    sim.send_route({"a", "v1", "b"}, "x", m0.str(), "t");
    sim.run_rounds();
    sim.link_ot("a", "v2", m0, m1, ChoiceBit{true}, "t");
    return sim.transcript_jsonl() + "|" + sim.adversary_view().canonical();
  };
  CHECK(run_once(5) == run_once(5));
  CHECK(run_once(5) != run_once(6));
}

TEST_CASE("a dropping adversary surfaces as a deadlock, not a wrong value") {
  NetworkTopology t = line4_topology();
  SeededRng rng(1);
  AdversaryHooks hooks;
  hooks.on_relay = [](const NodeId&, const TranscriptEntry&) {
    return std::optional<std::string>{};  // drop everything
  };
  CorruptionSet corr{{"x"}, Controller::independent};
  Simulation sim(t, corr, rng, hooks);
  sim.send_route({"a", "v", "x", "b"}, "m", "v", "t");
  sim.run_rounds();
  CHECK_THROWS_AS(sim.expect_received("b", "m", "t"), DeadlockError);
}

TEST_CASE("a tampering relay rewrites what travels onward") {
  NetworkTopology t = line4_topology();
  SeededRng rng(1);
  AdversaryHooks hooks;
  hooks.on_relay = [](const NodeId&, const TranscriptEntry& hop) {
    return std::optional<std::string>{hop.payload + "!"};
  };
  CorruptionSet corr{{"v"}, Controller::independent};
  Simulation sim(t, corr, rng, hooks);
  sim.send_route({"a", "v", "x", "b"}, "m", "orig", "t");
  sim.run_rounds();
  CHECK(sim.expect_received("b", "m", "t") == "orig!");
}

TEST_CASE("link-OT hands the receiver exactly the chosen input") {
  NetworkTopology t = parallel_topology(1);
  SeededRng rng(1);
  CorruptionSet honest;
  Simulation sim(t, honest, rng);
  BitString got = sim.link_ot("a", "v1", BitString::parse("10"),
                              BitString::parse("01"), ChoiceBit{true}, "t");
  CHECK(got.str() == "01");
  CHECK_THROWS_AS(sim.link_ot("v1", "b", BitString::parse("1"),
                              BitString::parse("01"), ChoiceBit{false}, "t"),
                  ContractViolation);
}

TEST_CASE("link-OT requires an actual link") {
  NetworkTopology t = parallel_topology(2);  // no a--b edge
  SeededRng rng(1);
  CorruptionSet honest;
  Simulation sim(t, honest, rng);
  CHECK_THROWS_AS(sim.link_ot("a", "b", BitString::parse("1"),
                              BitString::parse("0"), ChoiceBit{false}, "t"),
                  NotALinkError);
}

TEST_CASE("corrupted receiver leaks only its chosen branch") {
  NetworkTopology t = parallel_topology(1);
  SeededRng rng(1);
  CorruptionSet corr{{"v1"}, Controller::bob};
  Simulation sim(t, corr, rng);
  sim.link_ot("a", "v1", BitString::parse("10"), BitString::parse("01"),
              ChoiceBit{true}, "t");
  AdversaryView view = sim.adversary_view();
  REQUIRE(view.ot_leaks.size() == 1);
  CHECK_FALSE(view.ot_leaks[0].sender_side);
  CHECK(view.ot_leaks[0].a == "1");   // the choice it used
  CHECK(view.ot_leaks[0].b == "01");  // m_choice only
  const std::string c = view.canonical();
  CHECK(c.find("10") == std::string::npos);  // the other branch stays out
}

TEST_CASE("an honest sender's view distribution is identical for both choices") {
  // Single link, corrupted-sender coalition, receiver choice c: exact view
  // distance between c=0 and c=1 must be zero.
  NetworkTopology t = parallel_topology(1);
  auto view_for = [&](ChoiceBit c) {
    std::function<std::string(RandomSource&)> scenario =
        [&, c](RandomSource& rng) {
          CorruptionSet corr{{}, Controller::alice};
          Simulation sim(t, corr, rng);
          BitString m0 = BitString::random(rng, 2);
          BitString m1 = BitString::random(rng, 2);
          sim.note("a", "m0", m0.str(), "t");
          sim.note("a", "m1", m1.str(), "t");
          sim.link_ot("a", "v1", m0, m1, c, "t");
          return sim.adversary_view().canonical();
        };
    return exact_view_distribution(scenario);
  };
  CHECK(statistical_distance(view_for(ChoiceBit{false}),
                             view_for(ChoiceBit{true})) == Rational(0));
}

TEST_CASE("receiver coalition stays independent of the unchosen input") {
  // One-of-two: joint over (m_{1-c}, receiver view) at fixed c has uniform
  // posterior for the unchosen input.
  NetworkTopology t = parallel_topology(1);
  std::function<std::pair<std::string, std::string>(RandomSource&)> scenario =
      [&](RandomSource& rng) {
        CorruptionSet corr{{"v1"}, Controller::independent};
        Simulation sim(t, corr, rng);
        BitString m0 = BitString::random(rng, 3);
        BitString m1 = BitString::random(rng, 3);
        sim.link_ot("a", "v1", m0, m1, ChoiceBit{false}, "t");
        return std::make_pair(m1.str(), sim.adversary_view().canonical());
      };
  JointDistribution joint = exact_joint_distribution(scenario);
  CHECK(joint.guessing_probability() == Rational(1, 8));
}

TEST_CASE("view completeness holds across random runs and coalitions") {
  // Property: an entry is in the adversary view exactly when one of its
  // endpoints belongs to the coalition, and every link-OT leak record has a
  // corrupted participant on the matching side.
  NetworkTopology t = parallel_topology(3);
  PathSet paths = parallel_paths(3);
  SeededRng driver(99);
  for (int trial = 0; trial < 60; ++trial) {
    CorruptionSet corr;
    corr.controller = static_cast<Controller>(driver.draw(3));
    for (int j = 1; j <= 3; ++j)
      if (driver.draw_bit()) corr.corrupted.insert("v" + std::to_string(j));
    PathOTInstance inst{paths, BitString::random(driver, 2),
                        BitString::random(driver, 2),
                        ChoiceBit::random(driver),
                        driver.draw_bit() ? Variant::protocol2
                                          : Variant::protocol1};
    ProtocolResult res = run_variant(inst, t, corr, driver);

    auto in_coalition = [&](const NodeId& n) {
      return corr.is_coalition(n, t);
    };
    std::size_t expected_visible = 0;
    for (const TranscriptEntry& e : res.transcript)
      if (in_coalition(e.sender) || in_coalition(e.receiver))
        ++expected_visible;
    CHECK(res.view.entries.size() == expected_visible);
    for (const TranscriptEntry& e : res.view.entries)
      CHECK((in_coalition(e.sender) || in_coalition(e.receiver)));
    for (const AdversaryView::OTLeak& l : res.view.ot_leaks)
      CHECK(in_coalition(l.sender_side ? l.sender : l.receiver));
  }
}

TEST_CASE("notes surface in the view only for coalition members") {
  NetworkTopology t = parallel_topology(1);
  SeededRng rng(1);
  CorruptionSet corr{{}, Controller::bob};
  Simulation sim(t, corr, rng);
  sim.note("a", "secret", "1", "t");
  sim.note("b", "mine", "0", "t");
  AdversaryView v = sim.adversary_view();
  REQUIRE(v.internal.size() == 1);
  CHECK(v.internal[0].node == "b");
}

TEST_CASE("the demo link-OT realization still delivers the chosen input") {
  NetworkTopology t = parallel_topology(1);
  SeededRng rng(3);
  CorruptionSet honest;
  CyclicGroup grp = toy_group();
  SimOptions opts;
  opts.linkot = LinkOTRealization::ddh_demo;
  opts.demo_group = &grp;
  Simulation sim(t, honest, rng, {}, opts);
  BitString got = sim.link_ot("a", "v1", BitString::parse("110"),
                              BitString::parse("011"), ChoiceBit{false}, "t");
  CHECK(got.str() == "110");
  // The classical OT's own messages are on the wire now.
  CHECK(sim.transcript().size() > 0);
}
