#include <doctest.h>

#include <cmath>
#include <functional>

#include "pathot/attacks.hpp"
#include "test_helpers.hpp"

using namespace pathot;
using namespace pathot::testing;

namespace {

CorruptionSet bob_coalition(const PathSet& paths) {
  return {paths.all_internal(), Controller::bob};
}

}  // namespace

TEST_CASE("colluding receiver learns exactly the parity-selected input") {
  NetworkTopology t = parallel_topology(2);
  PathSet paths = parallel_paths(2);
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    std::vector<ChoiceBit> d{ChoiceBit{(mask & 1) != 0},
                             ChoiceBit{(mask & 2) != 0}};
    SeededRng rng(mask);
    PathOTInstance inst{paths, BitString(0, 1), BitString(1, 1),
                        ChoiceBit{false}, Variant::protocol1};
    ColludingBobResult res = colluding_bob_attack(d, inst, t, rng);
    const int expected_index = (d[0] ^ d[1]).value ? 1 : 0;
    CHECK(res.determined_index == expected_index);
    CHECK(res.learned == (expected_index == 1 ? inst.s1 : inst.s0));
  }
}

TEST_CASE("the hidden input's posterior is uniform for every choice vector") {
  for (int n : {2, 3}) {
    NetworkTopology t = parallel_topology(n);
    PathSet paths = parallel_paths(n);
    for (int ell : {1, 2})
      for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<ChoiceBit> d;
        bool odd = false;
        for (int j = 0; j < n; ++j) {
          bool bit = (mask >> j) & 1;
          d.push_back(ChoiceBit{bit});
          odd = odd != bit;
        }
        const int determined = odd ? 1 : 0;
        Rational gp_det =
            sender_security_joint(Variant::protocol1, paths, t,
                                  bob_coalition(paths), d, ell, determined)
                .guessing_probability();
        Rational gp_hidden =
            sender_security_joint(Variant::protocol1, paths, t,
                                  bob_coalition(paths), d, ell,
                                  1 - determined)
                .guessing_probability();
        CHECK(gp_det == Rational(1));
        CHECK(gp_hidden == pow2_inverse(ell));
      }
  }
}

TEST_CASE("honest-path-necessity attack: exact success on the line") {
  NetworkTopology t = parallel_topology(1);
  PathSet paths = parallel_paths(1);
  // 1 - 2^-(ell+1): 3/4, 15/16, 31/32.
  for (int ell : {1, 3, 4}) {
    Claim2Setup setup{Variant::protocol1, t, paths, {"v1"}, ell};
    CHECK(claim2_attack_exact(setup) ==
          Rational(1) - pow2_inverse(ell + 1));
  }
}

TEST_CASE("monte carlo attack frequency brackets the exact value") {
  NetworkTopology t = parallel_topology(1);
  Claim2Setup setup{Variant::protocol1, t, parallel_paths(1), {"v1"}, 1};
  MonteCarloResult mc = claim2_attack_montecarlo(setup, 10000, 77);
  CHECK(std::abs(mc.frequency - 0.75) <= 0.02);
  // Enumeration-vs-sampling consistency: the sampled frequency sits inside
  // its own confidence width around the exact value.
  CHECK(std::abs(mc.frequency - 0.75) <= mc.half_width99);
}

TEST_CASE("a lone corrupted relay on the only path leaks the whole choice") {
  NetworkTopology t = parallel_topology(1);
  CorruptionSet corr{{"v1"}, Controller::alice};
  auto views = [&](ChoiceBit c) {
    std::function<std::string(RandomSource&)> scenario =
        [&, c](RandomSource& rng) {
          PathOTInstance inst{parallel_paths(1), BitString(0, 1),
                              BitString(1, 1), c, Variant::protocol1};
          return run_protocol1(inst, t, corr, rng).view.canonical();
        };
    return exact_view_distribution(scenario);
  };
  CHECK(statistical_distance(views(ChoiceBit{false}),
                             views(ChoiceBit{true})) == Rational(1));
}

TEST_CASE("the attack bound does not depend on where the cut sits") {
  // Cutting at Alice's neighbour, mid-path, or across both diamond paths
  // all hand the coalition the same exact success probability.
  {
    NetworkTopology t = line4_topology();
    for (const NodeId& cut : {NodeId("v"), NodeId("x")}) {
      Claim2Setup setup{Variant::protocol1, t, line4_paths(), {cut}, 1};
      CHECK(claim2_attack_exact(setup) == Rational(3, 4));
    }
  }
  {
    NetworkTopology t = parallel_topology(2);
    Claim2Setup setup{Variant::protocol1, t, parallel_paths(2), {"v1", "v2"},
                      1};
    CHECK(claim2_attack_exact(setup) == Rational(3, 4));
  }
}

TEST_CASE("the same strategy collapses to a coin flip once a path is honest") {
  NetworkTopology t = parallel_topology(2);
  Claim2Setup setup{Variant::protocol1, t, parallel_paths(2), {"v2"}, 1};
  CHECK_THROWS_AS(claim2_attack_exact(setup), NotSeparatingError);
  CHECK(claim2_attack_exact(setup, /*require_separating=*/false) ==
        Rational(1, 2));
}

TEST_CASE("on the mirrored protocol a separating set knows both inputs") {
  NetworkTopology t = parallel_topology(1);
  Claim2Setup setup{Variant::protocol2, t, parallel_paths(1), {"v1"}, 2};
  CHECK(claim2_attack_exact(setup) == Rational(1));
}

TEST_CASE("separation check runs on the graph, not the path list") {
  NetworkTopology t = parallel_topology(2);
  // v1 alone does not cut the diamond even if only path 1 is used.
  PathSet only_first{{{"a", "v1", "b"}}};
  Claim2Setup setup{Variant::protocol1, t, only_first, {"v1"}, 1};
  CHECK_THROWS_AS(claim2_attack_exact(setup), NotSeparatingError);
}

TEST_CASE("an unchecked choice-share flip swaps Bob's output") {
  NetworkTopology t = parallel_topology(2);
  SeededRng rng(2);
  PathOTInstance inst{parallel_paths(2), BitString(0, 1), BitString(1, 1),
                      ChoiceBit{false}, Variant::protocol1};
  BitString out = tamper_attack(0, inst, t, rng);
  CHECK(out == inst.s1);  // s_{1-c}
  SeededRng rng2(2);
  PathOTInstance flipped{parallel_paths(2), BitString(0, 1), BitString(1, 1),
                         ChoiceBit{true}, Variant::protocol1};
  CHECK(tamper_attack(1, flipped, t, rng2) == flipped.s0);
}

TEST_CASE("a flipped return value shifts the output by the same mask") {
  NetworkTopology t = line4_topology();
  AdversaryHooks hooks;
  hooks.on_relay = [](const NodeId&, const TranscriptEntry& hop)
      -> std::optional<std::string> {
    if (hop.kind.rfind("tvalue", 0) != 0) return hop.payload;
    BitString v = BitString::parse_lenient(hop.payload, 3);
    return (v ^ BitString::parse("101")).str();
  };
  CorruptionSet corr{{"x"}, Controller::independent};
  SeededRng rng(4);
  PathOTInstance inst{line4_paths(), BitString::parse("110"),
                      BitString::parse("011"), ChoiceBit{true},
                      Variant::protocol1};
  ProtocolResult res = run_protocol1(inst, t, corr, rng, hooks);
  CHECK(res.bob_output == (inst.s1 ^ BitString::parse("101")));
}

TEST_CASE("reduction partition must cover all paths exactly once") {
  NetworkTopology t = parallel_topology(2);
  PathSet paths = parallel_paths(2);
  CHECK_THROWS_AS(
      anne_bill_reduction(Variant::protocol1, t, paths, {}, {0, 1}),
      ContractViolation);
  CHECK_THROWS_AS(
      anne_bill_reduction(Variant::protocol1, t, paths, {0}, {0, 1}),
      ContractViolation);
  CHECK_THROWS_AS(anne_bill_reduction(Variant::protocol1, t, paths, {0}, {}),
                  ContractViolation);
}

TEST_CASE("the derived two-party OT is correct on all inputs") {
  NetworkTopology t = parallel_topology(2);
  TwoPartyOT two_party = anne_bill_reduction(Variant::protocol1, t,
                                             parallel_paths(2), {0}, {1});
  NetworkTopology outer = two_party.two_node_topology();
  CHECK(outer.has_edge("anne", "bill"));
  // Whichever side is corrupted, the other side's simulated path stays
  // honest inside the underlying protocol.
  CHECK(exists_honest_path(t, two_party.paths(), two_party.anne_coalition()));
  CHECK(exists_honest_path(t, two_party.paths(), two_party.bill_coalition()));
  for (std::uint64_t a = 0; a < 2; ++a)
    for (std::uint64_t b = 0; b < 2; ++b)
      for (int c = 0; c <= 1; ++c) {
        std::function<bool(RandomSource&)> event =
            [&](RandomSource& rng) {
              BitString out = two_party.run(BitString(a, 1), BitString(b, 1),
                                            ChoiceBit{c == 1}, rng);
              return out == (c == 1 ? BitString(b, 1) : BitString(a, 1));
            };
        CHECK(exact_event_probability(event) == Rational(1));
      }
}

TEST_CASE("dishonest Bill still cannot touch the hidden input") {
  NetworkTopology t = parallel_topology(2);
  TwoPartyOT two_party = anne_bill_reduction(Variant::protocol1, t,
                                             parallel_paths(2), {0}, {1});
  for (std::uint64_t mask = 0; mask < 4; ++mask) {
    std::vector<ChoiceBit> d{ChoiceBit{(mask & 1) != 0},
                             ChoiceBit{(mask & 2) != 0}};
    bool odd = d[0].value != d[1].value;
    Rational hidden =
        sender_security_joint(Variant::protocol1, two_party.paths(), t,
                              two_party.bill_coalition(), d, 1, odd ? 0 : 1)
            .guessing_probability();
    CHECK(hidden == Rational(1, 2));
  }
}

TEST_CASE("dishonest Anne learns nothing about the choice") {
  NetworkTopology t = parallel_topology(2);
  TwoPartyOT two_party = anne_bill_reduction(Variant::protocol1, t,
                                             parallel_paths(2), {0}, {1});
  auto views = [&](ChoiceBit c) {
    std::function<std::string(RandomSource&)> scenario =
        [&, c](RandomSource& rng) {
          return two_party.view_against(Controller::alice,
                                        BitString::parse("10"),
                                        BitString::parse("01"), c, rng);
        };
    return exact_view_distribution(scenario);
  };
  CHECK(statistical_distance(views(ChoiceBit{false}),
                             views(ChoiceBit{true})) == Rational(0));
}

TEST_CASE("weak OT against a fully dishonest network: three of four leak") {
  NetworkTopology t = parallel_topology(2);
  PathSet paths = parallel_paths(2);
  CorruptionSet coalition{paths.all_internal(), Controller::bob};
  for (int c = 0; c <= 1; ++c)
    for (int c2 = 0; c2 <= 1; ++c2) {
      auto joint_for = [&](int input_index) {
        std::function<std::pair<std::string, std::string>(RandomSource&)>
            scenario = [&, input_index](RandomSource& rng) {
              BitString in[4];
              for (auto& v : in) v = BitString::random(rng, 1);
              WeakOTInstance inst{paths,
                                  in[0],
                                  in[1],
                                  in[2],
                                  in[3],
                                  ChoiceBit{c == 1},
                                  ChoiceBit{c2 == 1}};
              WeakOTResult res = run_weak_ot(inst, t, coalition, rng);
              return std::make_pair(in[input_index].str(),
                                    res.view.canonical());
            };
        return exact_joint_distribution(scenario);
      };
      int uniform_count = 0;
      int known_count = 0;
      for (int i = 0; i < 4; ++i) {
        Rational gp = joint_for(i).guessing_probability();
        if (gp == Rational(1, 2)) ++uniform_count;
        if (gp == Rational(1)) ++known_count;
      }
      CHECK(uniform_count == 1);  // exactly one input stays perfectly hidden
      CHECK(known_count == 3);    // Bob learns three, never all four
    }
}

TEST_CASE("weak OT against a dishonest sender side: one choice bit leaks") {
  NetworkTopology t = parallel_topology(2);
  PathSet paths = parallel_paths(2);
  CorruptionSet coalition{paths.all_internal(), Controller::alice};
  auto views = [&](ChoiceBit c, ChoiceBit c2) {
    std::function<std::string(RandomSource&)> scenario =
        [&, c, c2](RandomSource& rng) {
          WeakOTInstance inst{paths,
                              BitString(0, 1),
                              BitString(1, 1),
                              BitString(1, 1),
                              BitString(0, 1),
                              c,
                              c2};
          return run_weak_ot(inst, t, coalition, rng).view.canonical();
        };
    return exact_view_distribution(scenario);
  };
  // The first choice bit is fully determined (its shares are all visible).
  CHECK(statistical_distance(views(ChoiceBit{false}, ChoiceBit{false}),
                             views(ChoiceBit{true}, ChoiceBit{false})) ==
        Rational(1));
  // The second stays perfectly hidden behind link-OT choice hiding.
  CHECK(statistical_distance(views(ChoiceBit{false}, ChoiceBit{false}),
                             views(ChoiceBit{false}, ChoiceBit{true})) ==
        Rational(0));
}

TEST_CASE("the packaged backup strategy degrades gracefully") {
  AttackStrategy s = combined_backup_strategy({"v1"}, toy_group(), 1);
  CHECK(s.name == "combined-backup");
  CHECK(s.corruption.controller == Controller::alice);
  CHECK(s.corruption.corrupted.count("v1") == 1);
  AdversaryView empty;
  CHECK(s.postprocess(empty) == "?");  // nothing observed, blind guess
}

TEST_CASE("combined backup: breakable group leaks, strong group does not") {
  NetworkTopology t = parallel_topology(1);
  PathSet paths = parallel_paths(1);
  MonteCarloResult broken =
      combined_backup_guess(t, paths, {"v1"}, toy_group(), 2, 400, 5);
  CHECK(broken.frequency == 1.0);

  CyclicGroup strong = find_safe_prime_group((1ull << 20) + 1);
  MonteCarloResult blind =
      combined_backup_guess(t, paths, {"v1"}, strong, 2, 10000, 6);
  CHECK(std::abs(blind.frequency - 0.5) <= 0.02);
}
