#include "pathot/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "pathot/ddh_ot.hpp"

namespace pathot {

namespace {

std::string idx(const std::string& stem, int j) {
  return stem + "." + std::to_string(j + 1);
}

// Route for Bob's message to v_j: the path reversed, stopping at v_j.
std::vector<NodeId> route_bob_to_v(const PathSet& paths, int j) {
  const auto& p = paths.paths[static_cast<std::size_t>(j)];
  std::vector<NodeId> r(p.rbegin(), p.rend());
  r.pop_back();  // do not continue to alice
  return r;
}

// Route for v_j's message back to Bob.
std::vector<NodeId> route_v_to_bob(const PathSet& paths, int j) {
  const auto& p = paths.paths[static_cast<std::size_t>(j)];
  return std::vector<NodeId>(p.begin() + 1, p.end());
}

// Route for Alice's message to w_j.
std::vector<NodeId> route_alice_to_w(const PathSet& paths, int j) {
  const auto& p = paths.paths[static_cast<std::size_t>(j)];
  return std::vector<NodeId>(p.begin(), p.end() - 1);
}

ChoiceBit parse_choice(const std::string& payload) {
  return ChoiceBit{!payload.empty() && payload[0] == '1'};
}

std::pair<std::string, std::string> split_pair(const std::string& payload) {
  auto pos = payload.find('|');
  if (pos == std::string::npos) return {payload, ""};
  return {payload.substr(0, pos), payload.substr(pos + 1)};
}

std::pair<std::string, std::string> split_pair_comma(
    const std::string& payload) {
  auto pos = payload.find(',');
  if (pos == std::string::npos) return {payload, ""};
  return {payload.substr(0, pos), payload.substr(pos + 1)};
}

// Group elements from the wire; anything unparsable maps into the group.
std::uint64_t parse_element(const std::string& s, const CyclicGroup& grp) {
  std::uint64_t v = std::strtoull(s.c_str(), nullptr, 10) % grp.p;
  return v == 0 ? 1 : v;
}

std::vector<ChoiceBit> bob_shares_or_override(Simulation& sim, ChoiceBit c,
                                              int n) {
  if (sim.corruption().controller == Controller::bob &&
      sim.hooks().bob_choice_vector.has_value()) {
    const auto& d = *sim.hooks().bob_choice_vector;
    if (static_cast<int>(d.size()) != n)
      throw ContractViolation("bob_choice_vector size must match path count");
    return d;
  }
  return share_xor(c, n, sim.rng());
}

BitString drive_protocol1(Simulation& sim, const PathSet& paths,
                          const BitString& s0, const BitString& s1,
                          ChoiceBit c, bool direct, const std::string& ctx) {
  const NetworkTopology& topo = sim.topology();
  const int n = paths.count();
  const int ell = s0.length();

  // Bob: share the choice bit, one share per path.
  sim.note(topo.bob, "c", c.str(), ctx);
  std::vector<ChoiceBit> shares = bob_shares_or_override(sim, c, n);
  for (int j = 0; j < n; ++j)
    sim.note(topo.bob, idx("cshare", j), shares[j].str(), ctx);
  for (int j = 0; j < n; ++j) {
    if (direct)
      sim.send_direct(topo.bob, paths.v(j), idx("cshare", j),
                      shares[j].str(), ctx);
    else
      sim.send_route(route_bob_to_v(paths, j), idx("cshare", j),
                     shares[j].str(), ctx);
  }
  sim.run_rounds();

  std::vector<ChoiceBit> at_v(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j)
    at_v[static_cast<std::size_t>(j)] =
        parse_choice(sim.expect_received(paths.v(j), idx("cshare", j), ctx));

  // Alice: keys cancelling to zero, masked inputs, one link-OT per path.
  sim.note(topo.alice, "s0", s0.str(), ctx);
  sim.note(topo.alice, "s1", s1.str(), ctx);
  std::vector<BitString> keys = share_xor(BitString::zero(ell), n, sim.rng());
  for (int j = 0; j < n; ++j)
    sim.note(topo.alice, idx("key", j), keys[j].str(), ctx);

  std::vector<BitString> transferred(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    BitString t0 = j == 0 ? s0 ^ keys[0] : keys[static_cast<std::size_t>(j)];
    BitString t1 = j == 0 ? s1 ^ keys[0]
                          : s0 ^ s1 ^ keys[static_cast<std::size_t>(j)];
    transferred[static_cast<std::size_t>(j)] =
        sim.link_ot(topo.alice, paths.v(j), t0, t1,
                    at_v[static_cast<std::size_t>(j)], ctx);
  }

  // Return leg: v_j forwards its chosen value to Bob.
  for (int j = 0; j < n; ++j) {
    const std::string payload = transferred[static_cast<std::size_t>(j)].str();
    if (direct)
      sim.send_direct(paths.v(j), topo.bob, idx("tvalue", j), payload, ctx);
    else
      sim.send_route(route_v_to_bob(paths, j), idx("tvalue", j), payload, ctx);
  }
  sim.run_rounds();

  std::vector<BitString> collected;
  for (int j = 0; j < n; ++j)
    collected.push_back(BitString::parse_lenient(
        sim.expect_received(topo.bob, idx("tvalue", j), ctx), ell));
  BitString out = reconstruct_xor(collected);
  sim.note(topo.bob, "output", out.str(), ctx);
  return out;
}

BitString drive_protocol2(Simulation& sim, const PathSet& paths,
                          const BitString& s0, const BitString& s1,
                          ChoiceBit c, bool direct, const std::string& ctx) {
  const NetworkTopology& topo = sim.topology();
  const int n = paths.count();
  const int ell = s0.length();

  // Alice: share both inputs, one pair per path neighbour of Bob.
  sim.note(topo.alice, "s0", s0.str(), ctx);
  sim.note(topo.alice, "s1", s1.str(), ctx);
  std::vector<BitString> shares0 = share_xor(s0, n, sim.rng());
  std::vector<BitString> shares1 = share_xor(s1, n, sim.rng());
  for (int j = 0; j < n; ++j) {
    sim.note(topo.alice, idx("s0share", j),
             shares0[static_cast<std::size_t>(j)].str(), ctx);
    sim.note(topo.alice, idx("s1share", j),
             shares1[static_cast<std::size_t>(j)].str(), ctx);
  }
  for (int j = 0; j < n; ++j) {
    const std::string payload = shares0[static_cast<std::size_t>(j)].str() +
                                "|" +
                                shares1[static_cast<std::size_t>(j)].str();
    if (direct)
      sim.send_direct(topo.alice, paths.w(j), idx("spair", j), payload, ctx);
    else
      sim.send_route(route_alice_to_w(paths, j), idx("spair", j), payload,
                     ctx);
  }
  sim.run_rounds();

  // Bob: one link-OT with each w_j, all under his choice bit.
  sim.note(topo.bob, "c", c.str(), ctx);
  std::optional<std::vector<ChoiceBit>> dishonest_choices;
  if (sim.corruption().controller == Controller::bob &&
      sim.hooks().bob_choice_vector.has_value()) {
    dishonest_choices = *sim.hooks().bob_choice_vector;
    if (static_cast<int>(dishonest_choices->size()) != n)
      throw ContractViolation("bob_choice_vector size must match path count");
  }

  std::vector<BitString> collected;
  for (int j = 0; j < n; ++j) {
    auto [lhs, rhs] =
        split_pair(sim.expect_received(paths.w(j), idx("spair", j), ctx));
    BitString share0 = BitString::parse_lenient(lhs, ell);
    BitString share1 = BitString::parse_lenient(rhs, ell);
    ChoiceBit use =
        dishonest_choices ? (*dishonest_choices)[static_cast<std::size_t>(j)]
                          : c;
    collected.push_back(
        sim.link_ot(paths.w(j), topo.bob, share0, share1, use, ctx));
  }
  BitString out = reconstruct_xor(collected);
  sim.note(topo.bob, "output", out.str(), ctx);
  return out;
}

ProtocolResult finish(Simulation& sim, BitString out) {
  return {std::move(out), sim.transcript(), sim.sessions(),
          sim.adversary_view()};
}

}  // namespace

std::string to_string(Variant v) {
  switch (v) {
    case Variant::protocol1: return "p1";
    case Variant::protocol2: return "p2";
    case Variant::hybrid1: return "hybrid1";
    case Variant::hybrid2: return "hybrid2";
  }
  return "p1";
}

Variant variant_from_string(const std::string& s) {
  if (s == "p1" || s == "protocol1") return Variant::protocol1;
  if (s == "p2" || s == "protocol2") return Variant::protocol2;
  if (s == "hybrid1") return Variant::hybrid1;
  if (s == "hybrid2") return Variant::hybrid2;
  throw ContractViolation("unknown protocol variant '" + s + "'");
}

void PathOTInstance::validate(const NetworkTopology& topo) const {
  paths.validate(topo);
  if (s0.empty() || s0.length() != s1.length())
    throw ContractViolation("instance: inputs must share a positive length");
}

ProtocolResult run_protocol1(const PathOTInstance& inst,
                             const NetworkTopology& topo,
                             const CorruptionSet& corruption, RandomSource& rng,
                             const AdversaryHooks& hooks,
                             const SimOptions& options) {
  inst.validate(topo);
  Simulation sim(topo, corruption, rng, hooks, options);
  BitString out =
      drive_protocol1(sim, inst.paths, inst.s0, inst.s1, inst.choice,
                      /*direct=*/false, "p1");
  return finish(sim, std::move(out));
}

ProtocolResult run_protocol2(const PathOTInstance& inst,
                             const NetworkTopology& topo,
                             const CorruptionSet& corruption, RandomSource& rng,
                             const AdversaryHooks& hooks,
                             const SimOptions& options) {
  inst.validate(topo);
  Simulation sim(topo, corruption, rng, hooks, options);
  BitString out =
      drive_protocol2(sim, inst.paths, inst.s0, inst.s1, inst.choice,
                      /*direct=*/false, "p2");
  return finish(sim, std::move(out));
}

ProtocolResult run_hybrid(const PathOTInstance& inst,
                          const NetworkTopology& topo,
                          const CorruptionSet& corruption, RandomSource& rng,
                          const AdversaryHooks& hooks,
                          const SimOptions& options) {
  inst.validate(topo);
  if (inst.variant != Variant::hybrid1 && inst.variant != Variant::hybrid2)
    throw ContractViolation("run_hybrid needs a hybrid variant");
  Simulation sim(topo, corruption, rng, hooks, options);
  BitString out =
      inst.variant == Variant::hybrid1
          ? drive_protocol1(sim, inst.paths, inst.s0, inst.s1, inst.choice,
                            /*direct=*/true, "h1")
          : drive_protocol2(sim, inst.paths, inst.s0, inst.s1, inst.choice,
                            /*direct=*/true, "h2");
  return finish(sim, std::move(out));
}

ProtocolResult run_variant(const PathOTInstance& inst,
                           const NetworkTopology& topo,
                           const CorruptionSet& corruption, RandomSource& rng,
                           const AdversaryHooks& hooks,
                           const SimOptions& options) {
  switch (inst.variant) {
    case Variant::protocol1:
      return run_protocol1(inst, topo, corruption, rng, hooks, options);
    case Variant::protocol2:
      return run_protocol2(inst, topo, corruption, rng, hooks, options);
    case Variant::hybrid1:
    case Variant::hybrid2:
      return run_hybrid(inst, topo, corruption, rng, hooks, options);
  }
  throw ContractViolation("unknown variant");
}

ProtocolResult run_combined(const PathOTInstance& inst,
                            const NetworkTopology& topo,
                            const CorruptionSet& corruption,
                            const CyclicGroup& grp, RandomSource& rng,
                            const AdversaryHooks& hooks,
                            RandomSource* ddh_rng) {
  inst.validate(topo);
  grp.validate();
  const int ell = inst.ell();
  Simulation sim(topo, corruption, rng, hooks);
  RandomSource& brng = ddh_rng != nullptr ? *ddh_rng : rng;

  // Bob splits his choice across the two candidates; Alice masks her inputs
  // with a fresh key so each candidate alone sees only one-time-padded data.
  ChoiceBit c_a = ChoiceBit::random(sim.rng());
  ChoiceBit c_b = c_a ^ inst.choice;
  sim.note(topo.bob, "c", inst.choice.str(), "comb");
  sim.note(topo.bob, "cA", c_a.str(), "comb");
  sim.note(topo.bob, "cB", c_b.str(), "comb");
  BitString mask = BitString::random(sim.rng(), ell);
  sim.note(topo.alice, "mask", mask.str(), "comb");

  // Candidate A: protocol 1 on (s0+r, s1+r) with choice share cA.
  BitString out_a = drive_protocol1(sim, inst.paths, inst.s0 ^ mask,
                                    inst.s1 ^ mask, c_a, false, "p1");

  // Candidate B: classical DDH OT on (r, s0+s1+r) with choice share cB; its
  // messages ride along path 1.
  const auto& path1 = inst.paths.paths[0];
  std::vector<NodeId> to_alice(path1.rbegin(), path1.rend());
  KeyPair keys = keygen(grp, brng);
  sim.note(topo.bob, "ddh.sk", std::to_string(keys.sk), "ddh");
  HomCiphertext choice_ct = encrypt(grp, keys.pk, c_b.value ? 1 : 0, brng);
  sim.send_route(to_alice, "ddh.pk", std::to_string(keys.pk), "ddh");
  sim.send_route(to_alice, "ddh.ct",
                 std::to_string(choice_ct.a) + "," +
                     std::to_string(choice_ct.b),
                 "ddh");
  sim.run_rounds();

  const std::uint64_t wire_pk =
      parse_element(sim.expect_received(topo.alice, "ddh.pk", "ddh"), grp);
  auto [ct_a_str, ct_b_str] =
      split_pair_comma(sim.expect_received(topo.alice, "ddh.ct", "ddh"));
  HomCiphertext wire_ct{parse_element(ct_a_str, grp),
                        parse_element(ct_b_str, grp)};

  const BitString b0 = mask;
  const BitString b1 = inst.s0 ^ inst.s1 ^ mask;
  const int cb = chunk_bits(grp);
  int n_chunks = 0;
  for (int off = 0; off < ell; off += cb) {
    const int width = std::min(cb, ell - off);
    std::uint64_t chunk0 =
        (b0.value() >> (ell - off - width)) & ((1ull << width) - 1);
    std::uint64_t chunk1 =
        (b1.value() >> (ell - off - width)) & ((1ull << width) - 1);
    auto [z0, z1] =
        ot_respond(grp, wire_pk, wire_ct, chunk0, chunk1, brng);
    sim.send_route(path1, "ddh.z." + std::to_string(n_chunks),
                   std::to_string(z0.a) + "," + std::to_string(z0.b) + "|" +
                       std::to_string(z1.a) + "," + std::to_string(z1.b),
                   "ddh");
    ++n_chunks;
  }
  sim.run_rounds();

  std::uint64_t out_val = 0;
  int assembled = 0;
  for (int i = 0; i < n_chunks; ++i) {
    const int width = std::min(cb, ell - assembled);
    auto [zs0, zs1] = split_pair(
        sim.expect_received(topo.bob, "ddh.z." + std::to_string(i), "ddh"));
    auto [za, zb] = split_pair_comma(c_b.value ? zs1 : zs0);
    HomCiphertext z{parse_element(za, grp), parse_element(zb, grp)};
    std::uint64_t m = decrypt(grp, keys.sk, z, grp.q - 1);
    out_val = (out_val << width) | (m & ((1ull << width) - 1));
    assembled += width;
  }
  BitString out_b(out_val, ell);

  BitString out = out_a ^ out_b;
  sim.note(topo.bob, "output", out.str(), "comb");
  return finish(sim, std::move(out));
}

void WeakOTInstance::validate(const NetworkTopology& topo) const {
  paths.validate(topo);
  if (s00.empty() || s00.length() != s01.length() ||
      s00.length() != s10.length() || s00.length() != s11.length())
    throw ContractViolation("weak OT: inputs must share a positive length");
}

WeakOTResult run_weak_ot(const WeakOTInstance& inst,
                         const NetworkTopology& topo,
                         const CorruptionSet& corruption, RandomSource& rng,
                         const AdversaryHooks& hooks) {
  inst.validate(topo);
  Simulation sim(topo, corruption, rng, hooks);
  BitString out1 = drive_protocol1(sim, inst.paths, inst.s00, inst.s01,
                                   inst.c, false, "wot.p1");
  BitString out2 = drive_protocol2(sim, inst.paths, inst.s10, inst.s11,
                                   inst.c2, false, "wot.p2");
  return {std::move(out1), std::move(out2), sim.transcript(), sim.sessions(),
          sim.adversary_view()};
}

std::string tamper_run_context(int run_index) {
  return "run" + std::to_string(run_index);
}

TamperOutcome tamper_check_run(
    const PathOTInstance& inst, const NetworkTopology& topo,
    const CorruptionSet& corruption, int k, double open_fraction,
    RandomSource& rng, const AdversaryHooks& hooks,
    const std::vector<TamperRunInputs>* fixed_run_inputs,
    std::optional<std::uint64_t> fixed_subset_index) {
  inst.validate(topo);
  if (k < 2) throw ContractViolation("tamper check: need at least two runs");
  const int open_count =
      static_cast<int>(std::llround(open_fraction * k));
  if (open_count < 1 || open_count >= k)
    throw ContractViolation(
        "tamper check: must open at least one run and keep one unopened");
  if (fixed_run_inputs != nullptr &&
      static_cast<int>(fixed_run_inputs->size()) != k)
    throw ContractViolation("tamper check: fixed inputs must cover all runs");

  const int ell = inst.ell();
  Simulation sim(topo, corruption, rng, hooks);

  std::vector<TamperRunInputs> runs(static_cast<std::size_t>(k));
  std::vector<BitString> outputs(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    TamperRunInputs in =
        fixed_run_inputs != nullptr
            ? (*fixed_run_inputs)[static_cast<std::size_t>(i)]
            : TamperRunInputs{BitString::random(sim.rng(), ell),
                              BitString::random(sim.rng(), ell),
                              ChoiceBit::random(sim.rng())};
    runs[static_cast<std::size_t>(i)] = in;
    outputs[static_cast<std::size_t>(i)] = drive_protocol1(
        sim, inst.paths, in.s0, in.s1, in.c, false, tamper_run_context(i));
  }

  // Audit a uniform size-open_count subset over the direct authenticated
  // channel; any run whose revealed output disagrees with its inputs aborts.
  const std::uint64_t n_subsets = binomial(k, open_count);
  const std::uint64_t rank = fixed_subset_index.has_value()
                                 ? *fixed_subset_index % n_subsets
                                 : sim.rng().draw(n_subsets);
  std::vector<int> opened = unrank_combination(rank, k, open_count);

  for (int i : opened) {
    const auto& in = runs[static_cast<std::size_t>(i)];
    sim.send_direct(topo.bob, topo.alice,
                    "reveal.bob." + std::to_string(i),
                    in.c.str() + "|" +
                        outputs[static_cast<std::size_t>(i)].str(),
                    "reveal");
    sim.send_direct(topo.alice, topo.bob,
                    "reveal.alice." + std::to_string(i),
                    in.s0.str() + "|" + in.s1.str(), "reveal");
  }
  sim.run_rounds();

  for (int i : opened) {
    const auto& in = runs[static_cast<std::size_t>(i)];
    auto [c_str, out_str] = split_pair(sim.expect_received(
        topo.alice, "reveal.bob." + std::to_string(i), "reveal"));
    ChoiceBit revealed_c = parse_choice(c_str);
    BitString revealed_out = BitString::parse_lenient(out_str, ell);
    BitString expected = revealed_c.value ? in.s1 : in.s0;
    if (revealed_out != expected)
      return {false, std::nullopt, i, opened};
  }

  int survivor = -1;
  for (int i = 0; i < k && survivor < 0; ++i)
    if (std::find(opened.begin(), opened.end(), i) == opened.end())
      survivor = i;
  const auto& sr = runs[static_cast<std::size_t>(survivor)];

  // Re-base the surviving random run to the real inputs.
  ChoiceBit d = inst.choice ^ sr.c;
  sim.send_direct(topo.bob, topo.alice, "rebase.d", d.str(), "rebase");
  sim.run_rounds();
  BitString e0 = inst.s0 ^ (d.value ? sr.s1 : sr.s0);
  BitString e1 = inst.s1 ^ (d.value ? sr.s0 : sr.s1);
  sim.send_direct(topo.alice, topo.bob, "rebase.e",
                  e0.str() + "|" + e1.str(), "rebase");
  sim.run_rounds();
  auto [e0_str, e1_str] = split_pair(
      sim.expect_received(topo.bob, "rebase.e", "rebase"));
  BitString chosen_offset = BitString::parse_lenient(
      inst.choice.value ? e1_str : e0_str, ell);
  BitString out = chosen_offset ^ outputs[static_cast<std::size_t>(survivor)];
  sim.note(topo.bob, "output", out.str(), "rebase");
  return {true, out, std::nullopt, opened};
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  std::uint64_t c = 1;
  for (int i = 0; i < k; ++i) {
    c = c * static_cast<std::uint64_t>(n - i) /
        static_cast<std::uint64_t>(i + 1);
  }
  return c;
}

std::vector<int> unrank_combination(std::uint64_t rank, int n, int k) {
  if (rank >= binomial(n, k))
    throw ContractViolation("unrank_combination: rank out of range");
  std::vector<int> out;
  int next = 0;
  for (int remaining = k; remaining > 0; --remaining) {
    for (int e = next;; ++e) {
      std::uint64_t with_e = binomial(n - 1 - e, remaining - 1);
      if (rank < with_e) {
        out.push_back(e);
        next = e + 1;
        break;
      }
      rank -= with_e;
    }
  }
  return out;
}

}  // namespace pathot
