#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pathot/bitstring.hpp"
#include "pathot/group.hpp"
#include "pathot/random.hpp"

namespace pathot {

struct KeyPair {
  std::uint64_t pk = 0;
  std::uint64_t sk = 0;
};

/// Exponent ElGamal: (g^x, pk^x * g^m). Additively homomorphic in m.
struct HomCiphertext {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  bool operator==(const HomCiphertext&) const = default;
};

/// pk = g^sk with sk uniform in [1, q-1].
KeyPair keygen(const CyclicGroup& grp, RandomSource& rng);

HomCiphertext encrypt(const CyclicGroup& grp, std::uint64_t pk,
                      std::uint64_t m, RandomSource& rng);
/// Decryption by bounded search of the exponent; throws when no value in
/// [0, max_m] matches.
std::uint64_t decrypt(const CyclicGroup& grp, std::uint64_t sk,
                      const HomCiphertext& ct, std::uint64_t max_m);

HomCiphertext hom_add(const CyclicGroup& grp, const HomCiphertext& c1,
                      const HomCiphertext& c2);
HomCiphertext hom_scale(const CyclicGroup& grp, const HomCiphertext& c,
                        std::uint64_t k);
/// Subtracts the plaintext constant 1 (combine with Enc(1; 0)).
HomCiphertext hom_minus_one(const CyclicGroup& grp, const HomCiphertext& c);

/// Sender's response pair for one OT chunk, with explicit randomness so the
/// sender-security enumeration can walk it. For any receiver ciphertext E,
/// Z0 decrypts to m0 + r0*Dec(E) and Z1 to m1 + r1*(Dec(E) - 1); at most one
/// of the two multipliers can be zero, so at least one branch is a uniformly
/// padded value when r0, r1 are uniform on [0, q).
std::pair<HomCiphertext, HomCiphertext> ot_respond_explicit(
    const CyclicGroup& grp, std::uint64_t pk, const HomCiphertext& choice_ct,
    std::uint64_t m0, std::uint64_t m1, std::uint64_t x0, std::uint64_t r0,
    std::uint64_t x1, std::uint64_t r1);

std::pair<HomCiphertext, HomCiphertext> ot_respond(
    const CyclicGroup& grp, std::uint64_t pk, const HomCiphertext& choice_ct,
    std::uint64_t m0, std::uint64_t m1, RandomSource& rng);

/// Wire messages of one chosen-input OT run.
struct DdhOtTranscript {
  std::uint64_t pk = 0;
  HomCiphertext choice_ct;
  std::vector<std::pair<HomCiphertext, HomCiphertext>> responses;
};

/// Bits carried per chunk: min(8, floor(log2 q)).
int chunk_bits(const CyclicGroup& grp);

/// 1-out-of-2 string OT between a sender holding (m0, m1) and a receiver
/// holding the choice bit; messages longer than one chunk are split, all
/// chunks under the same encrypted choice. The receiver learns m_choice; the
/// unchosen branch decrypts to a uniformly padded value.
BitString run_ddh_ot(const CyclicGroup& grp, const BitString& m0,
                     const BitString& m1, ChoiceBit choice, RandomSource& rng,
                     DdhOtTranscript* transcript = nullptr);

/// Exhaustive discrete log; refuses when q > 2^20.
std::uint64_t brute_dlog(const CyclicGroup& grp, std::uint64_t h);

/// True iff c = a*b for the triple (g^a, g^b, g^c). Only on brute-forceable
/// groups; throws RefusesToBruteForceError otherwise.
bool ddh_solve_toy(const CyclicGroup& grp, std::uint64_t ga, std::uint64_t gb,
                   std::uint64_t gc);

/// Dishonest-sender procedure: decides which bit the receiver encrypted by
/// testing both candidate DH triples. Succeeds always on brute-forceable
/// groups; refuses on larger ones.
int sender_choice_attack(const CyclicGroup& grp, std::uint64_t pk,
                         const HomCiphertext& choice_ct);

}  // namespace pathot
