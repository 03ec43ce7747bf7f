#include "pathot/ddh_ot.hpp"

#include <algorithm>

namespace pathot {

KeyPair keygen(const CyclicGroup& grp, RandomSource& rng) {
  std::uint64_t sk = 1 + rng.draw(grp.q - 1);
  return {grp.pow(grp.g, sk), sk};
}

HomCiphertext encrypt(const CyclicGroup& grp, std::uint64_t pk,
                      std::uint64_t m, RandomSource& rng) {
  std::uint64_t x = rng.draw(grp.q);
  return {grp.pow(grp.g, x),
          grp.mul(grp.pow(pk, x), grp.pow(grp.g, m % grp.q))};
}

std::uint64_t decrypt(const CyclicGroup& grp, std::uint64_t sk,
                      const HomCiphertext& ct, std::uint64_t max_m) {
  std::uint64_t w = grp.mul(ct.b, grp.inv(grp.pow(ct.a, sk)));
  std::uint64_t acc = 1;
  for (std::uint64_t m = 0; m <= max_m; ++m) {
    if (acc == w) return m;
    acc = grp.mul(acc, grp.g);
  }
  throw Error("decrypt: plaintext outside the search bound");
}

HomCiphertext hom_add(const CyclicGroup& grp, const HomCiphertext& c1,
                      const HomCiphertext& c2) {
  return {grp.mul(c1.a, c2.a), grp.mul(c1.b, c2.b)};
}

HomCiphertext hom_scale(const CyclicGroup& grp, const HomCiphertext& c,
                        std::uint64_t k) {
  return {grp.pow(c.a, k % grp.q), grp.pow(c.b, k % grp.q)};
}

HomCiphertext hom_minus_one(const CyclicGroup& grp, const HomCiphertext& c) {
  // Enc(1; 0) = (1, g); subtracting it shifts the plaintext by -1.
  return {c.a, grp.mul(c.b, grp.inv(grp.g))};
}

std::pair<HomCiphertext, HomCiphertext> ot_respond_explicit(
    const CyclicGroup& grp, std::uint64_t pk, const HomCiphertext& choice_ct,
    std::uint64_t m0, std::uint64_t m1, std::uint64_t x0, std::uint64_t r0,
    std::uint64_t x1, std::uint64_t r1) {
  HomCiphertext enc0{grp.pow(grp.g, x0),
                     grp.mul(grp.pow(pk, x0), grp.pow(grp.g, m0 % grp.q))};
  HomCiphertext enc1{grp.pow(grp.g, x1),
                     grp.mul(grp.pow(pk, x1), grp.pow(grp.g, m1 % grp.q))};
  HomCiphertext z0 = hom_add(grp, enc0, hom_scale(grp, choice_ct, r0));
  HomCiphertext z1 =
      hom_add(grp, enc1, hom_scale(grp, hom_minus_one(grp, choice_ct), r1));
  return {z0, z1};
}

std::pair<HomCiphertext, HomCiphertext> ot_respond(
    const CyclicGroup& grp, std::uint64_t pk, const HomCiphertext& choice_ct,
    std::uint64_t m0, std::uint64_t m1, RandomSource& rng) {
  std::uint64_t x0 = rng.draw(grp.q);
  std::uint64_t r0 = rng.draw(grp.q);
  std::uint64_t x1 = rng.draw(grp.q);
  std::uint64_t r1 = rng.draw(grp.q);
  return ot_respond_explicit(grp, pk, choice_ct, m0, m1, x0, r0, x1, r1);
}

int chunk_bits(const CyclicGroup& grp) {
  int bits = 0;
  while ((1ull << (bits + 1)) <= grp.q && bits < 8) ++bits;
  if (bits < 1)
    throw ContractViolation("group too small to carry even one bit per chunk");
  return bits;
}

BitString run_ddh_ot(const CyclicGroup& grp, const BitString& m0,
                     const BitString& m1, ChoiceBit choice, RandomSource& rng,
                     DdhOtTranscript* transcript) {
  if (m0.length() != m1.length())
    throw ContractViolation("run_ddh_ot: inputs must have equal length");
  const int len = m0.length();
  const int cb = chunk_bits(grp);

  // Receiver side.
  KeyPair keys = keygen(grp, rng);
  HomCiphertext choice_ct =
      encrypt(grp, keys.pk, choice.value ? 1 : 0, rng);

  // Sender side, one response pair per chunk (most significant chunk first).
  std::vector<std::pair<HomCiphertext, HomCiphertext>> responses;
  for (int off = 0; off < len; off += cb) {
    const int width = std::min(cb, len - off);
    std::uint64_t chunk0 = (m0.value() >> (len - off - width)) &
                           ((1ull << width) - 1);
    std::uint64_t chunk1 = (m1.value() >> (len - off - width)) &
                           ((1ull << width) - 1);
    responses.push_back(
        ot_respond(grp, keys.pk, choice_ct, chunk0, chunk1, rng));
  }

  if (transcript != nullptr)
    *transcript = {keys.pk, choice_ct, responses};

  // Receiver decrypts its branch and reassembles the string.
  std::uint64_t out = 0;
  int assembled = 0;
  for (const auto& [z0, z1] : responses) {
    const int width = std::min(cb, len - assembled);
    std::uint64_t m =
        decrypt(grp, keys.sk, choice.value ? z1 : z0, grp.q - 1);
    out = (out << width) | (m & ((1ull << width) - 1));
    assembled += width;
  }
  return BitString(out, len);
}

std::uint64_t brute_dlog(const CyclicGroup& grp, std::uint64_t h) {
  if (grp.q > (1ull << 20))
    throw RefusesToBruteForceError(
        "group order exceeds the brute-force bound");
  std::uint64_t acc = 1;
  for (std::uint64_t e = 0; e < grp.q; ++e) {
    if (acc == h % grp.p) return e;
    acc = grp.mul(acc, grp.g);
  }
  throw Error("brute_dlog: element outside the generated subgroup");
}

bool ddh_solve_toy(const CyclicGroup& grp, std::uint64_t ga, std::uint64_t gb,
                   std::uint64_t gc) {
  std::uint64_t a = brute_dlog(grp, ga);
  std::uint64_t b = brute_dlog(grp, gb);
  std::uint64_t ab = static_cast<std::uint64_t>(
      static_cast<unsigned __int128>(a) * b % grp.q);
  return gc % grp.p == grp.pow(grp.g, ab);
}

int sender_choice_attack(const CyclicGroup& grp, std::uint64_t pk,
                         const HomCiphertext& choice_ct) {
  for (int c = 0; c <= 1; ++c) {
    std::uint64_t masked = grp.mul(
        choice_ct.b, grp.inv(grp.pow(grp.g, static_cast<std::uint64_t>(c))));
    // E encrypts c iff (pk, E.a, E.b * g^-c) is a DH triple.
    if (ddh_solve_toy(grp, pk, choice_ct.a, masked)) return c;
  }
  throw Error("sender_choice_attack: ciphertext encrypts neither 0 nor 1");
}

}  // namespace pathot
