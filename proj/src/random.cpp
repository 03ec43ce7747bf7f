#include "pathot/random.hpp"

namespace pathot {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

}  // namespace

SeededRng SeededRng::for_trial(std::uint64_t seed, std::uint64_t trial) {
  std::uint64_t s = seed ^ (0xA5A5A5A5DEADBEEFull + trial);
  // One scrambling round so consecutive trial indices decorrelate.
  return SeededRng(splitmix64(s));
}

std::uint64_t SeededRng::next_u64() { return splitmix64(state_); }

std::uint64_t SeededRng::draw(std::uint64_t n) {
  if (n == 0) throw ContractViolation("draw: range must be positive");
  if (n == 1) return 0;
  // Rejection sampling keeps the draw exactly uniform.
  const std::uint64_t rem = (UINT64_MAX % n + 1) % n;
  const std::uint64_t limit = UINT64_MAX - rem;  // accept v <= limit
  std::uint64_t v;
  do {
    v = next_u64();
  } while (v > limit);
  return v % n;
}

std::uint64_t TapeSource::draw(std::uint64_t n) {
  if (n == 0) throw ContractViolation("draw: range must be positive");
  if (n == 1) return 0;
  if (digits_ == nullptr) {
    // Probe: record the radix and enforce the enumeration bound.
    if (running_total_ > max_total_ / n)
      throw EnumerationBoundError(
          "tape space exceeds the exact-enumeration bound; "
          "fall back to Monte Carlo");
    running_total_ *= n;
    radices_->push_back(n);
    ++pos_;
    return 0;
  }
  if (pos_ >= digits_->size())
    throw Error("tape replay: scenario drew more values than the probe run");
  if ((*radices_)[pos_] != n)
    throw Error("tape replay: draw radix differs from the probe run");
  return (*digits_)[pos_++];
}

}  // namespace pathot
