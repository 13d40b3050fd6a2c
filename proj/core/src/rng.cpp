#include "calgame/rng.hpp"

namespace calgame {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t replication,
                     std::uint64_t round, StreamTag tag) {
  std::uint64_t k = mix64(master_seed + kGolden);
  k = mix64(k ^ (replication + kGolden));
  k = mix64(k ^ (round + 2 * kGolden));
  k = mix64(k ^ (static_cast<std::uint64_t>(tag) + 3 * kGolden));
  key_ = k;
}

RngStream::result_type RngStream::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

double RngStream::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

Outcome bernoulli(Forecast p, RngStream& stream) {
  return stream.uniform() < p.value() ? Outcome::hit() : Outcome::miss();
}

}  // namespace calgame
