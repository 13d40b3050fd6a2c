#pragma once

#include <cstdint>
#include <limits>

#include "calgame/grid.hpp"
#include "calgame/record.hpp"

namespace calgame {

enum class StreamTag : std::uint64_t {
  Nature = 1,
  Outcome = 2,
  Forecaster = 3,
};

// Counter-based random stream. The sequence is a pure function of the key
// (master seed, replication, round, tag) and the draw counter, so streams
// never share state and can be consumed in any interleaving or on any
// thread without changing what each one yields.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t master_seed, std::uint64_t replication, std::uint64_t round,
            StreamTag tag);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on [0, 1) with 53 random bits.
  double uniform();

  std::uint64_t key() const { return key_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// 1 with probability p.value(), else 0. p = 0 and p = 1 are exact.
Outcome bernoulli(Forecast p, RngStream& stream);

}  // namespace calgame
