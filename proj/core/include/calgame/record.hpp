#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "calgame/grid.hpp"

namespace calgame {

using Round = std::int32_t;

enum class MoveOrder : std::uint8_t { Simultaneous, NatureFirst, MachineFirst };

std::string_view to_string(MoveOrder order);
// Throws ConfigError for unknown names.
MoveOrder parse_move_order(std::string_view name);

// Indicator of the forecast event.
struct Outcome {
  std::uint8_t y = 0;

  static constexpr Outcome hit() { return Outcome{1}; }
  static constexpr Outcome miss() { return Outcome{0}; }
  friend constexpr bool operator==(Outcome, Outcome) = default;
};

// One round of the game. `forecast` and `true_prob` are the machine's and
// Nature's probabilities for the outcome recorded alongside them.
struct RoundRecord {
  Round t = 0;
  Forecast forecast;
  Forecast true_prob;
  Outcome outcome;
  bool selected = false;
  MoveOrder move_order = MoveOrder::Simultaneous;

  bool matched() const { return forecast == true_prob; }
  friend bool operator==(const RoundRecord&, const RoundRecord&) = default;
};

// A realized sample path.
class Trace {
 public:
  Trace() = default;
  Trace(std::uint64_t master_seed, std::int64_t replication_index)
      : master_seed_(master_seed), replication_index_(replication_index) {}

  // Throws DataIntegrityError if record.t is not the next round index.
  void append(const RoundRecord& record);
  void reserve(std::size_t n) { records_.reserve(n); }

  std::span<const RoundRecord> records() const { return records_; }
  std::span<const RoundRecord> prefix(Round t) const;
  const RoundRecord& operator[](std::size_t t) const { return records_[t]; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  std::uint64_t master_seed() const { return master_seed_; }
  std::int64_t replication_index() const { return replication_index_; }

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::vector<RoundRecord> records_;
  std::uint64_t master_seed_ = 0;
  std::int64_t replication_index_ = 0;
};

// Read-only view of rounds 0..t-1 together with the running outcome count,
// so frequency forecasters stay O(1) per round.
class History {
 public:
  History() = default;
  explicit History(std::span<const RoundRecord> records);

  // Caller guarantees `hits` equals the number of outcomes equal to 1 in
  // `records`; the engine maintains it incrementally.
  static History with_hits(std::span<const RoundRecord> records, std::int64_t hits);

  std::span<const RoundRecord> records() const { return records_; }
  Round length() const { return static_cast<Round>(records_.size()); }
  std::int64_t hits() const { return hits_; }

 private:
  std::span<const RoundRecord> records_;
  std::int64_t hits_ = 0;
};

}  // namespace calgame
