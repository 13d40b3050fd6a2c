#include "calgame/record.hpp"

#include "calgame/errors.hpp"

namespace calgame {

std::string_view to_string(MoveOrder order) {
  switch (order) {
    case MoveOrder::Simultaneous:
      return "Simultaneous";
    case MoveOrder::NatureFirst:
      return "NatureFirst";
    case MoveOrder::MachineFirst:
      return "MachineFirst";
  }
  return "?";
}

MoveOrder parse_move_order(std::string_view name) {
  if (name == "Simultaneous") return MoveOrder::Simultaneous;
  if (name == "NatureFirst") return MoveOrder::NatureFirst;
  if (name == "MachineFirst") return MoveOrder::MachineFirst;
  throw ConfigError("unknown move order '" + std::string(name) + "'");
}

void Trace::append(const RoundRecord& record) {
  if (record.t != static_cast<Round>(records_.size())) {
    throw DataIntegrityError("round " + std::to_string(record.t) +
                             " appended at position " +
                             std::to_string(records_.size()));
  }
  records_.push_back(record);
}

std::span<const RoundRecord> Trace::prefix(Round t) const {
  if (t < 0 || static_cast<std::size_t>(t) > records_.size()) {
    throw DomainError("prefix length " + std::to_string(t) + " out of range");
  }
  return std::span<const RoundRecord>(records_).first(static_cast<std::size_t>(t));
}

History::History(std::span<const RoundRecord> records) : records_(records) {
  for (const auto& r : records) hits_ += r.outcome.y;
}

History History::with_hits(std::span<const RoundRecord> records, std::int64_t hits) {
  History h;
  h.records_ = records;
  h.hits_ = hits;
  return h;
}

}  // namespace calgame
