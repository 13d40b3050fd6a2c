#pragma once

#include <iosfwd>

#include "calgame/grid.hpp"
#include "calgame/record.hpp"

namespace calgame {

// Header: t,forecast,true_prob,outcome,selected,move_order
// Probabilities are written as the shortest decimal that reads back to the
// identical grid value.
void write_trace_csv(std::ostream& out, const Trace& trace);

// Throws DataIntegrityError on a malformed header or row, or on a
// probability that is not exactly a value of `grid`.
Trace read_trace_csv(std::istream& in, const ProbabilityGrid& grid);

}  // namespace calgame
