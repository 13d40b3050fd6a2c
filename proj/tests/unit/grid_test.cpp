#include <gtest/gtest.h>

#include <random>

#include "calgame/errors.hpp"
#include "calgame/grid.hpp"

namespace calgame {
namespace {

TEST(ProbabilityGrid, ValuesAreStrictlyIncreasingFromZeroToOne) {
  for (int g : {2, 3, 11, 101}) {
    ProbabilityGrid grid(g);
    EXPECT_EQ(grid.value(0), 0.0);
    EXPECT_EQ(grid.value(grid.last_index()), 1.0);
    for (int i = 1; i < g; ++i) EXPECT_LT(grid.value(i - 1), grid.value(i));
  }
}

TEST(ProbabilityGrid, RejectsDegenerateResolution) {
  EXPECT_THROW(ProbabilityGrid(1), ConfigError);
  EXPECT_THROW(ProbabilityGrid(0), ConfigError);
  EXPECT_THROW(ProbabilityGrid(70000), ConfigError);
}

TEST(ProbabilityGrid, SnapExamples) {
  ProbabilityGrid grid(11);
  EXPECT_EQ(grid.snap(0.3).index(), 3);
  EXPECT_EQ(grid.snap(0.25).index(), 2);  // tie goes down
  EXPECT_EQ(grid.snap(0.33).index(), 3);
  EXPECT_EQ(grid.snap(0.0).index(), 0);
  EXPECT_EQ(grid.snap(1.0).index(), 10);
  EXPECT_EQ(grid.snap(0.96).index(), 10);
}

TEST(ProbabilityGrid, SnapRejectsOutsideUnitInterval) {
  ProbabilityGrid grid(11);
  EXPECT_THROW(grid.snap(-0.01), DomainError);
  EXPECT_THROW(grid.snap(1.5), DomainError);
  EXPECT_THROW(grid.snap(std::nan("")), DomainError);
}

TEST(ProbabilityGrid, SnapIsNearestAgainstBruteForce) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int g : {2, 5, 11, 37}) {
    ProbabilityGrid grid(g);
    for (int trial = 0; trial < 2000; ++trial) {
      const double x = unit(gen);
      int best = 0;
      for (int i = 1; i < g; ++i) {
        if (std::abs(x - grid.value(i)) < std::abs(x - grid.value(best))) best = i;
      }
      EXPECT_EQ(grid.snap(x).index(), best) << "x=" << x << " G=" << g;
    }
  }
}

TEST(ProbabilityGrid, ExactAcceptsOnlyGridValues) {
  ProbabilityGrid grid(11);
  ASSERT_TRUE(grid.exact(0.7));
  EXPECT_EQ(grid.exact(0.7)->index(), 7);
  EXPECT_FALSE(grid.exact(0.75));
  EXPECT_FALSE(grid.exact(0.3 + 1e-12));
  EXPECT_THROW(grid.require_exact(0.35, "p"), ConfigError);
}

TEST(Forecast, EqualityIsIndexEquality) {
  ProbabilityGrid grid(11);
  EXPECT_EQ(grid.at(3), grid.snap(0.3));
  EXPECT_NE(grid.at(3), grid.at(4));
  EXPECT_NE(ProbabilityGrid(11).at(5), ProbabilityGrid(21).at(10));
}

TEST(Forecast, FormattingReadsBackExactly) {
  for (int g : {3, 7, 11, 1001}) {
    ProbabilityGrid grid(g);
    for (int i = 0; i < g; ++i) {
      const auto text = format_probability(grid.at(i));
      EXPECT_EQ(std::stod(text), grid.value(i)) << text;
    }
  }
  EXPECT_EQ(format_probability(ProbabilityGrid(11).at(3)), "0.3");
  EXPECT_EQ(format_probability(ProbabilityGrid(11).at(10)), "1");
}

}  // namespace
}  // namespace calgame
