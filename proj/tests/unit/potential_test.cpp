#include <gtest/gtest.h>

#include <numeric>

#include "bnet/potential.hpp"

namespace bnet {
namespace {

PotentialTable counting_table(std::vector<std::size_t> scope, std::vector<std::size_t> cards) {
  auto t = PotentialTable::full(scope, cards, 0.0);
  std::iota(t.cells().begin(), t.cells().end(), 1.0);
  return t;
}

TEST(PotentialTable, RemovalRepacksTwentySevenToNine) {
  const std::vector<std::size_t> cards{3, 3, 3};
  auto t = counting_table({0, 1, 2}, cards);
  ASSERT_EQ(t.size(), 27u);
  EXPECT_EQ(t.restrict_to(2, 0), 27u);
  EXPECT_EQ(t.size(), 9u);
  EXPECT_EQ(t.allowed()[2], (std::vector<std::size_t>{0}));
  // Kept cells are those with the last digit 0: 1, 4, 7, ...
  for (std::size_t i = 0; i < 9; ++i) EXPECT_EQ(t.cells()[i], 1.0 + 3.0 * static_cast<double>(i));
}

TEST(PotentialTable, RemovalOnMiddleVariable) {
  const std::vector<std::size_t> cards{2, 3, 2};
  auto t = counting_table({0, 1, 2}, cards);
  EXPECT_EQ(t.restrict_to(1, 2), 12u);
  EXPECT_EQ(t.cells(), (std::vector<double>{5, 6, 11, 12}));
  std::vector<std::size_t> x{1, 2, 0};
  EXPECT_EQ(t.value_at(x), 11.0);
  x[1] = 0;
  EXPECT_EQ(t.value_at(x), 0.0);
}

TEST(PotentialTable, RestrictIsIdempotentAndScopeAware) {
  const std::vector<std::size_t> cards{2, 2};
  auto t = counting_table({0}, cards);
  EXPECT_EQ(t.restrict_to(1, 0), 0u);
  EXPECT_EQ(t.restrict_to(0, 1), 2u);
  EXPECT_EQ(t.restrict_to(0, 1), 0u);
  EXPECT_EQ(t.cells(), (std::vector<double>{2}));
}

TEST(PotentialTable, ZeroingKeepsShape) {
  const std::vector<std::size_t> cards{3, 3};
  auto t = counting_table({0, 1}, cards);
  EXPECT_EQ(t.zero_incompatible(0, 1), 9u);
  EXPECT_EQ(t.size(), 9u);
  EXPECT_EQ(t.cells(), (std::vector<double>{0, 0, 0, 4, 5, 6, 0, 0, 0}));
}

TEST(PotentialTable, MarginalizeMatchesDirectSums) {
  const std::vector<std::size_t> cards{2, 3, 2};
  auto t = counting_table({0, 1, 2}, cards);
  const std::size_t onto[] = {1};
  auto m = t.marginalize_onto(onto);
  // value of var1 = j: sum over a, c of cell(a, j, c) = 1 + 2*j + 6*a + c + 1 ...
  std::vector<double> expected(3, 0.0);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t j = 0; j < 3; ++j)
      for (std::size_t c = 0; c < 2; ++c) expected[j] += t.cells()[a * 6 + j * 2 + c];
  EXPECT_EQ(m.cells(), expected);

  const std::size_t onto2[] = {0, 2};
  auto m2 = t.marginalize_onto(onto2);
  EXPECT_DOUBLE_EQ(m2.sum(), t.sum());
  EXPECT_EQ(m2.cells()[0], 1.0 + 3.0 + 5.0);
}

TEST(PotentialTable, MarginalizeAfterRestrictionKeepsAllowedLists) {
  const std::vector<std::size_t> cards{3, 3};
  auto t = counting_table({0, 1}, cards);
  t.restrict_to(0, 2);
  const std::size_t onto[] = {0};
  auto m = t.marginalize_onto(onto);
  EXPECT_EQ(m.allowed()[0], (std::vector<std::size_t>{2}));
  EXPECT_EQ(m.cells(), (std::vector<double>{7 + 8 + 9}));
}

TEST(PotentialTable, MultiplyRatioTreatsZeroOverZeroAsZero) {
  const std::vector<std::size_t> cards{2, 2};
  auto t = counting_table({0, 1}, cards);
  auto num = PotentialTable::full({1}, cards, 0.0);
  auto den = PotentialTable::full({1}, cards, 0.0);
  num.cells() = {6.0, 0.0};
  den.cells() = {2.0, 0.0};
  t.multiply_ratio(num, den);
  EXPECT_EQ(t.cells(), (std::vector<double>{3, 0, 9, 0}));
}

TEST(PotentialTable, MismatchedRestrictionIsRejected) {
  const std::vector<std::size_t> cards{2, 2};
  auto t = counting_table({0, 1}, cards);
  auto sep = PotentialTable::full({1}, cards, 1.0);
  t.restrict_to(1, 0);
  EXPECT_THROW(t.multiply_ratio(sep, sep), std::logic_error);
}

TEST(Strides, RowMajor) {
  const std::size_t dims[] = {2, 3, 4};
  EXPECT_EQ(row_major_strides(dims), (std::vector<std::size_t>{12, 4, 1}));
}

}  // namespace
}  // namespace bnet
