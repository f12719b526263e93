#include "helpers.hpp"

#include "latmaj/intmat.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace latmaj;
using latmaj::testing::rows;

TEST(Basis, RejectsRaggedShortAndDependentRows) {
  EXPECT_THROW(rows({{1, 0}, {0}}), BasisError);
  EXPECT_THROW(rows({{1}, {2}}), BasisError);
  EXPECT_THROW(rows({{1, 2, 3}, {2, 4, 6}}), BasisError);
  EXPECT_NO_THROW(rows({{1, 2, 3}, {2, 4, 7}}));
}

TEST(Basis, RowCombineAndMove) {
  Basis b = rows({{1, 0, 0}, {0, 1, 0}, {3, 4, 1}});
  b.row_combine(2, 0, Integer(3));
  EXPECT_EQ(b.row(2), (Basis::Row{0, 4, 1}));
  b.move_row(2, 0);
  EXPECT_EQ(b.row(0), (Basis::Row{0, 4, 1}));
  EXPECT_EQ(b.row(1), (Basis::Row{1, 0, 0}));
  EXPECT_EQ(b.row(2), (Basis::Row{0, 1, 0}));
}

TEST(Basis, GramDeterminantIsInvariantUnderUnimodularOps) {
  Basis b = latmaj::testing::small_basis(7, 5);
  const Integer g = gram_determinant(b);
  b.row_combine(4, 1, Integer(-17));
  b.move_row(6, 2);
  EXPECT_EQ(gram_determinant(b), g);
  EXPECT_NEAR(log_det(b), 0.5 * std::log(g.get_d()), 1e-9);
}

TEST(Basis, KnownDeterminant) {
  const Basis b = rows({{2, 0}, {1, 3}});
  EXPECT_EQ(gram_determinant(b), Integer(36));
  EXPECT_NEAR(log_det(b), std::log(6.0), 1e-12);
}

TEST(ExactRank, HandlesBigEntriesAndDeficiency) {
  const Integer big("123456789012345678901234567890");
  std::vector<Basis::Row> r = {{big, 1, 0}, {0, 1, 1}, {big, 2, 1}};
  EXPECT_EQ(exact_rank(r), 2u);
  r[2][2] = 2;
  EXPECT_EQ(exact_rank(r), 3u);
}

TEST(BasisIo, RoundTrip) {
  const Basis b = latmaj::testing::small_basis(5, 9);
  EXPECT_EQ(read_basis(write_basis(b)), b);
  EXPECT_EQ(read_basis("[[1 0]\n [0   -3]]"), rows({{1, 0}, {0, -3}}));
  EXPECT_THROW(read_basis("[[1 0][0 1]"), BasisError);
  EXPECT_THROW(read_basis("[[1 x][0 1]]"), BasisError);
}
