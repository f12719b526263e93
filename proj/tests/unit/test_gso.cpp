#include "helpers.hpp"

#include "latmaj/gso.hpp"
#include "latmaj/latgen.hpp"
#include "latmaj/reduction.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace latmaj;
using latmaj::testing::rel_err;
using latmaj::testing::small_basis;

namespace {

// Relative error against the rational oracle; mu entries near zero are
// compared on the absolute scale of 1.
void expect_matches_oracle(const Basis& b, const GsoState& g, double tol) {
  const ExactGso ex = exact_gso(b);
  for (std::size_t i = 0; i < b.dim(); ++i) {
    EXPECT_LT(rel_err(static_cast<double>(g.r[i]), ex.r[i].get_d()), tol) << "r" << i;
    for (std::size_t j = 0; j < i; ++j) {
      const double want = ex.mu[i][j].get_d();
      EXPECT_LT(std::abs(static_cast<double>(g.mu_at(i, j)) - want) / std::max(1.0, std::abs(want)), tol)
          << "mu" << i << "," << j;
    }
  }
}

void expect_same_gso(const GsoState& a, const GsoState& b, double tol) {
  ASSERT_EQ(a.d, b.d);
  for (std::size_t i = 0; i < a.d; ++i) {
    EXPECT_LT(rel_err(static_cast<double>(a.r[i]), static_cast<double>(b.r[i])), tol) << "r" << i;
    for (std::size_t j = 0; j < i; ++j) {
      EXPECT_NEAR(static_cast<double>(a.mu_at(i, j)), static_cast<double>(b.mu_at(i, j)), tol) << i << "," << j;
    }
  }
}

}  // namespace

TEST(ExactGso, TwoByTwo) {
  const Basis b = latmaj::testing::rows({{3, 1}, {2, 2}});
  const ExactGso g = exact_gso(b);
  EXPECT_EQ(g.r[0], Rational(10));
  EXPECT_EQ(g.mu[1][0], Rational(4, 5));
  EXPECT_EQ(g.r[1], Rational(8, 5));  // det^2 / r0 = 16 / 10
  EXPECT_THROW(exact_gso(small_basis(13, 1)), std::invalid_argument);
}

TEST(Gso, MatchesRationalOracleAcrossFamilies) {
  for (Family f : {Family::uniform, Family::gaussian, Family::qary, Family::goldstein_mayer}) {
    for (std::size_t d : {4, 8, 12}) {
      const Basis b = small_basis(d, 100 + d, f);
      expect_matches_oracle(b, compute_gso(b), 1e-12);
    }
  }
}

TEST(Gso, ProfileAndPotential) {
  const Basis b = small_basis(6, 2);
  const GsoState g = compute_gso(b);
  Real pot = 0;
  Real sum = 0;
  for (std::size_t i = 0; i < g.d; ++i) {
    EXPECT_NEAR(static_cast<double>(g.p[i]), 0.5 * std::log(static_cast<double>(g.r[i])), 1e-12);
    pot += static_cast<Real>(g.d - i) * g.p[i];
    sum += g.p[i];
  }
  EXPECT_NEAR(static_cast<double>(g.potential()), static_cast<double>(pot), 1e-9);
  EXPECT_NEAR(static_cast<double>(sum), log_det(b), 1e-9);
}

TEST(Lattice, SizeReduceKeepsOracleAgreementAndBound) {
  for (std::uint64_t s = 0; s < 5; ++s) {
    Lattice lat(small_basis(10, s, Family::qary));
    lat.size_reduce_from(1);
    EXPECT_TRUE(is_size_reduced(lat.gso(), 1e-9));
    expect_matches_oracle(lat.basis(), lat.gso(), 1e-10);
  }
}

TEST(Lattice, SwapAdjacentMatchesRecompute) {
  Lattice lat(small_basis(9, 4));
  lat.size_reduce_from(1);
  for (std::size_t k : {1, 4, 8, 3}) {
    lat.swap_adjacent(k);
    expect_same_gso(lat.gso(), compute_gso(lat.basis()), 1e-10);
  }
}

TEST(Lattice, MoveRowThenReduceMatchesRecompute) {
  Lattice lat(small_basis(11, 8, Family::gaussian));
  lat.size_reduce_from(1);
  lat.move_row(9, 2);
  EXPECT_FALSE(lat.gso().valid());
  lat.size_reduce_from(2);
  EXPECT_TRUE(lat.gso().valid());
  expect_same_gso(lat.gso(), compute_gso(lat.basis()), 1e-10);
  const Integer det = gram_determinant(small_basis(11, 8, Family::gaussian));
  EXPECT_EQ(gram_determinant(lat.basis()), det);
}

TEST(Lattice, GramMatrixStaysExact) {
  Lattice lat(small_basis(7, 12));
  lat.row_combine(5, 2, Integer(7));
  lat.move_row(6, 0);
  lat.size_reduce_from(0);
  for (std::size_t i = 0; i < 7; ++i) {
    for (std::size_t j = 0; j < 7; ++j) {
      EXPECT_EQ(lat.gram(i, j), inner_product(lat.basis().row(i), lat.basis().row(j)));
    }
  }
}

TEST(Lattice, RefreshIsIdempotent) {
  Lattice lat(small_basis(8, 21));
  lat.size_reduce_from(1);
  const GsoState before = lat.gso();
  lat.refresh();
  expect_same_gso(before, lat.gso(), 1e-12);
}

TEST(Lattice, IllConditionedRowsUseExactFallback) {
  // Nearly parallel rows: ||b_1||^2 / r_1 is about 1e48.
  const Integer big("1000000000000");
  const Basis b(std::vector<Basis::Row>{{big, Integer(1)}, {Integer(big + 1), Integer(1)}});
  Lattice lat(b);
  expect_matches_oracle(lat.basis(), lat.gso(), 1e-12);
  EXPECT_GT(lat.exact_fallbacks(), 0u);
}
