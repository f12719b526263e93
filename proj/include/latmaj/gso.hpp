#pragma once

#include "latmaj/intmat.hpp"
#include "latmaj/numeric.hpp"

#include <cstddef>
#include <vector>

namespace latmaj {

/// Log-norm profile p_i = ln ||b_i*||, one entry per basis row.
using Profile = std::vector<double>;

/// Floating Gram-Schmidt data of a basis.
///
/// mu is stored row-major (d x d, strictly lower part meaningful), r_i is the
/// squared norm of the i-th Gram-Schmidt vector and p_i = ln(r_i)/2.
/// Rows at or after stale_from may hold outdated values.
struct GsoState {
  std::size_t d = 0;
  std::vector<Real> mu;
  std::vector<Real> r;
  std::vector<Real> p;
  std::size_t stale_from = 0;

  Real mu_at(std::size_t i, std::size_t j) const { return mu[i * d + j]; }
  Real& mu_at(std::size_t i, std::size_t j) { return mu[i * d + j]; }
  bool valid() const noexcept { return stale_from >= d; }

  Profile profile() const;
  Real sum_p() const;
  Real sum_sq() const;
  /// LLL potential: sum over rows of (d - i) p_i with 0-based i.
  Real potential() const;
};

/// Exact rational Gram-Schmidt data.
struct ExactGso {
  std::vector<Rational> r;
  std::vector<std::vector<Rational>> mu;  // mu[i][j], j < i
};

/// Textbook Gram-Schmidt over the rationals from the integer Gram matrix.
/// Throws std::invalid_argument when d > 12.
ExactGso exact_gso(const Basis& basis);

inline constexpr std::size_t kExactGsoMaxDim = 12;

/// A basis together with its exact integer Gram matrix and floating GSO.
///
/// All mutation goes through this class so that the three views stay
/// consistent. Floating rows are recomputed from the exact Gram matrix; when
/// cancellation makes that unreliable (||b_i||^2 / r_i above
/// kCancellationLimit) the affected rows fall back to fraction-free integral
/// Gram-Schmidt, which is exact.
class Lattice {
 public:
  static constexpr Real kCancellationLimit = 1e10L;
  static constexpr Real kSizeReductionEta = 1e-10L;

  explicit Lattice(Basis basis);

  std::size_t dim() const noexcept { return basis_.dim(); }
  const Basis& basis() const noexcept { return basis_; }
  const GsoState& gso() const noexcept { return gso_; }
  const Integer& gram(std::size_t i, std::size_t j) const { return gram_[i * dim() + j]; }

  /// row[target] -= coeff * row[source], updating the Gram matrix exactly and
  /// the floating mu row of `target` when it is valid.
  void row_combine(std::size_t target, std::size_t source, const Integer& coeff);

  /// Deep insertion of row `from` at position `to < from`. Rows >= to become
  /// stale in their mu columns >= to.
  void move_row(std::size_t from, std::size_t to);

  /// Adjacent exchange of rows k-1 and k with the closed-form GSO update.
  /// Requires a valid GSO.
  void swap_adjacent(std::size_t k);

  /// Size-reduces row k against rows 0..k-1 (which must be valid), leaving
  /// |mu_{k,j}| <= 1/2 + kSizeReductionEta and row k valid.
  void size_reduce(std::size_t k);

  /// size_reduce(i) for i = from..d-1.
  void size_reduce_from(std::size_t from);

  /// Recomputes every row from the exact Gram matrix without row operations.
  void refresh();

  /// Number of rows that needed the exact integral fallback so far.
  std::size_t exact_fallbacks() const noexcept { return exact_fallbacks_; }

 private:
  void recompute_row(std::size_t i, std::size_t from_col);
  bool row_ill_conditioned(std::size_t i) const;
  void exact_extend(std::size_t upto);
  void exact_row_to_float(std::size_t i);
  void exact_size_reduce(std::size_t k);
  void mark_row_valid(std::size_t i);
  void update_stale_from();
  void combine_exact_views(std::size_t target, std::size_t source, const Integer& coeff);
  void permute_exact_views(std::size_t from, std::size_t to);
  Integer& lambda(std::size_t i, std::size_t j) { return lambda_[i * dim() + j]; }

  Basis basis_;
  std::vector<Integer> gram_;
  std::vector<Real> gram_f_;
  GsoState gso_;
  // Row i has valid mu columns [0, valid_cols_[i]); i + 1 means r_i too.
  std::vector<std::size_t> valid_cols_;
  std::vector<Real> scratch_;

  // Fraction-free data of rows [0, exact_valid_): lambda_{ij} = D_j mu_{ij}
  // and D_i = det of the leading (i+1)x(i+1) Gram block.
  std::vector<Integer> lambda_;
  std::vector<Integer> dd_;
  std::size_t exact_valid_ = 0;
  std::size_t exact_fallbacks_ = 0;
};

/// Floating GSO of `basis`, computed from exact inner products.
GsoState compute_gso(const Basis& basis);

}  // namespace latmaj
