#pragma once

#include "latmaj/numeric.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace latmaj {

/// Malformed or rank-deficient basis input.
class BasisError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A lattice basis: d linearly independent integer row vectors of length m >= d.
///
/// Rows are indexed from 0. Linear independence is verified once, at
/// construction, with exact arithmetic; the row operations below are
/// unimodular and keep it true.
class Basis {
 public:
  using Row = std::vector<Integer>;

  Basis() = default;

  /// Throws BasisError on ragged rows, m < d, or linearly dependent rows.
  explicit Basis(std::vector<Row> rows);

  std::size_t dim() const noexcept { return rows_.size(); }
  std::size_t ambient_dim() const noexcept { return rows_.empty() ? 0 : rows_.front().size(); }

  const Row& row(std::size_t i) const { return rows_.at(i); }
  const std::vector<Row>& rows() const noexcept { return rows_; }

  /// row[target] -= coeff * row[source].
  void row_combine(std::size_t target, std::size_t source, const Integer& coeff);

  /// Moves row `from` to position `to < from`; rows to..from-1 shift down by one.
  void move_row(std::size_t from, std::size_t to);

  friend bool operator==(const Basis&, const Basis&) = default;

 private:
  std::vector<Row> rows_;
};

Integer inner_product(const Basis::Row& a, const Basis::Row& b);

/// Rank over the rationals. Full rank is certified modulo a 61-bit prime when
/// possible; otherwise fraction-free elimination decides exactly.
std::size_t exact_rank(const std::vector<Basis::Row>& rows);

/// det(B B^T), exactly.
Integer gram_determinant(const Basis& basis);

/// ln |det B| = 0.5 ln det(B B^T).
double log_det(const Basis& basis);

/// Parses the bracketed format `[[1 0][0 1]]`; any whitespace separates tokens.
Basis read_basis(std::string_view text);

/// One row per line: "[[1 0]\n[0 1]\n]\n".
std::string write_basis(const Basis& basis);

}  // namespace latmaj
