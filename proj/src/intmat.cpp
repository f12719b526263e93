#include "latmaj/intmat.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <sstream>
#include <utility>

namespace latmaj {

namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kModPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b) {
  return static_cast<std::uint64_t>((static_cast<u128>(a) * b) % kModPrime);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t e) {
  std::uint64_t acc = 1;
  while (e != 0) {
    if (e & 1) acc = mul_mod(acc, base);
    base = mul_mod(base, base);
    e >>= 1;
  }
  return acc;
}

std::size_t rank_mod_prime(const std::vector<Basis::Row>& rows) {
  const std::size_t n = rows.size();
  const std::size_t m = n == 0 ? 0 : rows.front().size();
  std::vector<std::vector<std::uint64_t>> a(n, std::vector<std::uint64_t>(m));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), rows[i][j].get_mpz_t(), kModPrime);
      a[i][j] = r.get_ui();
    }
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(a[pivot], a[rank]);
    const std::uint64_t inv = pow_mod(a[rank][col], kModPrime - 2);
    for (std::size_t i = rank + 1; i < n; ++i) {
      if (a[i][col] == 0) continue;
      const std::uint64_t f = mul_mod(a[i][col], inv);
      for (std::size_t j = col; j < m; ++j) {
        a[i][j] = (a[i][j] + kModPrime - mul_mod(f, a[rank][j])) % kModPrime;
      }
    }
    ++rank;
  }
  return rank;
}

// Fraction-free (Bareiss) elimination; every division is exact.
std::size_t rank_bareiss(std::vector<Basis::Row> a) {
  const std::size_t n = a.size();
  const std::size_t m = n == 0 ? 0 : a.front().size();
  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m && rank < n; ++col) {
    std::size_t pivot = rank;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) continue;
    std::swap(a[pivot], a[rank]);
    for (std::size_t i = rank + 1; i < n; ++i) {
      for (std::size_t j = col + 1; j < m; ++j) {
        Integer t = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
        mpz_divexact(a[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

}  // namespace

Basis::Basis(std::vector<Row> rows) : rows_(std::move(rows)) {
  if (rows_.empty()) throw BasisError("basis has no rows");
  const std::size_t m = rows_.front().size();
  for (const Row& r : rows_) {
    if (r.size() != m) throw BasisError("ragged basis: rows have different lengths");
  }
  if (m < rows_.size()) {
    throw BasisError("basis rows are linearly dependent (" + std::to_string(rows_.size()) +
                     " rows in dimension " + std::to_string(m) + ")");
  }
  if (exact_rank(rows_) != rows_.size()) {
    throw BasisError("basis rows are linearly dependent");
  }
}

void Basis::row_combine(std::size_t target, std::size_t source, const Integer& coeff) {
  if (target >= dim() || source >= dim()) throw std::out_of_range("row_combine: index out of range");
  if (target == source) throw std::invalid_argument("row_combine: target equals source");
  if (coeff == 0) return;
  Row& t = rows_[target];
  const Row& s = rows_[source];
  for (std::size_t c = 0; c < t.size(); ++c) {
    mpz_submul(t[c].get_mpz_t(), coeff.get_mpz_t(), s[c].get_mpz_t());
  }
}

void Basis::move_row(std::size_t from, std::size_t to) {
  if (from >= dim()) throw std::out_of_range("move_row: index out of range");
  if (to >= from) throw std::invalid_argument("move_row: destination must precede source");
  std::rotate(rows_.begin() + static_cast<std::ptrdiff_t>(to),
              rows_.begin() + static_cast<std::ptrdiff_t>(from),
              rows_.begin() + static_cast<std::ptrdiff_t>(from) + 1);
}

Integer inner_product(const Basis::Row& a, const Basis::Row& b) {
  Integer acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    mpz_addmul(acc.get_mpz_t(), a[i].get_mpz_t(), b[i].get_mpz_t());
  }
  return acc;
}

std::size_t exact_rank(const std::vector<Basis::Row>& rows) {
  if (rows.empty()) return 0;
  const std::size_t modular = rank_mod_prime(rows);
  // Rank mod p never exceeds the rational rank.
  if (modular == rows.size()) return modular;
  return rank_bareiss(rows);
}

Integer gram_determinant(const Basis& basis) {
  const std::size_t d = basis.dim();
  std::vector<std::vector<Integer>> g(d, std::vector<Integer>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      g[i][j] = inner_product(basis.row(i), basis.row(j));
      g[j][i] = g[i][j];
    }
  }
  // Gram matrices of independent rows are positive definite: no pivoting needed.
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < d; ++k) {
    for (std::size_t i = k + 1; i < d; ++i) {
      for (std::size_t j = k + 1; j < d; ++j) {
        Integer t = g[k][k] * g[i][j] - g[i][k] * g[k][j];
        mpz_divexact(g[i][j].get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = g[k][k];
  }
  return d == 0 ? Integer(1) : g[d - 1][d - 1];
}

double log_det(const Basis& basis) { return 0.5 * log_abs(gram_determinant(basis)); }

Basis read_basis(std::string_view text) {
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  auto expect = [&](char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c) {
      throw BasisError(std::string("malformed basis: expected '") + c + "' at offset " +
                       std::to_string(pos));
    }
    ++pos;
  };

  std::vector<Basis::Row> rows;
  expect('[');
  for (;;) {
    skip_ws();
    if (pos >= text.size()) throw BasisError("malformed basis: unterminated matrix");
    if (text[pos] == ']') {
      ++pos;
      break;
    }
    expect('[');
    Basis::Row row;
    for (;;) {
      skip_ws();
      if (pos >= text.size()) throw BasisError("malformed basis: unterminated row");
      if (text[pos] == ']') {
        ++pos;
        break;
      }
      const std::size_t start = pos;
      if (text[pos] == '-' || text[pos] == '+') ++pos;
      const std::size_t digits = pos;
      while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
      const bool terminated = pos >= text.size() || std::isspace(static_cast<unsigned char>(text[pos])) ||
                              text[pos] == ']';
      if (pos == digits || !terminated) {
        throw BasisError("malformed basis: non-integer token at offset " + std::to_string(start));
      }
      std::string token(text.substr(start, pos - start));
      if (token.front() == '+') token.erase(0, 1);
      row.emplace_back(token, 10);
    }
    rows.push_back(std::move(row));
  }
  skip_ws();
  if (pos != text.size()) throw BasisError("malformed basis: trailing characters");
  return Basis(std::move(rows));
}

std::string write_basis(const Basis& basis) {
  std::ostringstream out;
  out << '[';
  for (const auto& row : basis.rows()) {
    out << '[';
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c != 0) out << ' ';
      out << row[c].get_str();
    }
    out << "]\n";
  }
  out << "]\n";
  return out.str();
}

}  // namespace latmaj
