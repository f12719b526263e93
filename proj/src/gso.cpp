#include "latmaj/gso.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace latmaj {

Profile GsoState::profile() const {
  return Profile(p.begin(), p.end());
}

Real GsoState::sum_p() const {
  Real s = 0;
  for (Real v : p) s += v;
  return s;
}

Real GsoState::sum_sq() const {
  Real s = 0;
  for (Real v : p) s += v * v;
  return s;
}

Real GsoState::potential() const {
  Real s = 0;
  for (std::size_t i = 0; i < d; ++i) s += static_cast<Real>(d - i) * p[i];
  return s;
}

Lattice::Lattice(Basis basis) : basis_(std::move(basis)) {
  const std::size_t d = dim();
  gram_.resize(d * d);
  gram_f_.resize(d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      gram_[i * d + j] = inner_product(basis_.row(i), basis_.row(j));
      gram_[j * d + i] = gram_[i * d + j];
      gram_f_[i * d + j] = gram_f_[j * d + i] = to_real(gram_[i * d + j]);
    }
  }
  gso_.d = d;
  gso_.mu.assign(d * d, 0);
  gso_.r.assign(d, 0);
  gso_.p.assign(d, 0);
  valid_cols_.assign(d, 0);
  scratch_.assign(d, 0);
  lambda_.resize(d * d);
  dd_.resize(d);
  refresh();
}

void Lattice::update_stale_from() {
  std::size_t i = 0;
  while (i < dim() && valid_cols_[i] == i + 1) ++i;
  gso_.stale_from = i;
}

void Lattice::mark_row_valid(std::size_t i) {
  valid_cols_[i] = i + 1;
  update_stale_from();
}

void Lattice::recompute_row(std::size_t i, std::size_t from_col) {
  const std::size_t d = dim();
  Real* mu_i = &gso_.mu[i * d];
  Real* a = scratch_.data();
  for (std::size_t t = 0; t < from_col; ++t) a[t] = mu_i[t] * gso_.r[t];
  for (std::size_t l = from_col; l < i; ++l) {
    Real s = gram_f_[i * d + l];
    const Real* mu_l = &gso_.mu[l * d];
    for (std::size_t t = 0; t < l; ++t) s -= mu_l[t] * a[t];
    a[l] = s;
    mu_i[l] = s / gso_.r[l];
  }
  Real s = gram_f_[i * d + i];
  for (std::size_t t = 0; t < i; ++t) s -= mu_i[t] * a[t];
  gso_.r[i] = s;
  gso_.p[i] = 0.5L * std::log(s);
  mark_row_valid(i);
}

bool Lattice::row_ill_conditioned(std::size_t i) const {
  const Real r = gso_.r[i];
  if (!std::isfinite(r) || !(r > 0)) return true;
  return gram_f_[i * dim() + i] > kCancellationLimit * r;
}

void Lattice::exact_extend(std::size_t upto) {
  for (std::size_t i = exact_valid_; i <= upto; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      Integer u = gram(i, j);
      for (std::size_t t = 0; t < j; ++t) {
        Integer num = dd_[t] * u - lambda(i, t) * lambda(j, t);
        if (t == 0) {
          u = std::move(num);
        } else {
          mpz_divexact(u.get_mpz_t(), num.get_mpz_t(), dd_[t - 1].get_mpz_t());
        }
      }
      if (j < i) {
        lambda(i, j) = std::move(u);
      } else {
        dd_[i] = std::move(u);
      }
    }
    exact_valid_ = i + 1;
  }
}

void Lattice::exact_row_to_float(std::size_t i) {
  const std::size_t d = dim();
  for (std::size_t j = 0; j < i; ++j) gso_.mu[i * d + j] = ratio_to_real(lambda(i, j), dd_[j]);
  gso_.r[i] = i == 0 ? to_real(dd_[0]) : ratio_to_real(dd_[i], dd_[i - 1]);
  gso_.p[i] = 0.5L * std::log(gso_.r[i]);
  mark_row_valid(i);
}

void Lattice::combine_exact_views(std::size_t target, std::size_t source, const Integer& coeff) {
  const std::size_t d = dim();
  basis_.row_combine(target, source, coeff);
  Integer& g_tt = gram_[target * d + target];
  g_tt += coeff * (coeff * gram_[source * d + source] - 2 * gram_[target * d + source]);
  for (std::size_t t = 0; t < d; ++t) {
    if (t == target) continue;
    Integer& g = gram_[target * d + t];
    mpz_submul(g.get_mpz_t(), coeff.get_mpz_t(), gram_[source * d + t].get_mpz_t());
    gram_[t * d + target] = g;
    gram_f_[target * d + t] = gram_f_[t * d + target] = to_real(g);
  }
  gram_f_[target * d + target] = to_real(g_tt);
}

void Lattice::permute_exact_views(std::size_t from, std::size_t to) {
  const std::size_t d = dim();
  basis_.move_row(from, to);
  auto rotate_rows = [&](auto& m) {
    std::rotate(m.begin() + static_cast<std::ptrdiff_t>(to * d),
                m.begin() + static_cast<std::ptrdiff_t>(from * d),
                m.begin() + static_cast<std::ptrdiff_t>((from + 1) * d));
  };
  auto rotate_cols = [&](auto& m) {
    for (std::size_t i = 0; i < d; ++i) {
      auto row = m.begin() + static_cast<std::ptrdiff_t>(i * d);
      std::rotate(row + static_cast<std::ptrdiff_t>(to), row + static_cast<std::ptrdiff_t>(from),
                  row + static_cast<std::ptrdiff_t>(from) + 1);
    }
  };
  rotate_rows(gram_);
  rotate_cols(gram_);
  rotate_rows(gram_f_);
  rotate_cols(gram_f_);
  exact_valid_ = std::min(exact_valid_, to);
}

void Lattice::row_combine(std::size_t target, std::size_t source, const Integer& coeff) {
  const std::size_t d = dim();
  if (target >= d || source >= d) throw std::out_of_range("row_combine: index out of range");
  if (target == source) throw std::invalid_argument("row_combine: target equals source");
  if (coeff == 0) return;
  combine_exact_views(target, source, coeff);

  if (source < target && valid_cols_[target] == target + 1 && valid_cols_[source] == source + 1) {
    // b_target* is unchanged; only row target's coefficients move.
    const Real c = to_real(coeff);
    Real* mu_t = &gso_.mu[target * d];
    const Real* mu_s = &gso_.mu[source * d];
    for (std::size_t t = 0; t < source; ++t) mu_t[t] -= c * mu_s[t];
    mu_t[source] -= c;
  } else if (source < target) {
    valid_cols_[target] = 0;
  } else {
    // b_target* changes, which moves every later row's coefficients too.
    valid_cols_[target] = 0;
    for (std::size_t i = target + 1; i < d; ++i) valid_cols_[i] = std::min(valid_cols_[i], target);
  }
  update_stale_from();

  if (source < target && exact_valid_ > target && exact_valid_ > source) {
    for (std::size_t t = 0; t < source; ++t) {
      mpz_submul(lambda(target, t).get_mpz_t(), coeff.get_mpz_t(), lambda(source, t).get_mpz_t());
    }
    mpz_submul(lambda(target, source).get_mpz_t(), coeff.get_mpz_t(), dd_[source].get_mpz_t());
  } else {
    exact_valid_ = std::min(exact_valid_, target);
  }
}

void Lattice::move_row(std::size_t from, std::size_t to) {
  const std::size_t d = dim();
  if (from >= d) throw std::out_of_range("move_row: index out of range");
  if (to >= from) throw std::invalid_argument("move_row: destination must precede source");
  permute_exact_views(from, to);
  std::rotate(gso_.mu.begin() + static_cast<std::ptrdiff_t>(to * d),
              gso_.mu.begin() + static_cast<std::ptrdiff_t>(from * d),
              gso_.mu.begin() + static_cast<std::ptrdiff_t>((from + 1) * d));
  std::rotate(valid_cols_.begin() + static_cast<std::ptrdiff_t>(to),
              valid_cols_.begin() + static_cast<std::ptrdiff_t>(from),
              valid_cols_.begin() + static_cast<std::ptrdiff_t>(from) + 1);
  // Columns below `to` depend only on the unchanged prefix b_0*..b_{to-1}*.
  for (std::size_t i = to; i < d; ++i) valid_cols_[i] = std::min(valid_cols_[i], to);
  update_stale_from();
}

void Lattice::swap_adjacent(std::size_t k) {
  const std::size_t d = dim();
  if (k == 0 || k >= d) throw std::out_of_range("swap_adjacent: index out of range");
  if (gso_.stale_from <= k) throw std::logic_error("swap_adjacent: GSO rows up to k must be valid");

  const Real mu = gso_.mu_at(k, k - 1);
  const Real r_prev = gso_.r[k - 1];
  const Real r_k = gso_.r[k];
  const Real big = r_k + mu * mu * r_prev;
  const Real mu_new = mu * r_prev / big;

  permute_exact_views(k, k - 1);
  for (std::size_t t = 0; t + 1 < k; ++t) std::swap(gso_.mu_at(k, t), gso_.mu_at(k - 1, t));
  gso_.mu_at(k, k - 1) = mu_new;
  gso_.r[k - 1] = big;
  gso_.r[k] = r_prev * r_k / big;
  gso_.p[k - 1] = 0.5L * std::log(gso_.r[k - 1]);
  gso_.p[k] = 0.5L * std::log(gso_.r[k]);
  for (std::size_t i = k + 1; i < d; ++i) {
    if (valid_cols_[i] <= k) {
      valid_cols_[i] = std::min(valid_cols_[i], k - 1);
      continue;
    }
    const Real t = gso_.mu_at(i, k);
    gso_.mu_at(i, k) = gso_.mu_at(i, k - 1) - mu * t;
    gso_.mu_at(i, k - 1) = t + mu_new * gso_.mu_at(i, k);
  }
  update_stale_from();
}

void Lattice::exact_size_reduce(std::size_t k) {
  exact_extend(k);
  for (std::size_t l = k; l-- > 0;) {
    const Integer c = round_half_even(lambda(k, l), dd_[l]);
    if (c == 0) continue;
    combine_exact_views(k, l, c);
    for (std::size_t t = 0; t < l; ++t) {
      mpz_submul(lambda(k, t).get_mpz_t(), c.get_mpz_t(), lambda(l, t).get_mpz_t());
    }
    mpz_submul(lambda(k, l).get_mpz_t(), c.get_mpz_t(), dd_[l].get_mpz_t());
  }
  exact_row_to_float(k);
  ++exact_fallbacks_;
}

void Lattice::size_reduce(std::size_t k) {
  const std::size_t d = dim();
  if (k >= d) throw std::out_of_range("size_reduce: index out of range");
  if (gso_.stale_from < k) throw std::logic_error("size_reduce: rows before k must be valid");

  constexpr int kMaxPasses = 256;
  constexpr Real kExactUpdateLimit = 1048576.0L;  // 2^20
  for (int pass = 0; pass < kMaxPasses; ++pass) {
    if (valid_cols_[k] != k + 1) recompute_row(k, valid_cols_[k]);
    if (row_ill_conditioned(k)) {
      exact_size_reduce(k);
      return;
    }
    Real largest = 0;
    Real* mu_k = &gso_.mu[k * d];
    for (std::size_t l = k; l-- > 0;) {
      if (std::fabs(mu_k[l]) <= 0.5L + kSizeReductionEta) continue;
      const Integer c = round_half_even(mu_k[l]);
      row_combine(k, l, c);
      largest = std::max(largest, std::fabs(to_real(c)));
    }
    if (largest == 0) return;
    // Large multipliers amplify rounding in the incremental update.
    if (largest > kExactUpdateLimit) {
      valid_cols_[k] = 0;
      update_stale_from();
    } else {
      return;
    }
  }
  throw NumericalError("size_reduce: no convergence on row " + std::to_string(k));
}

void Lattice::size_reduce_from(std::size_t from) {
  for (std::size_t i = from; i < dim(); ++i) size_reduce(i);
}

void Lattice::refresh() {
  std::fill(valid_cols_.begin(), valid_cols_.end(), 0);
  update_stale_from();
  for (std::size_t i = 0; i < dim(); ++i) {
    recompute_row(i, 0);
    if (row_ill_conditioned(i)) {
      exact_extend(i);
      exact_row_to_float(i);
      ++exact_fallbacks_;
    }
  }
}

GsoState compute_gso(const Basis& basis) { return Lattice(basis).gso(); }

}  // namespace latmaj
