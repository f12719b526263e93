#include "latmaj/gso.hpp"

#include <stdexcept>

namespace latmaj {

ExactGso exact_gso(const Basis& basis) {
  const std::size_t d = basis.dim();
  if (d > kExactGsoMaxDim) throw std::invalid_argument("exact_gso: dimension above 12");
  std::vector<std::vector<Rational>> g(d, std::vector<Rational>(d));
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      g[i][j] = Rational(inner_product(basis.row(i), basis.row(j)));
      g[j][i] = g[i][j];
    }
  }
  ExactGso out;
  out.r.resize(d);
  out.mu.assign(d, {});
  for (std::size_t i = 0; i < d; ++i) {
    out.mu[i].resize(i);
    for (std::size_t j = 0; j < i; ++j) {
      Rational s = g[i][j];
      for (std::size_t t = 0; t < j; ++t) s -= out.mu[j][t] * out.mu[i][t] * out.r[t];
      out.mu[i][j] = s / out.r[j];
    }
    Rational s = g[i][i];
    for (std::size_t t = 0; t < i; ++t) s -= out.mu[i][t] * out.mu[i][t] * out.r[t];
    out.r[i] = s;
  }
  return out;
}

}  // namespace latmaj
