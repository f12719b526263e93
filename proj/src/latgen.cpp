#include "latmaj/latgen.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

namespace latmaj {

namespace {

constexpr int kResampleCap = 100;

std::string lower(std::string_view s) {
  std::string out;
  for (char c : s) out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

// Uniform double in (0, 1) from the top 53 bits.
double open_unit(std::mt19937_64& rng) {
  for (;;) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (u > 0) return u;
  }
}

Basis::Row unit_row(std::size_t m, std::size_t at) {
  Basis::Row row(m, Integer(0));
  row[at] = 1;
  return row;
}

template <class Draw>
Basis full_rank_square(std::size_t d, Draw&& draw) {
  for (int attempt = 0; attempt < kResampleCap; ++attempt) {
    std::vector<Basis::Row> rows(d, Basis::Row(d));
    for (auto& row : rows) {
      for (auto& x : row) x = draw();
    }
    if (exact_rank(rows) == d) return Basis(std::move(rows));
  }
  throw GeneratorError("no full-rank basis after 100 draws");
}

}  // namespace

Family parse_family(std::string_view name) {
  const std::string n = lower(name);
  if (n == "uniform") return Family::uniform;
  if (n == "gaussian") return Family::gaussian;
  if (n == "qary" || n == "q-ary") return Family::qary;
  if (n == "gm" || n == "goldstein-mayer" || n == "goldstein_mayer") return Family::goldstein_mayer;
  throw std::invalid_argument("unknown lattice family '" + std::string(name) + "'");
}

std::string family_name(Family family) {
  switch (family) {
    case Family::uniform:
      return "uniform";
    case Family::gaussian:
      return "gaussian";
    case Family::qary:
      return "qary";
    case Family::goldstein_mayer:
      return "gm";
  }
  return "unknown";
}

std::mt19937_64 make_engine(const GeneratorSpec& spec) {
  std::seed_seq seq{static_cast<std::uint32_t>(spec.seed & 0xffffffffu),
                    static_cast<std::uint32_t>(spec.seed >> 32), static_cast<std::uint32_t>(spec.d),
                    static_cast<std::uint32_t>(spec.family)};
  return std::mt19937_64(seq);
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: zero bound");
  // Largest multiple of bound representable, minus one.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x <= limit) return x % bound;
  }
}

Integer uniform_below(std::mt19937_64& rng, const Integer& bound) {
  if (sgn(bound) <= 0) throw std::invalid_argument("uniform_below: bound must be positive");
  const std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  const std::size_t words = (bits + 63) / 64;
  for (;;) {
    Integer x = 0;
    for (std::size_t w = 0; w < words; ++w) {
      mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), 64);
      const std::uint64_t word = rng();
      Integer part;
      mpz_import(part.get_mpz_t(), 1, 1, sizeof(word), 0, 0, &word);
      x += part;
    }
    mpz_fdiv_r_2exp(x.get_mpz_t(), x.get_mpz_t(), bits);
    if (x < bound) return x;
  }
}

Integer random_prime(std::mt19937_64& rng, unsigned bits) {
  if (bits < 2) throw std::invalid_argument("random_prime: need at least 2 bits");
  Integer low;
  mpz_ui_pow_ui(low.get_mpz_t(), 2, bits - 1);
  for (;;) {
    Integer x = low + uniform_below(rng, low);
    if (mpz_probab_prime_p(x.get_mpz_t(), 64) > 0) return x;
  }
}

Basis generate(const GeneratorSpec& spec) {
  const std::size_t d = spec.d;
  if (d < 2) throw std::invalid_argument("generate: d must be at least 2");
  std::mt19937_64 rng = make_engine(spec);

  switch (spec.family) {
    case Family::uniform:
      return full_rank_square(d, [&] { return Integer(static_cast<long>(uniform_below(rng, 21)) - 10); });

    case Family::gaussian: {
      bool have_spare = false;
      double spare = 0;
      auto normal = [&] {
        if (have_spare) {
          have_spare = false;
          return spare;
        }
        const double radius = std::sqrt(-2.0 * std::log(open_unit(rng)));
        const double angle = 2.0 * std::numbers::pi * open_unit(rng);
        spare = radius * std::sin(angle);
        have_spare = true;
        return radius * std::cos(angle);
      };
      return full_rank_square(d, [&] { return round_half_even(static_cast<Real>(5.0 * normal())); });
    }

    case Family::qary: {
      const Integer q = spec.q.value_or(Integer(1009));
      const std::size_t k = spec.k.value_or(d / 2);
      if (q < 2) throw std::invalid_argument("generate: q must be at least 2");
      if (k < 1 || k >= d) throw std::invalid_argument("generate: qary k must lie in [1, d-1]");
      std::vector<Basis::Row> rows;
      for (std::size_t i = 0; i < k; ++i) {
        Basis::Row row = unit_row(d, i);
        row[i] = q;
        rows.push_back(std::move(row));
      }
      for (std::size_t i = k; i < d; ++i) {
        Basis::Row row = unit_row(d, i);
        for (std::size_t c = 0; c < k; ++c) row[c] = uniform_below(rng, q);
        rows.push_back(std::move(row));
      }
      return Basis(std::move(rows));
    }

    case Family::goldstein_mayer: {
      const Integer q = spec.q ? *spec.q : random_prime(rng, static_cast<unsigned>(10 * d));
      if (q < 2) throw std::invalid_argument("generate: q must be at least 2");
      std::vector<Basis::Row> rows;
      Basis::Row first(d, Integer(0));
      first[0] = q;
      rows.push_back(std::move(first));
      for (std::size_t i = 1; i < d; ++i) {
        Basis::Row row = unit_row(d, i);
        row[0] = uniform_below(rng, q);
        rows.push_back(std::move(row));
      }
      return Basis(std::move(rows));
    }
  }
  throw std::invalid_argument("generate: unknown family");
}

}  // namespace latmaj
