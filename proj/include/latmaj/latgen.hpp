#pragma once

#include "latmaj/intmat.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

namespace latmaj {

enum class Family { uniform, gaussian, qary, goldstein_mayer };

/// "uniform", "gaussian", "qary" (or "q-ary"), "gm" (or "goldstein-mayer").
Family parse_family(std::string_view name);
std::string family_name(Family family);  // uniform, gaussian, qary, gm

struct GeneratorSpec {
  Family family = Family::uniform;
  std::size_t d = 2;
  std::uint64_t seed = 0;
  // qary: default 1009. goldstein_mayer: drawn as a random 10d-bit prime when unset.
  std::optional<Integer> q;
  // qary rank of the q e_i block: default d / 2.
  std::optional<std::size_t> k;
};

/// Resampling gave up (100 rank-deficient draws in a row).
class GeneratorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic generator: std::mt19937_64 seeded through std::seed_seq with
/// (seed low word, seed high word, d, family). Both are fully specified by the
/// C++ standard, and all distributions below are hand-written on top of the
/// raw 64-bit stream, so bases reproduce across platforms.
///
/// uniform:  d x d entries uniform on {-10..10}.
/// gaussian: d x d entries round-half-even(z), z ~ N(0, 25) via Box-Muller.
/// qary:     rows q e_i for i < k, then (A_i, e_i) with A_i uniform on [0, q)^k.
/// goldstein_mayer: row (q, 0, ..., 0), then (x_i, e_i) with x_i uniform on
///           [0, q) and q a prime with exactly 10d bits (64 Miller-Rabin rounds).
Basis generate(const GeneratorSpec& spec);

/// The engine generate() uses for `spec`.
std::mt19937_64 make_engine(const GeneratorSpec& spec);

/// Uniform integer in [0, bound) by rejection; bound > 0.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
Integer uniform_below(std::mt19937_64& rng, const Integer& bound);

/// Uniform prime with exactly `bits` bits (bits >= 2).
Integer random_prime(std::mt19937_64& rng, unsigned bits);

}  // namespace latmaj
