#pragma once

#include "latmaj/intmat.hpp"
#include "latmaj/latgen.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace latmaj::testing {

inline Basis small_basis(std::size_t d, std::uint64_t seed, Family family = Family::uniform) {
  GeneratorSpec spec;
  spec.family = family;
  spec.d = d;
  spec.seed = seed;
  return generate(spec);
}

inline Basis rows(std::initializer_list<std::initializer_list<long>> init) {
  std::vector<Basis::Row> out;
  for (const auto& r : init) {
    Basis::Row row;
    for (long v : r) row.emplace_back(v);
    out.push_back(std::move(row));
  }
  return Basis(std::move(out));
}

inline double rel_err(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

}  // namespace latmaj::testing
