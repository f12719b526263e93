#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace latmaj {

enum class SelectorKind {
  LLL,
  DeepVar,
  Thermal,
  ThermalAdaptive,
  SSGG,
  GDLLL,
  GDLLL_RT,
  GDLLL_CA,
  SchurK,
  FAlphaBeta,
  Pot,
  ThermalSched,
};

/// Selector plus its constants. Unset optionals mean "derive from d or from
/// the initial profile" (shortlist_K = ceil(d/3), schur_K = ceil(d/2),
/// FAlphaBeta alpha = the adaptive alpha, Thermal alpha = 1).
struct SelectorSpec {
  SelectorKind kind = SelectorKind::SSGG;
  std::optional<double> alpha;
  double beta = 2.0;
  double gamma = 2.0;
  double alpha_min = 0.4;
  std::optional<std::size_t> shortlist_K;
  double tau = 0.01;
  std::optional<std::size_t> schur_K;
  std::size_t period_P = 40;
  double ca_overhead = 8.0;
  // GDLLL family: false scans every pair with no filters.
  bool shortlist = true;
};

/// Throws std::invalid_argument on alpha <= 0, beta < 0, tau < 0, zero counts
/// or a negative cost overhead.
void validate(const SelectorSpec& spec);

/// Parses "name" or "name:key=value,key=value". Names: lll, deepvar, thermal,
/// thermal-adaptive, ssgg, gdlll, gdlll-rt, gdlll-ca, schurk, falphabeta, pot,
/// thermal-sched. Keys: alpha, beta, gamma, alpha_min, K, tau, P, overhead,
/// shortlist (on/off). "auto" leaves a derived value unset.
SelectorSpec parse_selector(std::string_view text);

/// Canonical name of the kind, as accepted by parse_selector.
std::string selector_name(SelectorKind kind);

/// Round-trippable canonical form including every non-default constant.
std::string to_string(const SelectorSpec& spec);

bool is_gdlll_family(SelectorKind kind);

}  // namespace latmaj
