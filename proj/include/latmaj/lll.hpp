#pragma once

#include "latmaj/gso.hpp"
#include "latmaj/reduction.hpp"

namespace latmaj {

/// Worst-case terminal adjacent log-gap: ln(1 / (delta - 1/4)) / 2.
/// Throws std::invalid_argument outside (1/4, 1].
double cdelta(double delta);

/// r_k < (delta - mu_{k,k-1}^2) r_{k-1}, for 1 <= k < d.
bool lovasz_violated(const GsoState& gso, std::size_t k, double delta);

/// Swaps rows k-1 and k of a lattice whose rows 0..k are valid and returns
/// the filled event (step left at 0). Does not check the Lovász condition.
TraceEvent lovasz_swap(Lattice& lattice, std::size_t k);

/// delta-LLL with the classical index sweep. Each accepted swap is passed to
/// `sink` as it happens.
ReductionReport lll_reduce(const Basis& basis, const ReductionParams& params,
                           const TraceSink& sink = {});

}  // namespace latmaj
