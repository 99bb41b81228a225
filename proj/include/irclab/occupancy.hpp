#pragma once

#include "irclab/empirical.hpp"
#include "irclab/tree.hpp"

namespace irclab {

inline constexpr uint64_t kOccupancyCap = 10'000'000;

// Exact law of the level-m image of k i.i.d. mu_C points for the one-sided
// full shift on n symbols: P(A) = sum_{B subset A} (-1)^{|A \ B|} q(B)^k.
// Enumeration size kappa(m)^k is capped; beyond the cap use the MC sampler.
EmpiricalIRC occupancy_law_exact(int n, int k, int m, uint64_t cap = kOccupancyCap);

// Same law for a custom profile; atoms are keyed by index sets rendered as
// sorted decimal labels, since custom profiles carry no word labels.
std::map<std::vector<uint64_t>, Rat> occupancy_law_exact_indexed(const TreeProfile& profile,
                                                                 int k, int m,
                                                                 uint64_t cap = kOccupancyCap);

// Seeded Monte Carlo estimate of the same law (per-sample substreams, so the
// result is identical for a given seed regardless of worker count).
EmpiricalIRC occupancy_law_mc(int n, int k, int m, uint64_t samples, uint64_t seed,
                              int workers = 1);

}  // namespace irclab
