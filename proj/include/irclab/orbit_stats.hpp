#pragma once

#include <functional>
#include <optional>
#include <string>

#include "irclab/empirical.hpp"
#include "irclab/perms.hpp"

namespace irclab {

// Orbit events at a dyadic threshold eps = 2^-eps_exp, evaluated on level-m
// approximants with their exact ultrametric Hausdorff distance:
//   far_from_full  (D): d(gY, X) >= eps
//   far_from_finite(E): d(gY, K_{<=r}(X)) >= eps
//   near_full      (Z): d(gY, X) < eps
enum class OrbitMode { far_from_full, far_from_finite, near_full };

std::string orbit_mode_name(OrbitMode mode);

struct OrbitStat {
    std::string window;
    OrbitMode mode = OrbitMode::far_from_full;
    int eps_exp = 1;
    std::optional<uint64_t> r;
    Rat fraction = 0;
    uint64_t hits = 0;
    uint64_t total = 0;
    bool exhaustive = true;  // exact over the window / whole group
    std::optional<std::pair<double, double>> wilson95;
    uint64_t samples = 0;
    uint64_t seed = 0;
};

// Single event evaluation; eps must be representable at the level
// (eps_exp <= level), otherwise a higher level is demanded.
bool orbit_event(const LevelSet& gy, const LevelSet& ambient, OrbitMode mode, int eps_exp,
                 std::optional<uint64_t> r);

// Exact statistic over a finite orbit window {orbit(j) : j0 <= j < j1}.
OrbitStat orbit_stat_window(const std::function<LevelSet(int64_t)>& orbit, int64_t j0,
                            int64_t j1, const LevelSet& ambient, OrbitMode mode, int eps_exp,
                            std::optional<uint64_t> r, int workers = 1);

// Prefix-permutation statistics over Sym(n^k) acting on one-sided level
// sets: exhaustive when (n^k)! fits the cap, otherwise seeded Monte Carlo
// with a Wilson 95% interval.
OrbitStat zk_statistic_exhaustive(int n, int k, const LevelSet& y, OrbitMode mode, int eps_exp,
                                  std::optional<uint64_t> r, uint64_t group_cap = 1'000'000);
OrbitStat zk_statistic_mc(int n, int k, const LevelSet& y, OrbitMode mode, int eps_exp,
                          std::optional<uint64_t> r, uint64_t samples, uint64_t seed,
                          int workers = 1);

std::pair<double, double> wilson_interval(uint64_t hits, uint64_t total);

// Probability that a uniformly random alpha-subset of {1..n^m} is contained
// in a union of r index intervals of length n^(m-k) (no wrap-around).
struct RBlockResult {
    Rat value = 0;           // exact probability or MC point estimate
    bool exact = true;
    uint64_t hits = 0;
    uint64_t total = 0;
    std::optional<std::pair<double, double>> wilson95;
    uint64_t samples = 0;
    uint64_t seed = 0;
};
RBlockResult rblock_exact(int n, int m, int k, uint64_t alpha, uint64_t r,
                          uint64_t cap_positions = 20);
RBlockResult rblock_mc(int n, int m, int k, uint64_t alpha, uint64_t r, uint64_t samples,
                       uint64_t seed, int workers = 1);

// Analytic envelopes: `counting` is the exact overcount bound
// C(alpha,r) N^r C(r*l, alpha-r) / C(N, alpha); `asymptotic` instantiates
// d * alpha^(2r) * gamma^(alpha-r) with d = 1/(r! (1-gamma-r/N)^r), valid
// when gamma = r/n^k < 1 and 1 - gamma - r/N > 0 (else vacuous).
struct RBlockBound {
    Rat gamma = 0;
    std::optional<Rat> counting;
    std::optional<Rat> asymptotic;
    bool vacuous = false;
};
RBlockBound rblock_bound(int n, int m, int k, uint64_t alpha, uint64_t r);

}  // namespace irclab
