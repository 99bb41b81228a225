#include "irclab/orbit_stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "irclab/parallel.hpp"
#include "irclab/rng.hpp"

namespace irclab {

std::string orbit_mode_name(OrbitMode mode) {
    switch (mode) {
        case OrbitMode::far_from_full: return "D";
        case OrbitMode::far_from_finite: return "E";
        case OrbitMode::near_full: return "Z";
    }
    return "?";
}

bool orbit_event(const LevelSet& gy, const LevelSet& ambient, OrbitMode mode, int eps_exp,
                 std::optional<uint64_t> r) {
    if (eps_exp < 0 || eps_exp > gy.level + 1)
        throw ValidationError("orbit_event: epsilon finer than level resolution; raise the level");
    switch (mode) {
        case OrbitMode::far_from_full:
            return hausdorff_at_level(gy, ambient).ge_eps(eps_exp);
        case OrbitMode::near_full:
            return hausdorff_at_level(gy, ambient).lt_eps(eps_exp);
        case OrbitMode::far_from_finite: {
            if (!r) throw ValidationError("orbit_event: E-mode needs r");
            const FiniteDistance fd = dist_to_finite(gy, *r);
            // Unresolved means the true distance is at most 2^-(level+1) < eps.
            return fd.resolved && fd.distance.ge_eps(eps_exp);
        }
    }
    return false;
}

OrbitStat orbit_stat_window(const std::function<LevelSet(int64_t)>& orbit, int64_t j0,
                            int64_t j1, const LevelSet& ambient, OrbitMode mode, int eps_exp,
                            std::optional<uint64_t> r, int workers) {
    if (j1 <= j0) throw ValidationError("orbit_stat_window: empty window");
    const uint64_t total = static_cast<uint64_t>(j1 - j0);
    std::vector<uint8_t> hit(total, 0);
    parallel_for(total, workers, [&](uint64_t idx) {
        const LevelSet gy = orbit(j0 + static_cast<int64_t>(idx));
        hit[idx] = orbit_event(gy, ambient, mode, eps_exp, r) ? 1 : 0;
    });
    OrbitStat st;
    st.window = "[" + std::to_string(j0) + "," + std::to_string(j1) + ")";
    st.mode = mode;
    st.eps_exp = eps_exp;
    st.r = r;
    st.total = total;
    for (uint8_t h : hit) st.hits += h;
    st.fraction = Rat(Int(st.hits), Int(total));
    st.exhaustive = true;
    return st;
}

namespace {

// Z/D events against the full one-sided shift only need prefix coverage:
// d(gY, X) < 2^-e iff the images of Y's cells realize every length-e prefix.
struct PrefixCoverage {
    int n;
    int k;                     // permuted prefix length
    int eps_exp;               // e <= k required for this fast path
    std::vector<uint32_t> y_prefix_ranks;  // distinct k-prefix ranks of Y cells
    uint64_t class_divisor;    // n^(k-e)
    uint64_t num_classes;      // n^e

    bool covers_all(const std::vector<uint32_t>& perm, std::vector<uint8_t>& scratch) const {
        std::fill(scratch.begin(), scratch.end(), 0);
        uint64_t seen = 0;
        for (uint32_t p : y_prefix_ranks) {
            const uint64_t cls = perm[p] / class_divisor;
            if (!scratch[cls]) {
                scratch[cls] = 1;
                if (++seen == num_classes) return true;
            }
        }
        return false;
    }
};

LevelSet prepare_y(int n, int k, const LevelSet& y) {
    if (y.base != n || y.sided != Sided::one)
        throw ValidationError("zk_statistic: Y must be a one-sided level set over the same alphabet");
    return y.level >= k ? y : refine(y, k);
}

}  // namespace

OrbitStat zk_statistic_exhaustive(int n, int k, const LevelSet& y, OrbitMode mode, int eps_exp,
                                  std::optional<uint64_t> r, uint64_t group_cap) {
    const LevelSet yk = prepare_y(n, k, y);
    const LevelSet ambient = full_level_set(n, Sided::one, yk.level);
    const uint64_t table = static_cast<uint64_t>(pow_int(n, static_cast<unsigned>(k)));
    Int order = 1;
    for (uint64_t t = 2; t <= table; ++t) {
        order *= t;
        if (order > group_cap) throw CapExceeded("zk_statistic: group order exceeds cap; use MC");
    }
    std::vector<uint32_t> perm(table);
    for (uint64_t i = 0; i < table; ++i) perm[i] = static_cast<uint32_t>(i);
    uint64_t hits = 0, total = 0;
    do {
        BlockPermutation g{n, k, PermMode::prefix, perm};
        const LevelSet gy = apply_permutation(g, yk);
        hits += orbit_event(gy, ambient, mode, eps_exp, r) ? 1 : 0;
        ++total;
    } while (std::next_permutation(perm.begin(), perm.end()));
    OrbitStat st;
    st.window = "Sym(" + std::to_string(table) + ") exhaustive";
    st.mode = mode;
    st.eps_exp = eps_exp;
    st.r = r;
    st.hits = hits;
    st.total = total;
    st.fraction = Rat(Int(hits), Int(total));
    st.exhaustive = true;
    return st;
}

OrbitStat zk_statistic_mc(int n, int k, const LevelSet& y, OrbitMode mode, int eps_exp,
                          std::optional<uint64_t> r, uint64_t samples, uint64_t seed,
                          int workers) {
    if (samples == 0) throw ValidationError("zk_statistic: need at least one sample");
    const LevelSet yk = prepare_y(n, k, y);
    const uint64_t table = static_cast<uint64_t>(pow_int(n, static_cast<unsigned>(k)));
    if (table > kWordTableCap) throw CapExceeded("zk_statistic: word table exceeds cap");
    if (eps_exp < 0 || eps_exp > yk.level + 1)
        throw ValidationError("zk_statistic: epsilon finer than level resolution");

    std::vector<uint8_t> hit(samples, 0);
    const bool fast = (mode != OrbitMode::far_from_finite) && eps_exp <= k;
    if (fast) {
        PrefixCoverage cov;
        cov.n = n;
        cov.k = k;
        cov.eps_exp = eps_exp;
        cov.class_divisor = static_cast<uint64_t>(pow_int(n, static_cast<unsigned>(k - eps_exp)));
        cov.num_classes = static_cast<uint64_t>(pow_int(n, static_cast<unsigned>(eps_exp)));
        {
            std::set<uint32_t> pr;
            for (const Word& w : yk.cells) pr.insert(static_cast<uint32_t>(w.prefix(k).rank()));
            cov.y_prefix_ranks.assign(pr.begin(), pr.end());
        }
        const bool want_near = (mode == OrbitMode::near_full);
        parallel_for(samples, workers, [&](uint64_t i) {
            Rng rng = substream(seed, i);
            std::vector<uint32_t> perm(table);
            for (uint64_t t = 0; t < table; ++t) perm[t] = static_cast<uint32_t>(t);
            rng.shuffle(perm);
            std::vector<uint8_t> scratch(cov.num_classes, 0);
            const bool near = cov.covers_all(perm, scratch);
            hit[i] = (near == want_near) ? 1 : 0;
        });
    } else {
        const LevelSet ambient = full_level_set(n, Sided::one, yk.level);
        parallel_for(samples, workers, [&](uint64_t i) {
            Rng rng = substream(seed, i);
            std::vector<uint32_t> perm(table);
            for (uint64_t t = 0; t < table; ++t) perm[t] = static_cast<uint32_t>(t);
            rng.shuffle(perm);
            BlockPermutation g{n, k, PermMode::prefix, std::move(perm)};
            const LevelSet gy = apply_permutation(g, yk);
            hit[i] = orbit_event(gy, ambient, mode, eps_exp, r) ? 1 : 0;
        });
    }
    OrbitStat st;
    st.window = "Sym(" + std::to_string(table) + ") mc";
    st.mode = mode;
    st.eps_exp = eps_exp;
    st.r = r;
    st.total = samples;
    for (uint8_t h : hit) st.hits += h;
    st.fraction = Rat(Int(st.hits), Int(samples));
    st.exhaustive = false;
    st.samples = samples;
    st.seed = seed;
    st.wilson95 = wilson_interval(st.hits, samples);
    return st;
}

std::pair<double, double> wilson_interval(uint64_t hits, uint64_t total) {
    if (total == 0) throw ValidationError("wilson_interval: empty sample");
    const double z = 1.959963984540054;  // 95%
    const double nd = static_cast<double>(total);
    const double p = static_cast<double>(hits) / nd;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nd;
    const double center = (p + z2 / (2.0 * nd)) / denom;
    const double half = (z / denom) * std::sqrt(p * (1.0 - p) / nd + z2 / (4.0 * nd * nd));
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

namespace {

// Minimal number of length-ell intervals covering the sorted set, greedy.
template <typename It>
uint64_t greedy_intervals(It begin, It end, uint64_t ell) {
    uint64_t need = 0, covered_to = 0;
    for (It it = begin; it != end; ++it) {
        const uint64_t a = *it;
        if (a >= covered_to) {
            ++need;
            covered_to = a + ell;
        }
    }
    return need;
}

}  // namespace

RBlockResult rblock_exact(int n, int m, int k, uint64_t alpha, uint64_t r,
                          uint64_t cap_positions) {
    if (k < 1 || k >= m) throw ValidationError("rblock: need 1 <= k < m");
    const Int big_n = pow_int(n, static_cast<unsigned>(m));
    if (big_n > cap_positions)
        throw CapExceeded("rblock_exact: n^m exceeds the enumeration cap; use MC or bound mode");
    const uint64_t big = static_cast<uint64_t>(big_n);
    const uint64_t ell = static_cast<uint64_t>(pow_int(n, static_cast<unsigned>(m - k)));
    if (alpha < 1 || alpha > big) throw ValidationError("rblock: alpha out of range");
    if (r < 1) throw ValidationError("rblock: r must be >= 1");

    std::vector<uint64_t> combo(alpha);
    for (uint64_t t = 0; t < alpha; ++t) combo[t] = t;
    Int hits = 0, total = 0;
    for (;;) {
        ++total;
        if (greedy_intervals(combo.begin(), combo.end(), ell) <= r) ++hits;
        uint64_t t = alpha;
        while (t > 0 && combo[t - 1] == big - alpha + t - 1) --t;
        if (t == 0) break;
        ++combo[t - 1];
        for (uint64_t u = t; u < alpha; ++u) combo[u] = combo[u - 1] + 1;
    }
    RBlockResult res;
    res.value = Rat(hits, total);
    res.exact = true;
    res.hits = static_cast<uint64_t>(hits);
    res.total = static_cast<uint64_t>(total);
    return res;
}

RBlockResult rblock_mc(int n, int m, int k, uint64_t alpha, uint64_t r, uint64_t samples,
                       uint64_t seed, int workers) {
    if (k < 1 || k >= m) throw ValidationError("rblock: need 1 <= k < m");
    if (samples == 0) throw ValidationError("rblock_mc: need at least one sample");
    const Int big_n = pow_int(n, static_cast<unsigned>(m));
    if (big_n > (Int(1) << 32)) throw CapExceeded("rblock_mc: n^m too large to sample positions");
    const uint64_t big = static_cast<uint64_t>(big_n);
    const uint64_t ell = static_cast<uint64_t>(pow_int(n, static_cast<unsigned>(m - k)));
    if (alpha < 1 || alpha > big) throw ValidationError("rblock: alpha out of range");

    std::vector<uint8_t> hit(samples, 0);
    parallel_for(samples, workers, [&](uint64_t i) {
        Rng rng = substream(seed, i);
        // Floyd's algorithm for a uniform alpha-subset of {0..big-1}.
        std::set<uint64_t> chosen;
        for (uint64_t j = big - alpha; j < big; ++j) {
            const uint64_t t = rng.below(j + 1);
            if (!chosen.insert(t).second) chosen.insert(j);
        }
        hit[i] = greedy_intervals(chosen.begin(), chosen.end(), ell) <= r ? 1 : 0;
    });
    RBlockResult res;
    res.exact = false;
    res.total = samples;
    for (uint8_t h : hit) res.hits += h;
    res.value = Rat(Int(res.hits), Int(samples));
    res.samples = samples;
    res.seed = seed;
    res.wilson95 = wilson_interval(res.hits, samples);
    return res;
}

RBlockBound rblock_bound(int n, int m, int k, uint64_t alpha, uint64_t r) {
    if (k < 1 || k >= m) throw ValidationError("rblock: need 1 <= k < m");
    const Int big = pow_int(n, static_cast<unsigned>(m));
    const Int ell = pow_int(n, static_cast<unsigned>(m - k));
    RBlockBound out;
    out.gamma = Rat(Int(r), pow_int(n, static_cast<unsigned>(k)));
    if (alpha <= r) {
        // Each point sits in its own block; probability 1 and any bound >= 1.
        out.counting = Rat(1);
        out.asymptotic = Rat(1);
        return out;
    }
    const Int a(alpha), rr(r);
    const Rat counting = Rat(binomial(a, rr) * pow_int(big, static_cast<unsigned>(r)) *
                                 binomial(Int(rr * ell), a - rr),
                             binomial(big, a));
    out.counting = counting;
    const Rat rem = 1 - out.gamma - Rat(Int(r), big);
    if (out.gamma >= 1 || rem <= 0) {
        out.vacuous = true;
        return out;
    }
    const Rat d = Rat(1) / (Rat(factorial(static_cast<unsigned>(r))) *
                            pow_rat(rem, static_cast<unsigned>(r)));
    out.asymptotic = d * pow_rat(Rat(a), static_cast<unsigned>(2 * r)) *
                     pow_rat(out.gamma, static_cast<unsigned>(alpha - r));
    return out;
}

}  // namespace irclab
