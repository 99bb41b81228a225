#include "irclab/occupancy.hpp"

#include <algorithm>

#include "irclab/parallel.hpp"
#include "irclab/rng.hpp"

namespace irclab {

namespace {

// Enumerate all nonempty subsets of {0..kappa-1} of size <= k and compute
// P(occupied set = A) = sum_{B subset A} (-1)^{|A|-|B|} q(B)^k.
template <typename Emit>
void occupancy_subsets(const std::vector<Rat>& masses, int k, const Emit& emit) {
    const size_t kappa = masses.size();
    const size_t max_size = std::min<size_t>(static_cast<size_t>(k), kappa);
    std::vector<uint64_t> combo;
    Rat total = 0;
    auto eval = [&](const std::vector<uint64_t>& cells) {
        const size_t a = cells.size();
        Rat p = 0;
        // Iterate subsets B of A via bitmask (a <= k, small by the cap).
        for (uint64_t mask = 0; mask < (uint64_t{1} << a); ++mask) {
            Rat q = 0;
            int bits = 0;
            for (size_t t = 0; t < a; ++t) {
                if (mask & (uint64_t{1} << t)) {
                    q += masses[cells[t]];
                    ++bits;
                }
            }
            const Rat contrib = pow_rat(q, static_cast<unsigned>(k));
            p += ((a - static_cast<size_t>(bits)) % 2 == 0) ? contrib : -contrib;
        }
        if (p != 0) emit(cells, p);
        total += p;
    };
    // Lexicographic enumeration of combinations of each size.
    for (size_t a = 1; a <= max_size; ++a) {
        combo.resize(a);
        for (size_t t = 0; t < a; ++t) combo[t] = t;
        for (;;) {
            eval(combo);
            size_t t = a;
            while (t > 0 && combo[t - 1] == kappa - a + t - 1) --t;
            if (t == 0) break;
            ++combo[t - 1];
            for (size_t u = t; u < a; ++u) combo[u] = combo[u - 1] + 1;
        }
    }
    if (total != 1) throw ValidationError("occupancy law masses do not sum to 1");
}

void check_cap(const Int& kappa, int k, uint64_t cap) {
    Int states = 1;
    for (int t = 0; t < k; ++t) {
        states *= kappa;
        if (states > cap)
            throw CapExceeded("occupancy: kappa(m)^k exceeds the enumeration cap; use MC mode");
    }
}

}  // namespace

EmpiricalIRC occupancy_law_exact(int n, int k, int m, uint64_t cap) {
    if (k < 1 || m < 1) throw ValidationError("occupancy: k and m must be >= 1");
    const TreeProfile profile = TreeProfile::full_shift(n, Sided::one);
    check_cap(profile.kappa(m), k, cap);
    const uint64_t kappa = static_cast<uint64_t>(profile.kappa(m));
    const std::vector<Rat> masses(kappa, Rat(1, Int(kappa)));
    EmpiricalIRC out;
    out.base = n;
    out.sided = Sided::one;
    out.level = m;
    out.provenance = "exact occupancy law";
    occupancy_subsets(masses, k, [&](const std::vector<uint64_t>& cells, const Rat& p) {
        LevelSet ls{n, Sided::one, m, {}};
        for (uint64_t c : cells) ls.cells.insert(Word::from_rank(c, static_cast<size_t>(m), n));
        out.atoms.emplace(std::move(ls), p);
    });
    out.ambient = full_level_set(n, Sided::one, m);
    out.validate();
    return out;
}

std::map<std::vector<uint64_t>, Rat> occupancy_law_exact_indexed(const TreeProfile& profile,
                                                                 int k, int m, uint64_t cap) {
    if (k < 1 || m < 1) throw ValidationError("occupancy: k and m must be >= 1");
    check_cap(profile.kappa(m), k, cap);
    const auto masses = profile.level_masses(m);
    std::map<std::vector<uint64_t>, Rat> out;
    occupancy_subsets(masses, k, [&](const std::vector<uint64_t>& cells, const Rat& p) {
        out.emplace(cells, p);
    });
    return out;
}

EmpiricalIRC occupancy_law_mc(int n, int k, int m, uint64_t samples, uint64_t seed, int workers) {
    if (k < 1 || m < 1) throw ValidationError("occupancy: k and m must be >= 1");
    if (samples == 0) throw ValidationError("occupancy: need at least one sample");
    const uint64_t kappa = static_cast<uint64_t>(TreeProfile::full_shift(n).kappa(m));
    // Per-sample occupied sets as sorted cell-rank lists, stored by index.
    std::vector<std::vector<uint64_t>> drawn(samples);
    parallel_for(samples, workers, [&](uint64_t i) {
        Rng rng = substream(seed, i);
        std::vector<uint64_t> cells;
        cells.reserve(static_cast<size_t>(k));
        for (int t = 0; t < k; ++t) cells.push_back(rng.below(kappa));
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        drawn[i] = std::move(cells);
    });
    std::map<std::vector<uint64_t>, uint64_t> counts;
    for (const auto& cells : drawn) ++counts[cells];
    EmpiricalIRC out;
    out.base = n;
    out.sided = Sided::one;
    out.level = m;
    out.provenance = "mc occupancy, samples=" + std::to_string(samples) +
                     " seed=" + std::to_string(seed);
    for (const auto& [cells, cnt] : counts) {
        LevelSet ls{n, Sided::one, m, {}};
        for (uint64_t c : cells) ls.cells.insert(Word::from_rank(c, static_cast<size_t>(m), n));
        out.atoms.emplace(std::move(ls), Rat(Int(cnt), Int(samples)));
    }
    out.ambient = full_level_set(n, Sided::one, m);
    out.validate();
    return out;
}

}  // namespace irclab
