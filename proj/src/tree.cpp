#include "irclab/tree.hpp"

#include <numeric>

namespace irclab {

TreeProfile TreeProfile::full_shift(int n, Sided sided) {
    if (n < 2) throw ValidationError("TreeProfile: alphabet size must be >= 2");
    TreeProfile p;
    p.full_ = true;
    p.n_ = n;
    p.sided_ = sided;
    return p;
}

TreeProfile TreeProfile::custom(std::vector<std::vector<uint64_t>> child_counts,
                                const Rat& branching_lower_bound) {
    const size_t depth = child_counts.size() + 1;
    return custom(std::move(child_counts), std::vector<Rat>(depth, branching_lower_bound));
}

TreeProfile TreeProfile::custom(std::vector<std::vector<uint64_t>> child_counts,
                                std::vector<Rat> branching_lower_bounds) {
    if (child_counts.empty() || child_counts.front().empty())
        throw ValidationError("TreeProfile: empty profile");
    for (const Rat& b : branching_lower_bounds) {
        if (b <= 0) throw ValidationError("TreeProfile: branching lower bounds must be positive");
    }
    if (branching_lower_bounds.size() != child_counts.size() + 1)
        throw ValidationError("TreeProfile: need one branching bound per level");
    TreeProfile p;
    p.full_ = false;
    p.bounds_ = std::move(branching_lower_bounds);
    p.children_ = std::move(child_counts);
    for (const auto& level : p.children_) {
        for (uint64_t c : level) {
            if (c == 0) throw ValidationError("TreeProfile: every cell needs at least one child");
        }
    }
    // Parent tables and per-level sizes; children of cell c are contiguous.
    p.parents_.resize(p.children_.size());
    for (size_t i = 0; i < p.children_.size(); ++i) {
        auto& par = p.parents_[i];
        for (uint64_t c = 0; c < p.children_[i].size(); ++c)
            for (uint64_t t = 0; t < p.children_[i][c]; ++t) par.push_back(c);
        if (i + 1 < p.children_.size() && p.children_[i + 1].size() != par.size())
            throw ValidationError("TreeProfile: level sizes inconsistent");
    }
    // Validate the branching bounds on all provided levels (condition 3).
    const int depth = p.max_level();
    for (int k = 1; k <= depth; ++k) {
        for (int n = k; n <= depth; ++n) {
            const auto counts = p.descendant_counts(k, n - k);
            const Int kap = p.kappa(n);
            for (const Int& e : counts) {
                if (Rat(e, kap) < p.bounds_[static_cast<size_t>(k) - 1])
                    throw ValidationError("TreeProfile: branching lower bound L_" +
                                          std::to_string(k) + " violated at level " +
                                          std::to_string(n));
            }
        }
    }
    return p;
}

int TreeProfile::max_level() const {
    if (full_) return 1 << 20;
    // children_ describes levels 1..D, so cells exist down to level D+1.
    return static_cast<int>(children_.size()) + 1;
}

Int TreeProfile::kappa(int level) const {
    if (level < 1) throw ValidationError("kappa: level must be >= 1");
    if (full_) {
        const unsigned len = sided_ == Sided::one ? static_cast<unsigned>(level)
                                                  : static_cast<unsigned>(2 * level + 1);
        return pow_int(n_, len);
    }
    if (level > max_level()) throw ValidationError("kappa: level beyond profile depth");
    if (level == 1) return Int(children_.front().size());
    return Int(parents_[static_cast<size_t>(level) - 2].size());
}

std::vector<Int> TreeProfile::descendant_counts(int k, int i) const {
    if (k < 1 || i < 0) throw ValidationError("descendant_counts: bad levels");
    if (full_) {
        const unsigned step = sided_ == Sided::one ? static_cast<unsigned>(i)
                                                   : static_cast<unsigned>(2 * i);
        // One representative per cell is enough for callers that only need the
        // multiset, but return the full vector for uniformity.
        const Int e = pow_int(n_, step);
        const Int kap = kappa(k);
        if (kap > (1 << 22)) throw CapExceeded("descendant_counts: kappa(k) exceeds cap");
        return std::vector<Int>(static_cast<size_t>(kap), e);
    }
    if (k + i > max_level()) throw ValidationError("descendant_counts: level beyond profile depth");
    std::vector<Int> counts(static_cast<size_t>(kappa(k)), 1);
    if (i == 0) return counts;
    std::fill(counts.begin(), counts.end(), 0);
    const uint64_t kap_deep = static_cast<uint64_t>(kappa(k + i));
    for (uint64_t cell = 0; cell < kap_deep; ++cell) {
        uint64_t c = cell;
        for (int lvl = k + i; lvl > k; --lvl) c = parent(lvl, c);
        ++counts[c];
    }
    return counts;
}

uint64_t TreeProfile::parent(int level, uint64_t cell_index) const {
    if (full_) throw ValidationError("parent: not used for full shifts");
    if (level < 2 || level > max_level()) throw ValidationError("parent: bad level");
    return parents_[static_cast<size_t>(level) - 2][cell_index];
}

Rat TreeProfile::branching_lower_bound(int k) const {
    if (full_) return Rat(1, kappa(k));
    if (k < 1 || k > max_level()) throw ValidationError("branching_lower_bound: bad level");
    return bounds_[static_cast<size_t>(k) - 1];
}

Rat TreeProfile::cell_mass(int level, uint64_t cell_index) const {
    if (Int(cell_index) >= kappa(level)) throw ValidationError("cell_mass: cell out of range");
    if (full_) return Rat(1, kappa(level));
    Rat mass(1, Int(children_.front().size()));
    uint64_t c = cell_index;
    for (int lvl = level; lvl >= 2; --lvl) {
        const uint64_t par = parent(lvl, c);
        mass /= Int(children_[static_cast<size_t>(lvl) - 2][par]);
        c = par;
    }
    return mass;
}

std::vector<Rat> TreeProfile::level_masses(int m, uint64_t cap) const {
    const Int kap = kappa(m);
    if (kap > cap) throw CapExceeded("level_masses: kappa exceeds cap");
    std::vector<Rat> masses(static_cast<size_t>(kap));
    for (size_t c = 0; c < masses.size(); ++c) masses[c] = cell_mass(m, c);
    return masses;
}

Int count_covering_subsets(const TreeProfile& profile, int k, int i, const Int& r,
                           bool* vacuous) {
    if (k < 1 || i < 0) throw ValidationError("count_covering_subsets: bad levels");
    if (r < 0) throw ValidationError("count_covering_subsets: r must be >= 0");
    const Int kap_deep = profile.kappa(k + i);
    if (vacuous) *vacuous = false;
    if (r > kap_deep) {
        if (vacuous) *vacuous = true;
        return 0;
    }
    if (profile.is_full_shift()) {
        // All cells have the same extension count; binomial inclusion-exclusion.
        const unsigned step = profile.sided() == Sided::one ? static_cast<unsigned>(i)
                                                            : static_cast<unsigned>(2 * i);
        const Int e = pow_int(profile.alphabet(), step);
        const Int kap = profile.kappa(k);
        if (kap > 100000) throw CapExceeded("count_covering_subsets: kappa(k) exceeds cap");
        Int total = 0;
        for (Int s = 0; s <= kap; ++s) {
            const Int term = binomial(kap, s) * binomial(kap_deep - s * e, r);
            total += (s % 2 == 0) ? term : -term;
        }
        return total;
    }
    // Signed generating polynomial over missed level-k cells, grouped by the
    // total number of excluded deep cells.
    if (kap_deep > 1000000) throw CapExceeded("count_covering_subsets: kappa(k+i) exceeds cap");
    const auto counts = profile.descendant_counts(k, i);
    const uint64_t deep = static_cast<uint64_t>(kap_deep);
    std::vector<Int> coeff(deep + 1, 0);
    coeff[0] = 1;
    for (const Int& e : counts) {
        const uint64_t ev = static_cast<uint64_t>(e);
        for (uint64_t t = deep; t + 1 >= ev + 1; --t) {
            if (coeff[t - ev] != 0) coeff[t] -= coeff[t - ev];
        }
    }
    Int total = 0;
    for (uint64_t t = 0; t <= deep; ++t) {
        if (coeff[t] != 0) total += coeff[t] * binomial(kap_deep - t, r);
    }
    return total;
}

Rat covering_fraction_exact(const TreeProfile& profile, int k, int i, const Int& r) {
    bool vac = false;
    const Int num = count_covering_subsets(profile, k, i, r, &vac);
    if (vac) throw ValidationError("covering_fraction_exact: r exceeds kappa(k+i)");
    const Int den = binomial(profile.kappa(k + i), r);
    if (den == 0) throw ValidationError("covering_fraction_exact: empty subset family");
    return Rat(num, den);
}

BoundBracket covering_fraction_bound(const TreeProfile& profile, int k, const Int& r) {
    if (r < 0) throw ValidationError("covering_fraction_bound: r must be >= 0");
    const Rat x = Rat(r) * profile.branching_lower_bound(k);
    const Int kap = profile.kappa(k);
    // Rational Taylor bracket for e^x (all terms positive): T_K <= e^x and
    // e^x <= T_K + 2*term_{K+1} once K+2 >= 2x, so e^-x lies in
    // [1/(T_K + 2 t), 1/T_K].
    Rat term = 1, taylor = 1;
    unsigned j = 1;
    const Rat tiny = Rat(1, pow_int(10, 45));
    for (;;) {
        term *= x / j;
        taylor += term;
        ++j;
        if (Rat(j + 1) > 2 * x && term < tiny * taylor) break;
        if (j > 10000) throw ValidationError("covering_fraction_bound: series did not converge");
    }
    Rat next_term = term * x / j;
    const Rat exp_upper = taylor + 2 * next_term;  // >= e^x
    // 1 - kappa e^-x in [1 - kappa/taylor, 1 - kappa/exp_upper]
    return BoundBracket{1 - Rat(kap) / taylor, 1 - Rat(kap) / exp_upper};
}

Rat tree_measure(const TreeProfile& profile, int level, uint64_t cell_index) {
    return profile.cell_mass(level, cell_index);
}

}  // namespace irclab
