#pragma once

#include <cstdint>
#include <vector>

#include "irclab/level_set.hpp"

namespace irclab {

// Branching description of a tree structure: refining clopen partitions with
// per-cell child counts and a validated positive lower bound L_k on the
// descendant proportion inf_n |{D in C_n : D subset C}| / kappa(n).
class TreeProfile {
public:
    // Full shift on n symbols; every level-i cell has n (one-sided) or n^2
    // (two-sided) children and L_k = 1/kappa(k).
    static TreeProfile full_shift(int n, Sided sided = Sided::one);

    // Explicit finite profile: child_counts[i][c] = number of children of
    // cell c at level i+1; the first vector's size is kappa(1). Each L_k
    // must lower-bound desc(C, n)/kappa(n) for every level-k cell C and
    // every provided n >= k; validated at construction. A single bound is
    // replicated across levels.
    static TreeProfile custom(std::vector<std::vector<uint64_t>> child_counts,
                              std::vector<Rat> branching_lower_bounds);
    static TreeProfile custom(std::vector<std::vector<uint64_t>> child_counts,
                              const Rat& branching_lower_bound);

    bool is_full_shift() const { return full_; }
    int alphabet() const { return n_; }
    Sided sided() const { return sided_; }
    // Deepest level the profile can answer questions about (full shifts: any).
    int max_level() const;

    Int kappa(int level) const;
    // e(C, i) for every level-k cell C: the number of level-(k+i) descendants.
    std::vector<Int> descendant_counts(int k, int i) const;
    Rat branching_lower_bound(int k) const;

    // Uniform tree measure of one cell (equal split among children).
    Rat cell_mass(int level, uint64_t cell_index) const;
    // Masses of all level-m cells, in cell order.
    std::vector<Rat> level_masses(int m, uint64_t cap = 1u << 22) const;

    uint64_t parent(int level, uint64_t cell_index) const;  // custom profiles

private:
    TreeProfile() = default;
    bool full_ = true;
    int n_ = 2;
    Sided sided_ = Sided::one;
    // Custom profile tables: children_[i][c] children of cell c at level i+1,
    // parents_[i][c] parent of cell c at level i+2.
    std::vector<std::vector<uint64_t>> children_;
    std::vector<std::vector<uint64_t>> parents_;
    std::vector<Rat> bounds_;  // L_k per level, custom profiles
};

// |F_{k+i,r}(k)|: the number of r-element subsets of level-(k+i) cells that
// meet every level-k cell, by inclusion-exclusion over missed cells with
// exact big-integer binomials. Sets *vacuous when r > kappa(k+i).
Int count_covering_subsets(const TreeProfile& profile, int k, int i, const Int& r,
                           bool* vacuous = nullptr);

// |F_{k+i,r}(k)| / C(kappa(k+i), r) as an exact rational.
Rat covering_fraction_exact(const TreeProfile& profile, int k, int i, const Int& r);

// Certified rational bracket of 1 - kappa(k) * exp(-r * L_k): the true value
// lies in [lower, upper]; `lower` is the usable lower-bound certificate.
struct BoundBracket {
    Rat lower;
    Rat upper;
};
BoundBracket covering_fraction_bound(const TreeProfile& profile, int k, const Int& r);

// mu_C of a single cell (full shifts: Bernoulli(1/n,...)).
Rat tree_measure(const TreeProfile& profile, int level, uint64_t cell_index);

}  // namespace irclab
