#pragma once

#include <optional>
#include <set>

#include "irclab/word.hpp"

namespace irclab {

// One-sided cells are cylinders on the first `level` coordinates; two-sided
// cells are symmetric windows [-level, level], so labels have length 2*level+1.
enum class Sided { one, two };

// Distance value in the shift metric: 0 or 2^-exponent.
struct DyadicDistance {
    bool zero = true;
    int exponent = 0;

    static DyadicDistance dist_zero() { return {true, 0}; }
    static DyadicDistance from_exponent(int e) { return {false, e}; }

    // d >= 2^-e  /  d < 2^-e (exact comparisons against a dyadic threshold)
    bool ge_eps(int e) const { return !zero && exponent <= e; }
    bool lt_eps(int e) const { return !ge_eps(e); }

    friend bool operator==(const DyadicDistance&, const DyadicDistance&) = default;
    friend bool operator<(const DyadicDistance& a, const DyadicDistance& b) {
        if (a.zero) return !b.zero;
        if (b.zero) return false;
        return a.exponent > b.exponent;
    }
    friend bool operator<=(const DyadicDistance& a, const DyadicDistance& b) {
        return a == b || a < b;
    }

    double value() const;
    std::string str() const;  // exact "0" or "2^-e"
};

// The set of level-m partition cells a compact set meets: its level-m image.
struct LevelSet {
    int base = 2;
    Sided sided = Sided::one;
    int level = 1;
    std::set<Word> cells;

    size_t word_length() const {
        return sided == Sided::one ? static_cast<size_t>(level)
                                   : static_cast<size_t>(2 * level + 1);
    }
    void validate() const;

    friend bool operator==(const LevelSet&, const LevelSet&) = default;
    friend auto operator<=>(const LevelSet& a, const LevelSet& b) = default;
};

LevelSet make_level_set(int base, Sided sided, int level, const std::vector<std::string>& labels);

// All level-m cells (the image of the whole space). Throws CapExceeded when
// the cell count would exceed `cap`.
LevelSet full_level_set(int base, Sided sided, int level, uint64_t cap = 1u << 22);

// Minimal distance between the two cylinders, as points sets: 0 for the same
// cell, else 2^-s where s is the first disagreement position (1-based from
// the left for one-sided labels, |index| from the center for two-sided).
DyadicDistance cell_distance(const LevelSet& ctx, const Word& a, const Word& b);

// Exact Hausdorff distance between the cylinder unions of two level sets.
DyadicDistance hausdorff_at_level(const LevelSet& a, const LevelSet& b);

// Parents at level-1 lower: drop the last symbol (one-sided) or the two
// outermost symbols (two-sided). Level must be >= 2.
LevelSet project(const LevelSet& a);
LevelSet project_to(const LevelSet& a, int level);

// Refine a level set to a deeper level using cylinder semantics (every
// extension of a cell is included). Exact for clopen unions.
LevelSet refine(const LevelSet& a, int level, uint64_t cap = 1u << 22);

struct FiniteDistance {
    DyadicDistance distance;
    // False when the set had <= r cells even at its own level, so the value
    // is only the upper bound 2^-(level+1) the resolution can certify.
    bool resolved = true;
    // Largest level whose projection has <= r cells (-1 if none, two-sided).
    int threshold_level = 0;
};

// Distance from the cylinder union of `a` to the set of <= r-point subsets,
// exact at the tree's resolution (ultrametric scale argument).
FiniteDistance dist_to_finite(const LevelSet& a, uint64_t r);

}  // namespace irclab
