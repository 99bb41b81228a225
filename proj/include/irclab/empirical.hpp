#pragma once

#include <map>
#include <optional>
#include <string>

#include "irclab/level_set.hpp"

namespace irclab {

// Weighted multiset of LevelSets: an empirical (or exact) measure on the
// level-m slice of the hyperspace. Weights are exact rationals summing to 1.
struct EmpiricalIRC {
    int base = 2;
    Sided sided = Sided::one;
    int level = 1;
    std::map<LevelSet, Rat> atoms;
    // Level set of the ambient space X at this level, when a notion of
    // "close to X" is meaningful for this measure.
    std::optional<LevelSet> ambient;
    std::string provenance;

    void validate() const;
    Rat total_mass() const;
};

}  // namespace irclab
