#include "irclab/empirical.hpp"

namespace irclab {

void EmpiricalIRC::validate() const {
    Rat sum = 0;
    for (const auto& [ls, w] : atoms) {
        if (w <= 0) throw ValidationError("EmpiricalIRC: weights must be positive");
        if (ls.level != level || ls.base != base || ls.sided != sided)
            throw ValidationError("EmpiricalIRC: atom at wrong level or space");
        ls.validate();
        sum += w;
    }
    if (sum != 1) throw ValidationError("EmpiricalIRC: weights must sum to exactly 1");
    if (ambient) {
        if (ambient->level != level || ambient->base != base || ambient->sided != sided)
            throw ValidationError("EmpiricalIRC: ambient set at wrong level");
    }
}

Rat EmpiricalIRC::total_mass() const {
    Rat sum = 0;
    for (const auto& [ls, w] : atoms) sum += w;
    return sum;
}

}  // namespace irclab
