#pragma once

#include <functional>

#include "irclab/empirical.hpp"

namespace irclab {

// Uniform average of point masses delta_{orbit(j)} over the window [j0, j1).
EmpiricalIRC accumulate(const std::function<LevelSet(int64_t)>& orbit, int64_t j0, int64_t j1,
                        std::optional<LevelSet> ambient, int workers = 1,
                        std::string provenance = {});

EmpiricalIRC accumulate(const std::vector<LevelSet>& orbit_points,
                        std::optional<LevelSet> ambient, std::string provenance = {});

// Total weight of atoms with d(atom, X) < 2^-eps_exp (needs an ambient set).
Rat mass_near_full(const EmpiricalIRC& e, int eps_exp);

// Total weight of atoms with d(atom, K_{<= r}) < 2^-eps_exp.
Rat mass_near_finite(const EmpiricalIRC& e, uint64_t r, int eps_exp);

// Half the L1 distance between atom weights over the union of atoms.
Rat tv_distance(const EmpiricalIRC& a, const EmpiricalIRC& b);

// Project every atom one level down and re-aggregate; multi-level
// consistency diagnostic.
EmpiricalIRC project_irc(const EmpiricalIRC& e);

}  // namespace irclab
