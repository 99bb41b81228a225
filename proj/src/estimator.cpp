#include "irclab/estimator.hpp"

#include "irclab/parallel.hpp"

namespace irclab {

EmpiricalIRC accumulate(const std::function<LevelSet(int64_t)>& orbit, int64_t j0, int64_t j1,
                        std::optional<LevelSet> ambient, int workers, std::string provenance) {
    if (j1 <= j0) throw ValidationError("accumulate: empty window");
    const uint64_t total = static_cast<uint64_t>(j1 - j0);
    std::vector<LevelSet> points(total);
    parallel_for(total, workers, [&](uint64_t idx) {
        points[idx] = orbit(j0 + static_cast<int64_t>(idx));
    });
    if (provenance.empty())
        provenance = "window [" + std::to_string(j0) + "," + std::to_string(j1) + ")";
    return accumulate(points, std::move(ambient), std::move(provenance));
}

EmpiricalIRC accumulate(const std::vector<LevelSet>& orbit_points,
                        std::optional<LevelSet> ambient, std::string provenance) {
    if (orbit_points.empty()) throw ValidationError("accumulate: empty orbit");
    EmpiricalIRC out;
    out.base = orbit_points.front().base;
    out.sided = orbit_points.front().sided;
    out.level = orbit_points.front().level;
    out.ambient = std::move(ambient);
    out.provenance = std::move(provenance);
    const Rat w(1, Int(orbit_points.size()));
    for (const LevelSet& ls : orbit_points) {
        ls.validate();
        out.atoms[ls] += w;
    }
    out.validate();
    return out;
}

Rat mass_near_full(const EmpiricalIRC& e, int eps_exp) {
    if (!e.ambient) throw ValidationError("mass_near_full: measure has no ambient set");
    if (eps_exp < 0 || eps_exp > e.level + 1)
        throw ValidationError("mass_near_full: epsilon finer than level resolution");
    Rat mass = 0;
    for (const auto& [ls, w] : e.atoms) {
        if (hausdorff_at_level(ls, *e.ambient).lt_eps(eps_exp)) mass += w;
    }
    return mass;
}

Rat mass_near_finite(const EmpiricalIRC& e, uint64_t r, int eps_exp) {
    if (eps_exp < 0 || eps_exp > e.level + 1)
        throw ValidationError("mass_near_finite: epsilon finer than level resolution");
    Rat mass = 0;
    for (const auto& [ls, w] : e.atoms) {
        const FiniteDistance fd = dist_to_finite(ls, r);
        if (!fd.resolved || fd.distance.lt_eps(eps_exp)) mass += w;
    }
    return mass;
}

Rat tv_distance(const EmpiricalIRC& a, const EmpiricalIRC& b) {
    if (a.level != b.level || a.base != b.base || a.sided != b.sided)
        throw ValidationError("tv_distance: measures live at different levels");
    Rat sum = 0;
    auto ia = a.atoms.begin(), ib = b.atoms.begin();
    while (ia != a.atoms.end() || ib != b.atoms.end()) {
        if (ib == b.atoms.end() || (ia != a.atoms.end() && ia->first < ib->first)) {
            sum += ia->second;
            ++ia;
        } else if (ia == a.atoms.end() || ib->first < ia->first) {
            sum += ib->second;
            ++ib;
        } else {
            sum += abs(ia->second - ib->second);
            ++ia;
            ++ib;
        }
    }
    return sum / 2;
}

EmpiricalIRC project_irc(const EmpiricalIRC& e) {
    if (e.level < 2) throw ValidationError("project_irc: level-1 measure has no parent level");
    EmpiricalIRC out;
    out.base = e.base;
    out.sided = e.sided;
    out.level = e.level - 1;
    out.provenance = e.provenance + " | projected";
    if (e.ambient) out.ambient = project(*e.ambient);
    for (const auto& [ls, w] : e.atoms) out.atoms[project(ls)] += w;
    out.validate();
    return out;
}

}  // namespace irclab
