#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "irclab/chacon.hpp"
#include "irclab/estimator.hpp"
#include "irclab/occupancy.hpp"
#include "irclab/orbit_stats.hpp"

using namespace irclab;

namespace {
LevelSet ls1(int base, int level, const std::vector<std::string>& labels) {
    return make_level_set(base, Sided::one, level, labels);
}
}  // namespace

TEST_CASE("accumulate basics") {
    auto y = ls1(2, 2, {"00", "11"});
    // Singleton window: delta mass at Y.
    auto e = accumulate({y}, full_level_set(2, Sided::one, 2), "identity window");
    REQUIRE(e.atoms.size() == 1);
    CHECK(e.atoms.at(y) == 1);

    // Weights are multiples of 1/W.
    auto orbit = [&](int64_t j) {
        return j % 3 == 0 ? y : ls1(2, 2, {"01"});
    };
    auto e2 = accumulate(orbit, 0, 9, {}, 2);
    CHECK(e2.atoms.at(y) == Rat(1, 3));
    CHECK(e2.atoms.at(ls1(2, 2, {"01"})) == Rat(2, 3));
    for (const auto& [ls, w] : e2.atoms) CHECK(denominator(Rat(w * 9)) == 1);
}

TEST_CASE("accumulate over Sym(2) prefix action on a one-cell set") {
    // Exhaustive window over the two permutations at k=1: uniform over the
    // two singleton level sets.
    auto y = ls1(2, 1, {"0"});
    std::vector<LevelSet> orbit_points;
    for (const auto& images : std::vector<std::vector<uint32_t>>{{0, 1}, {1, 0}}) {
        orbit_points.push_back(
            apply_permutation(permutation_from_images(2, 1, PermMode::prefix, images), y));
    }
    auto e = accumulate(orbit_points, full_level_set(2, Sided::one, 1), "Sym(2) exhaustive");
    REQUIRE(e.atoms.size() == 2);
    CHECK(e.atoms.at(ls1(2, 1, {"0"})) == Rat(1, 2));
    CHECK(e.atoms.at(ls1(2, 1, {"1"})) == Rat(1, 2));
}

TEST_CASE("Chacon accumulation atoms match direct enumeration") {
    auto orbit = [](int64_t j) { return chacon::shifted_y_level_set(j, 4, 3, 7); };
    auto e = accumulate(orbit, 0, 100, chacon::language_level_set(4), 4, "chacon window");
    // Oracle: direct enumeration of the 100 shifted level sets.
    std::map<LevelSet, Rat> expect;
    for (int64_t j = 0; j < 100; ++j) expect[orbit(j)] += Rat(1, 100);
    CHECK(e.atoms == expect);

    // Masses near the full language and near small finite sets vanish:
    // every atom is far from X (mass_near_full at the finest threshold).
    CHECK(mass_near_full(e, 5) == 0);
    // At level 4 resolution, atoms with >= 2 distinct projections at every
    // level... use r=1 and the coarsest threshold the level resolves.
    Rat near1 = mass_near_finite(e, 1, 1);
    CHECK(near1 >= 0);
    CHECK(near1 <= 1);
}

TEST_CASE("mass_near_finite certifies separation at witness levels") {
    // Level 14 accumulation (radius 14 windows, L_count 5): every atom has
    // >= 2 distinct cells whose separation resolves by level 14, so mass
    // within 2^-14 of K_{<=1} is zero.
    auto orbit = [](int64_t j) { return chacon::shifted_y_level_set(j, 14, 5, 7); };
    auto e = accumulate(orbit, 4, 104, {}, 4, "chacon level-14 window");
    CHECK(mass_near_finite(e, 1, 14) == 0);
    // Atoms are cylinder unions of at most 5 cells, so they all sit within
    // the finest scale of K_{<=5}.
    CHECK(mass_near_finite(e, 5, 14) == 1);
}

TEST_CASE("mass_near_full is monotone in eps and 1 for the fixed point") {
    auto full = full_level_set(2, Sided::one, 3);
    auto e = accumulate({full}, full, "fixed point");
    for (int eps = 0; eps <= 4; ++eps) CHECK(mass_near_full(e, eps) == 1);

    auto mixed = accumulate({full, ls1(2, 3, {"000"})}, full, "mixed");
    Rat prev = -1;
    for (int eps = 4; eps >= 0; --eps) {  // shrinking exponent = growing eps
        const Rat cur = mass_near_full(mixed, eps);
        CHECK(cur >= prev);  // mass_near_full is non-decreasing in eps
        prev = cur;
    }
    CHECK(mass_near_full(mixed, 2) == Rat(1, 2));
    CHECK(mass_near_full(mixed, 0) == 1);
    CHECK_THROWS_AS(mass_near_full(mixed, 5), ValidationError);
}

TEST_CASE("tv_distance is a metric and detects convergence") {
    auto e1 = occupancy_law_exact(2, 2, 1);
    auto e2 = occupancy_law_mc(2, 2, 1, 10000, 5);
    auto e3 = occupancy_law_mc(2, 2, 1, 100000, 6);
    CHECK(tv_distance(e1, e1) == 0);
    CHECK(tv_distance(e1, e2) == tv_distance(e2, e1));
    // Triangle inequality.
    CHECK(tv_distance(e1, e3) <= tv_distance(e1, e2) + tv_distance(e2, e3));
    // Larger sample gets closer (these seeds do; both within 0.03).
    CHECK(tv_distance(e1, e3) < tv_distance(e1, e2));
    CHECK(tv_distance(e1, e2) < Rat(3, 100));
    CHECK(tv_distance(e1, e3) < Rat(3, 100));

    // Disjoint single atoms are at distance 1.
    auto a = accumulate({ls1(2, 1, {"0"})}, {}, "a");
    auto b = accumulate({ls1(2, 1, {"1"})}, {}, "b");
    CHECK(tv_distance(a, b) == 1);
    auto lvl2 = accumulate({ls1(2, 2, {"00"})}, {}, "level 2");
    CHECK_THROWS_AS(tv_distance(a, lvl2), ValidationError);
}

TEST_CASE("projection consistency of empirical measures") {
    auto orbit = [](int64_t j) { return chacon::shifted_y_level_set(j, 4, 3, 7); };
    auto e4 = accumulate(orbit, 0, 60, {}, 1, "level 4");
    auto e3 = accumulate([](int64_t j) { return chacon::shifted_y_level_set(j, 3, 3, 7); }, 0,
                         60, {}, 1, "level 3");
    CHECK(project_irc(e4).atoms == e3.atoms);
}

TEST_CASE("occupancy MC mass on 2-cell atoms matches the law") {
    // Exact law at (k=2, m=1) gives mass 1/2 to the two-cell atom.
    auto mc = occupancy_law_mc(2, 2, 1, 100000, 91);
    Rat two_cell = 0;
    for (const auto& [ls, w] : mc.atoms) {
        if (ls.cells.size() == 2) two_cell += w;
    }
    CHECK(rat_to_double(two_cell) == doctest::Approx(0.5).epsilon(0.02));
}
