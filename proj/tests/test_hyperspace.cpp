#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "irclab/chacon.hpp"
#include "irclab/occupancy.hpp"
#include "irclab/rng.hpp"
#include "irclab/tree.hpp"

using namespace irclab;

namespace {

LevelSet ls1(int base, int level, const std::vector<std::string>& labels) {
    return make_level_set(base, Sided::one, level, labels);
}

// Random one-sided level set over n=2 from a seeded stream.
LevelSet random_set(Rng& rng, int level) {
    const uint64_t total = uint64_t{1} << level;
    LevelSet out{2, Sided::one, level, {}};
    while (out.cells.empty()) {
        for (uint64_t r = 0; r < total; ++r) {
            if (rng.next() & 1u) out.cells.insert(Word::from_rank(r, static_cast<size_t>(level), 2));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("projection of level sets") {
    CHECK(project(ls1(2, 2, {"00", "01"})) == ls1(2, 1, {"0"}));
    CHECK(project(ls1(2, 2, {"00", "10"})) == ls1(2, 1, {"0", "1"}));
    CHECK_THROWS_AS(project(ls1(2, 1, {"0"})), ValidationError);

    // Two-sided: outermost symbols are stripped.
    auto two = make_level_set(2, Sided::two, 2, {"00100", "11011"});
    CHECK(project(two) == make_level_set(2, Sided::two, 1, {"010", "101"}));
}

TEST_CASE("projection consistency on random cylinder unions") {
    // For sets defined as unions of level-M cylinders, the level-m image is
    // the set of length-m prefixes; project must map level m to level m-1.
    Rng rng(7);
    for (int m = 2; m <= 6; ++m) {
        for (int rep = 0; rep < 50; ++rep) {
            const LevelSet deep = random_set(rng, m + 2);
            auto image = [&](int level) {
                LevelSet out{2, Sided::one, level, {}};
                for (const Word& w : deep.cells) out.cells.insert(w.prefix(static_cast<size_t>(level)));
                return out;
            };
            CHECK(project(image(m)) == image(m - 1));
            // Finite-level round trip: refining a level set and projecting
            // back is the identity on cylinder unions.
            CHECK(project_to(refine(image(m), m + 3), m) == image(m));
        }
    }
}

TEST_CASE("hausdorff distance examples") {
    auto a = ls1(2, 2, {"00"});
    CHECK(hausdorff_at_level(a, a) == DyadicDistance::dist_zero());
    CHECK(hausdorff_at_level(a, ls1(2, 2, {"01"})) == DyadicDistance::from_exponent(2));
    CHECK(hausdorff_at_level(a, ls1(2, 2, {"00", "11"})) == DyadicDistance::from_exponent(1));
    CHECK_THROWS_AS(hausdorff_at_level(a, ls1(2, 3, {"000"})), ValidationError);

    // Two-sided center disagreement has distance 2^0 = 1.
    auto c0 = make_level_set(2, Sided::two, 1, {"000"});
    auto c1 = make_level_set(2, Sided::two, 1, {"010"});
    CHECK(hausdorff_at_level(c0, c1) == DyadicDistance::from_exponent(0));
}

TEST_CASE("hausdorff metric axioms with ultrametric strengthening") {
    Rng rng(99);
    for (int rep = 0; rep < 200; ++rep) {
        const int m = 3;
        LevelSet a = random_set(rng, m), b = random_set(rng, m), c = random_set(rng, m);
        const auto dab = hausdorff_at_level(a, b);
        const auto dba = hausdorff_at_level(b, a);
        const auto dac = hausdorff_at_level(a, c);
        const auto dbc = hausdorff_at_level(b, c);
        CHECK(dab == dba);
        CHECK((dab == DyadicDistance::dist_zero()) == (a == b));
        // max-triangle: d(a,c) <= max(d(a,b), d(b,c))
        const auto rhs = dab < dbc ? dbc : dab;
        CHECK(dac <= rhs);
    }
}

TEST_CASE("distance to finite sets") {
    // |A| <= r: only the finest-scale upper bound is available.
    auto small = ls1(2, 3, {"000", "111"});
    auto fd = dist_to_finite(small, 2);
    CHECK(!fd.resolved);
    CHECK(fd.distance == DyadicDistance::from_exponent(4));

    // All 8 cells at level 3 vs r=2: projections have 8, 4, 2 cells, so the
    // threshold level is 1 and the distance is 2^-2.
    auto all3 = full_level_set(2, Sided::one, 3);
    auto fd2 = dist_to_finite(all3, 2);
    CHECK(fd2.resolved);
    CHECK(fd2.threshold_level == 1);
    CHECK(fd2.distance == DyadicDistance::from_exponent(2));

    CHECK_THROWS_AS(dist_to_finite(all3, 0), ValidationError);

    // Chacon level sets: r+1 distinct center blocks at level |b_{r+1}|+1
    // certify distance >= 2^-(|b_{r+1}|+1); brute-force window construction
    // is the oracle.
    for (uint64_t r : {1, 2, 3}) {
        const int level = static_cast<int>(chacon::block_length(static_cast<int>(r) + 1)) + 1;
        const int64_t j = std::max<int64_t>(4, level - 12);
        auto y = chacon::shifted_y_level_set(j, level, static_cast<int>(r) + 2, 7);
        REQUIRE(y.cells.size() >= r + 1);
        auto fdr = dist_to_finite(y, r);
        CHECK(fdr.resolved);
        CHECK(fdr.distance.ge_eps(level));  // >= 2^-level >= 2^-(R+1)
    }
}

TEST_CASE("two-sided dist_to_finite can reach distance 1") {
    auto sep = make_level_set(2, Sided::two, 1, {"000", "010"});
    auto fd = dist_to_finite(sep, 1);
    CHECK(fd.resolved);
    CHECK(fd.distance == DyadicDistance::from_exponent(0));
}

TEST_CASE("covering subset counts: inclusion-exclusion vs brute force") {
    // Brute force: enumerate r-subsets of level-(k+i) words and test that
    // every level-k prefix class is hit.
    auto brute = [](int n, int k, int i, uint64_t r) {
        const uint64_t deep = static_cast<uint64_t>(pow_int(n, static_cast<unsigned>(k + i)));
        const uint64_t coarse = static_cast<uint64_t>(pow_int(n, static_cast<unsigned>(k)));
        const uint64_t div = deep / coarse;
        if (r > deep || r == 0) return Int(0);
        std::vector<uint64_t> combo(r);
        for (uint64_t t = 0; t < r; ++t) combo[t] = t;
        Int count = 0;
        for (;;) {
            std::set<uint64_t> classes;
            for (uint64_t v : combo) classes.insert(v / div);
            if (classes.size() == coarse) ++count;
            uint64_t t = r;
            while (t > 0 && combo[t - 1] == deep - r + t - 1) --t;
            if (t == 0) break;
            ++combo[t - 1];
            for (uint64_t u = t; u < r; ++u) combo[u] = combo[u - 1] + 1;
        }
        return count;
    };
    const auto cases = std::vector<std::tuple<int, int, int>>{
        {2, 1, 1}, {2, 1, 2}, {2, 1, 3}, {2, 2, 1}, {2, 2, 2}, {2, 3, 1}, {3, 1, 1}, {4, 1, 1}};
    for (const auto& [n, k, i] : cases) {
        const auto profile = TreeProfile::full_shift(n);
        const uint64_t deep = static_cast<uint64_t>(profile.kappa(k + i));
        REQUIRE(deep <= 16);
        for (uint64_t r = 1; r <= deep; ++r) {
            CHECK(count_covering_subsets(profile, k, i, Int(r)) == brute(n, k, i, r));
        }
        bool vac = false;
        CHECK(count_covering_subsets(profile, k, i, Int(deep + 1), &vac) == 0);
        CHECK(vac);
    }
    // Spec example: n=2, k=1, i=1, r=2 -> 4 of C(4,2)=6.
    CHECK(count_covering_subsets(TreeProfile::full_shift(2), 1, 1, 2) == 4);
    // r = kappa(k+i): the full set always covers.
    CHECK(count_covering_subsets(TreeProfile::full_shift(2), 1, 2, 8) == 1);
}

TEST_CASE("covering counts on a custom profile vs brute force") {
    // Level 1: 2 cells; cell 0 has 3 children, cell 1 has 2; all level-2
    // cells have 2 children each. Bound 1/5 holds on all provided levels.
    TreeProfile profile = TreeProfile::custom({{3, 2}, {2, 2, 2, 2, 2}}, std::vector<Rat>{Rat(2, 5), Rat(1, 5), Rat(1, 10)});
    CHECK(profile.kappa(1) == 2);
    CHECK(profile.kappa(2) == 5);
    CHECK(profile.kappa(3) == 10);
    CHECK(profile.descendant_counts(1, 2) == std::vector<Int>{6, 4});
    // Brute force over r-subsets of the 10 level-3 cells (cells 0..5 under
    // cell 0, cells 6..9 under cell 1).
    for (uint64_t r = 1; r <= 10; ++r) {
        Int expect = 0;
        for (uint32_t mask = 0; mask < (1u << 10); ++mask) {
            if (static_cast<uint64_t>(__builtin_popcount(mask)) != r) continue;
            const bool hits0 = (mask & 0x3fu) != 0, hits1 = (mask & 0x3c0u) != 0;
            if (hits0 && hits1) ++expect;
        }
        CHECK(count_covering_subsets(profile, 1, 2, Int(r)) == expect);
    }
    CHECK_THROWS_AS(TreeProfile::custom({{3, 2}, {2, 2, 2, 2, 2}}, Rat(1, 2)),
                    ValidationError);  // bound too strong
}

TEST_CASE("covering fraction bound bracket") {
    const auto profile = TreeProfile::full_shift(2);
    // k=1: L_1 = 1/2, r=20: 1 - 2 e^-10 = 0.999909...
    const auto bracket = covering_fraction_bound(profile, 1, 20);
    CHECK(bracket.lower <= bracket.upper);
    const double v = 1.0 - 2.0 * std::exp(-10.0);
    CHECK(rat_to_double(bracket.lower) == doctest::Approx(v).epsilon(1e-9));
    CHECK(rat_to_double(bracket.upper) == doctest::Approx(v).epsilon(1e-9));
    // r=0: vacuous bound 1 - kappa <= 0.
    CHECK(covering_fraction_bound(profile, 1, 0).upper <= 0);

    // Exact fraction >= bound whenever the bound is positive (desk scale).
    for (int k = 1; k <= 2; ++k) {
        for (int i = 1; k + i <= 4; ++i) {
            const uint64_t deep = static_cast<uint64_t>(profile.kappa(k + i));
            for (uint64_t r = 1; r <= deep; ++r) {
                const auto br = covering_fraction_bound(profile, k, Int(r));
                if (br.upper > 0) {
                    CHECK(covering_fraction_exact(profile, k, i, Int(r)) >= br.upper);
                }
            }
        }
    }
}

TEST_CASE("uniform tree measure") {
    const auto full = TreeProfile::full_shift(2);
    CHECK(tree_measure(full, 3, 5) == Rat(1, 8));
    CHECK(tree_measure(full, 1, 0) == Rat(1, 2));
    Rat sum = 0;
    for (uint64_t c = 0; c < 8; ++c) sum += tree_measure(full, 3, c);
    CHECK(sum == 1);

    TreeProfile custom = TreeProfile::custom({{3, 2}, {2, 2, 2, 2, 2}}, std::vector<Rat>{Rat(2, 5), Rat(1, 5), Rat(1, 10)});
    CHECK(tree_measure(custom, 1, 0) == Rat(1, 2));  // 1/kappa(1)
    CHECK(tree_measure(custom, 2, 0) == Rat(1, 6));  // 1/2 * 1/3
    CHECK(tree_measure(custom, 2, 4) == Rat(1, 4));  // 1/2 * 1/2
    Rat sum2 = 0;
    for (uint64_t c = 0; c < 10; ++c) sum2 += tree_measure(custom, 3, c);
    CHECK(sum2 == 1);
}

TEST_CASE("occupancy law: exact values and tuple-enumeration oracle") {
    // n=2, k=2, m=1: P({0}) = P({1}) = 1/4, P({0,1}) = 1/2.
    auto law = occupancy_law_exact(2, 2, 1);
    REQUIRE(law.atoms.size() == 3);
    CHECK(law.atoms.at(ls1(2, 1, {"0"})) == Rat(1, 4));
    CHECK(law.atoms.at(ls1(2, 1, {"1"})) == Rat(1, 4));
    CHECK(law.atoms.at(ls1(2, 1, {"0", "1"})) == Rat(1, 2));

    // k=1: uniform over singletons.
    auto singletons = occupancy_law_exact(2, 1, 2);
    REQUIRE(singletons.atoms.size() == 4);
    for (const auto& [ls, w] : singletons.atoms) {
        CHECK(ls.cells.size() == 1);
        CHECK(w == Rat(1, 4));
    }

    // Oracle: enumerate all kappa^k ordered tuples and collect image sets.
    for (int k = 1; k <= 3; ++k) {
        for (int m = 1; m <= 2; ++m) {
            const uint64_t kappa = uint64_t{1} << m;
            std::map<LevelSet, Rat> expect;
            uint64_t tuples = 1;
            for (int t = 0; t < k; ++t) tuples *= kappa;
            for (uint64_t code = 0; code < tuples; ++code) {
                uint64_t c = code;
                LevelSet ls{2, Sided::one, m, {}};
                for (int t = 0; t < k; ++t) {
                    ls.cells.insert(Word::from_rank(c % kappa, static_cast<size_t>(m), 2));
                    c /= kappa;
                }
                expect[ls] += Rat(1, Int(tuples));
            }
            auto got = occupancy_law_exact(2, k, m);
            CHECK(got.atoms == expect);
        }
    }

    CHECK_THROWS_AS(occupancy_law_exact(2, 30, 4), CapExceeded);
}

TEST_CASE("occupancy MC stays within total variation 0.02 of the exact law") {
    for (int k = 1; k <= 3; ++k) {
        for (int m = 1; m <= 2; ++m) {
            auto exact = occupancy_law_exact(2, k, m);
            auto mc = occupancy_law_mc(2, k, m, 100000, 20250809 + static_cast<uint64_t>(10 * k + m));
            Rat tv = 0;
            auto ia = exact.atoms.begin();
            auto ib = mc.atoms.begin();
            while (ia != exact.atoms.end() || ib != mc.atoms.end()) {
                if (ib == mc.atoms.end() || (ia != exact.atoms.end() && ia->first < ib->first)) {
                    tv += ia->second;
                    ++ia;
                } else if (ia == exact.atoms.end() || ib->first < ia->first) {
                    tv += ib->second;
                    ++ib;
                } else {
                    tv += abs(ia->second - ib->second);
                    ++ia;
                    ++ib;
                }
            }
            tv /= 2;
            CHECK(tv < Rat(2, 100));
        }
    }
}

TEST_CASE("occupancy MC is worker-count independent") {
    auto a = occupancy_law_mc(2, 2, 2, 5000, 42, 1);
    auto b = occupancy_law_mc(2, 2, 2, 5000, 42, 4);
    CHECK(a.atoms == b.atoms);
}

TEST_CASE("indexed occupancy law on a custom profile") {
    TreeProfile profile = TreeProfile::custom({{2, 1}}, std::vector<Rat>{Rat(1, 3), Rat(1, 4)});
    // Level-2 masses: cells 0,1 under cell 0 have mass 1/4; cell 2 has 1/2.
    auto law = occupancy_law_exact_indexed(profile, 2, 2);
    Rat sum = 0;
    for (const auto& [cells, w] : law) sum += w;
    CHECK(sum == 1);
    CHECK(law.at({0, 1}) == Rat(1, 8));  // 2 * (1/4 * 1/4)
    CHECK(law.at({2}) == Rat(1, 4));     // (1/2)^2
}
