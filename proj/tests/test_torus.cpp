#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "irclab/dilation.hpp"
#include "irclab/weyl.hpp"

using namespace irclab;

namespace {
Rat r(int64_t p, int64_t q) { return Rat(Int(p), Int(q)); }

IntervalUnion arcs(std::initializer_list<std::pair<Rat, Rat>> list) {
    std::vector<Arc> v;
    for (const auto& [lo, hi] : list) v.push_back(Arc{lo, hi});
    return IntervalUnion::from_arcs(std::move(v));
}
}  // namespace

TEST_CASE("interval union normalization and gaps") {
    auto u = arcs({{r(2, 3), r(1, 1)}, {r(0, 1), r(1, 3)}});
    CHECK(u.size() == 2);
    CHECK(u.total_length() == r(2, 3));
    CHECK(u.max_gap() == r(1, 3));
    CHECK(u.contains(r(1, 6)));
    CHECK(!u.contains(r(1, 2)));
    CHECK(u.contains(r(0, 1)));

    // eps-density: gap 1/3 -> dense iff eps > 1/6.
    CHECK(!eps_dense(u, r(1, 6)).dense);
    CHECK(eps_dense(u, r(1, 6) + r(1, 1000)).dense);

    // Full circle from overlapping pieces.
    CHECK(arcs({{r(0, 1), r(1, 2)}, {r(1, 2), r(1, 1)}}).is_full());
    CHECK(IntervalUnion::full_circle().max_gap() == 0);

    // Two antipodal points: gap 1/2, dense iff eps > 1/4.
    auto points = IntervalUnion::from_points({r(0, 1), r(1, 2)});
    CHECK(points.max_gap() == r(1, 2));
    CHECK(!eps_dense(points, r(1, 4)).dense);
    CHECK(eps_dense(points, r(26, 100)).dense);

    // Wrapping input arc.
    auto w = arcs({{r(9, 10), r(11, 10)}});
    CHECK(w.size() == 2);
    CHECK(w.total_length() == r(2, 10));
    CHECK(w.contains(r(1, 20)));
    CHECK(w.max_gap() == r(8, 10));
}

TEST_CASE("dilation of interval unions is exact") {
    auto u = arcs({{r(0, 1), r(1, 3)}});
    CHECK(u.dilate(1).arcs() == u.arcs());
    CHECK(u.dilate(3).is_full());

    // Doubling [0,1/3]: [0,2/3].
    auto d2 = u.dilate(2);
    CHECK(d2.size() == 1);
    CHECK(d2.arcs().front() == Arc{r(0, 1), r(2, 3)});

    // Spec example: the level-2 cover of base-3 digits {0,2} dilated by 2.
    auto y = DigitSet::whitelist(3, {0, 2});
    auto cover2 = y.cover(2, 1000);
    REQUIRE(cover2.size() == 4);  // arcs 00, 02, 20, 22 of length 1/9
    auto d = cover2.dilate(2);
    // By hand: [0,1/9]->[0,2/9]; [2/9,3/9]->[4/9,6/9]; [6/9,7/9]->[12/9,14/9]
    // = [3/9,5/9]; [8/9,1]->[16/9,2] = [7/9,1]. Merge: [0,2/9] u [3/9,6/9] u [7/9,1].
    REQUIRE(d.size() == 3);
    CHECK(d.arcs()[0] == Arc{r(0, 1), r(2, 9)});
    CHECK(d.arcs()[1] == Arc{r(1, 3), r(2, 3)});
    CHECK(d.arcs()[2] == Arc{r(7, 9), r(1, 1)});

    // Endpoint denominators divide n * input denominators.
    for (const Arc& a : d.arcs()) {
        CHECK(Int(9 * 2) % denominator(a.lo) == 0);
        CHECK(Int(9 * 2) % denominator(a.hi) == 0);
    }
}

TEST_CASE("eps_dense monotonicity properties") {
    auto y = DigitSet::whitelist(3, {0, 2});
    auto u = y.cover(3, 1000);
    // Monotone in eps.
    Rat prev_gap = u.max_gap();
    CHECK(eps_dense(u, prev_gap).dense);  // eps = gap > gap/2 threshold
    CHECK(!eps_dense(u, prev_gap / 2).dense);
    // Antitone under subsets: a sub-union has at least the gap.
    auto sub = arcs({{u.arcs()[0].lo, u.arcs()[0].hi}});
    CHECK(sub.max_gap() >= u.max_gap());
    CHECK(sub.subset_of(u));
    CHECK(!u.subset_of(sub));
}

TEST_CASE("digit set covers") {
    auto y = DigitSet::whitelist(3, {0, 2});
    auto c1 = y.cover(1, 10);
    REQUIRE(c1.size() == 2);
    CHECK(c1.arcs()[0] == Arc{r(0, 1), r(1, 3)});
    CHECK(c1.arcs()[1] == Arc{r(2, 3), r(1, 1)});
    CHECK(y.count_level(2) == 4);
    CHECK(DigitSet::full(2).cover(5, 100).is_full());
    CHECK_THROWS_AS(y.cover(30, 1000), CapExceeded);

    // Refinement nesting: cover(m+1) subset of cover(m).
    for (int m = 1; m <= 6; ++m) CHECK(y.cover(m + 1, 1 << 20).subset_of(y.cover(m, 1 << 20)));

    // Golden-mean SFT: base 2 forbidding 11; counts follow Fibonacci.
    auto gm = DigitSet::forbidden(2, {"11"});
    CHECK(gm.count_level(1) == 2);
    CHECK(gm.count_level(2) == 3);
    CHECK(gm.count_level(3) == 5);
    CHECK(gm.count_level(10) == 144);
    const auto words = gm.enumerate_level(4, 100);
    CHECK(Int(words.size()) == gm.count_level(4));
    for (int m = 1; m <= 6; ++m) CHECK(gm.cover(m + 1, 1000).subset_of(gm.cover(m, 1000)));

    CHECK(y.shift_invariant());
    CHECK(gm.shift_invariant());
    CHECK_THROWS_AS(DigitSet::forbidden(2, {"0", "1"}), ValidationError);
}

TEST_CASE("multiplicative Folner sets") {
    auto f1 = folner_mult(1);
    CHECK(f1.elements == std::vector<Int>{1, 2});
    auto f2 = folner_mult(2);
    CHECK(f2.elements == std::vector<Int>{1, 2, 3, 4, 6, 9, 12, 18, 36});
    auto f3 = folner_mult(3);
    CHECK(f3.elements.size() == 64);  // (m+1)^m
    uint64_t div6 = 0;
    for (const Int& n : f3.elements) div6 += (n % 6 == 0) ? 1 : 0;
    CHECK(div6 == 36);
    // Nesting: F_m subset of F_{m+1}.
    for (const Int& n : f2.elements)
        CHECK(std::binary_search(f3.elements.begin(), f3.elements.end(), n));
    CHECK_THROWS_AS(folner_mult(12), CapExceeded);
    CHECK(folner_max(2) == 36);
}

TEST_CASE("dilation verdicts: reduced matches unreduced (route cross-check)") {
    auto y = DigitSet::whitelist(3, {0, 2});
    const Rat eps = r(1, 20);
    DilationPolicy reduced;
    DilationPolicy unreduced;
    unreduced.reduce_by_invariance = false;
    for (const Int& n : folner_mult(2).elements) {
        auto a = dilation_verdict(y, n, eps, reduced);
        auto b = dilation_verdict(y, n, eps, unreduced);
        CHECK(a.verdict == b.verdict);
        CHECK(a.gap == b.gap);  // the reduction changes q and m', not the gap
    }
    // Composition route: gap equals eps_dense(dilate(cover(Y, m'), n)).max_gap.
    for (const Int& n : std::vector<Int>{1, 2, 5, 7, 10}) {
        auto v = dilation_verdict(y, n, eps, unreduced);
        auto composed = y.cover(v.m_prime, 1 << 22).dilate(n);
        CHECK(composed.max_gap() == v.gap);
    }
}

TEST_CASE("dilation density: full circle digit set is always dense") {
    auto full = DigitSet::full(3);
    auto reports = dilation_density(full, 2, r(1, 20));
    for (const auto& rep : reports) {
        CHECK(rep.fraction == 1);
        CHECK(rep.ambiguous == 0);
    }
}

TEST_CASE("dilation density of the base-3 {0,2} set at eps 1/20") {
    auto y = DigitSet::whitelist(3, {0, 2});
    DilationPolicy policy;
    policy.workers = 4;
    auto reports = dilation_density(y, 3, r(1, 20), policy);
    REQUIRE(reports.size() == 3);
    // Frozen from the independent pre-build oracle.
    CHECK(reports[0].fraction == 0);
    CHECK(reports[1].fraction == 0);
    CHECK(reports[2].fraction == r(13, 16));
    for (const auto& rep : reports) CHECK(rep.ambiguous == 0);
    // Per-n sanity: n=1 keeps the main gap 1/3; n=2 gives 1/9.
    CHECK(reports[1].table[0].gap == r(1, 3));
    CHECK(reports[1].table[1].gap == r(1, 9));
}

TEST_CASE("J extraction over a short horizon") {
    auto y = DigitSet::whitelist(3, {0, 2});
    DilationPolicy policy;
    policy.workers = 4;
    auto rep = extract_j(y, 3, 12, policy);
    for (int m = 1; m <= 3; ++m) {
        const int rm = rep.r_of_m[static_cast<size_t>(m)];
        if (rm == 0) continue;
        // |J cap F_m| / |F_m| >= |J_m| / |F_m| > 1 - 2^-r(m)
        CHECK(rep.trace[static_cast<size_t>(m)] >= rep.j_m_fraction[static_cast<size_t>(m)]);
        CHECK(rep.j_m_fraction[static_cast<size_t>(m)] >
              1 - Rat(1, pow_int(2, static_cast<unsigned>(rm))));
        // sup_{n in J_m} ell_n <= 1/r(m)
        if (rep.sup_ell_on_j_m[static_cast<size_t>(m)] >= 0)
            CHECK(rep.sup_ell_on_j_m[static_cast<size_t>(m)] <= Rat(1, rm));
    }
    // Full digit set: J = everything, trace identically 1.
    auto full = extract_j(DigitSet::full(3), 2, 6);
    for (int m = 1; m <= 2; ++m) CHECK(full.trace[static_cast<size_t>(m)] == 1);
    for (uint8_t b : full.in_j) CHECK(b == 1);
}

TEST_CASE("Berend-Peres condensation set") {
    auto set = berend_peres(2);
    REQUIRE(set.Q.size() == 2);
    CHECK(set.Q[0] == 2);
    CHECK(set.m_index[0] == 1);
    CHECK(set.Q[1] == 2310);  // first primorial beyond max(4*36*2, 8*36) = 288
    CHECK(set.m_index[1] == 5);

    // Q(i) | n implies every point of Y_t lands within 2^-i of 0; exact.
    for (int i = 1; i <= 2; ++i) {
        const Int Q = set.Q[static_cast<size_t>(i) - 1];
        std::vector<Int> candidates;
        for (const Int& w : folner_mult(i == 1 ? 2 : 4).elements) candidates.push_back(Q * w);
        for (const Int& n : candidates) {
            CHECK(set.condensation_distance(n, 2) < Rat(1, pow_int(2, static_cast<unsigned>(i))));
        }
    }
    // t=1: Y_1 = {0, 1/2}; any even n sends both to 0.
    auto pts = set.truncated_points(1);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0] == 0);
    CHECK(pts[1] == r(1, 2));
    CHECK(set.condensation_distance(2, 1) == 0);
    CHECK(set.condensation_distance(3, 1) == r(1, 2));

    // Condensation fraction at m=2, delta=1/2: distance < 1/2 for all even n
    // plus n odd with distance exactly 1/2 excluded; count evens in F_2.
    const Rat frac = set.condensation_fraction(2, r(1, 2), 1);
    CHECK(frac == r(6, 9));  // 6 of the 9 elements of F_2 are even

    // Scaled rule is flagged and grows geometrically.
    auto scaled = berend_peres(4, true);
    CHECK(scaled.scaled);
    CHECK(scaled.Q[1] == 24);
    CHECK(scaled.Q[2] == 480);
    // True rule beyond i=3 exceeds the bit cap.
    CHECK_THROWS_AS(berend_peres(4, false), CapExceeded);
}

TEST_CASE("divisibility fractions over Folner sets") {
    for (int m = 1; m <= 4; ++m) {
        for (int s = 0; s <= m; ++s) {
            CHECK(divisibility_fraction_formula(m, s) == divisibility_fraction_count(m, s));
        }
    }
    CHECK(divisibility_fraction_formula(4, 2) == r(16, 25));
}

TEST_CASE("Weyl discrepancy") {
    // alpha rational: flagged; alpha = 0 would put all mass at 0.
    auto flat = weyl_discrepancy(SeqKind::naturals, {AlphaSpec::rational(Rat(0))}, 100);
    CHECK(flat.rational_flag);
    CHECK(flat.dstar == doctest::Approx(1.0));

    // Golden conjugate along the naturals: classical low discrepancy.
    auto golden = weyl_discrepancy(SeqKind::naturals, {AlphaSpec::golden_conjugate()}, 10000);
    CHECK(!golden.rational_flag);
    CHECK(golden.dstar < 0.01);
    CHECK(golden.dstar == doctest::Approx(0.0002567676941102143).epsilon(1e-6));

    // Squares * sqrt(2): frozen oracle values at N=100 and N=100000.
    auto s100 = weyl_discrepancy(SeqKind::squares, {AlphaSpec::sqrt(2)}, 100);
    CHECK(s100.dstar == doctest::Approx(0.07480579111720419).epsilon(1e-9));
    auto s100000 = weyl_discrepancy(SeqKind::squares, {AlphaSpec::sqrt(2)}, 100000);
    CHECK(s100000.dstar == doctest::Approx(0.00287238174208172).epsilon(1e-9));
    CHECK(s100000.dstar * 5 < s100.dstar);

    // Vector alpha: per-coordinate values plus a product-box estimate.
    auto vec = weyl_discrepancy(SeqKind::naturals,
                                {AlphaSpec::sqrt(2), AlphaSpec::sqrt(3)}, 2000);
    CHECK(vec.coord_dstar.size() == 2);
    REQUIRE(vec.product_box);
    CHECK(*vec.product_box < 0.2);

    // Alpha parsing round trips.
    CHECK(AlphaSpec::parse("sqrt:2").describe() == "sqrt(2)");
    CHECK(AlphaSpec::parse("golden").describe() == "golden-conjugate");
    CHECK(AlphaSpec::parse("rat:3/7").is_rational());
    CHECK(AlphaSpec::parse("0.25").value == r(1, 4));
    CHECK_THROWS_AS(weyl_discrepancy(SeqKind::naturals, {AlphaSpec::sqrt(2)}, 100000000),
                    CapExceeded);
}
