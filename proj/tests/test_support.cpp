#include <catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace frv;
using frvtest::rng_t;

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(AlphaGrid::custom({0.0, 0.5}, {0.5, 0.5}), InvariantViolation); // no 1
    CHECK_THROWS_AS(AlphaGrid::custom({0.0, 0.5, 0.5, 1.0}, {0.25, 0.25, 0.25, 0.25}),
                    InvariantViolation); // not strictly increasing
    CHECK_THROWS_AS(AlphaGrid::custom({0.0, 1.0}, {0.9, 0.2}), InvariantViolation); // sum != 1
    const auto g = AlphaGrid::uniform(20);
    CHECK(g.size() == 21);
    double sum = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) sum += g.weight(k);
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));

    const auto line = DirectionGrid::line();
    CHECK(line.size() == 2);
    CHECK(line.antipode(0).value() == 1);
    const auto circle = DirectionGrid::circle(64);
    CHECK(circle.antipode(5).value() == 37);
    CHECK_THROWS_AS(DirectionGrid::circle(3), InvariantViolation);
    CHECK_THROWS_AS(DirectionGrid::custom({Point(1.0, 0.0), Point(0.0, 1.0)}, {0.5, 0.5}),
                    InvariantViolation); // gap of 3*pi/2
}

TEST_CASE("eval_support examples") {
    const auto ag = AlphaGrid::uniform(4);
    const auto dg = DirectionGrid::line();
    SECTION("crisp interval") {
        const auto s = eval_support(FuzzySet::constant(ag, CrispConvexSet::interval(-1, 1)), dg);
        for (std::size_t k = 0; k < s.level_count(); ++k) {
            CHECK(s.value(k, 0) == 1.0);
            CHECK(s.value(k, 1) == 1.0);
        }
    }
    SECTION("singleton") {
        const auto s = eval_support(FuzzySet::singleton(ag, Point(0.3)), dg);
        CHECK(s.value(2, 0) == 0.3);
        CHECK(s.value(2, 1) == -0.3);
    }
    SECTION("triangular fuzzy number at alpha = 1/2") {
        std::vector<CrispConvexSet> bodies;
        for (std::size_t k = 0; k < ag.size(); ++k)
            bodies.push_back(CrispConvexSet::interval(-(1.0 - ag.level(k)), 1.0 - ag.level(k)));
        const auto s = eval_support(FuzzySet(ag, bodies), dg);
        CHECK(s.value(2, 0) == 0.5); // alpha = 0.5 row
        CHECK(s.value(2, 1) == 0.5);
    }
    SECTION("dimension mismatch") {
        CHECK_THROWS_AS(eval_support(FuzzySet::singleton(ag, Point(0.3)), DirectionGrid::circle(8)),
                        DimensionMismatch);
    }
}

TEST_CASE("reconstruct") {
    const auto ag = AlphaGrid::uniform(4);
    SECTION("interval roundtrip is exact") {
        const auto f = FuzzySet::constant(ag, CrispConvexSet::interval(-1, 1));
        const auto r = reconstruct(eval_support(f, DirectionGrid::line()));
        for (std::size_t k = 0; k < r.level_count(); ++k) {
            CHECK(r.body(k).lo() == -1.0);
            CHECK(r.body(k).hi() == 1.0);
        }
    }
    SECTION("roundtrip is bitwise exact for random interval stacks") {
        rng_t rng(19);
        for (int t = 0; t < 60; ++t) {
            const auto f = frvtest::random_fuzzy_interval(rng, ag);
            const auto r = reconstruct(eval_support(f, DirectionGrid::line()));
            for (std::size_t k = 0; k < r.level_count(); ++k) {
                CHECK(r.body(k).lo() == f.body(k).lo());
                CHECK(r.body(k).hi() == f.body(k).hi());
            }
        }
    }
    SECTION("contradictory interval row is an empty level") {
        SupportSurface s(DirectionGrid::line(), ag);
        for (std::size_t k = 0; k < s.level_count(); ++k) {
            s.value(k, 0) = 1.0;
            s.value(k, 1) = -2.0; // interval [2, 1]
        }
        CHECK_THROWS_AS(reconstruct(s), EmptyLevel);
    }
    SECTION("alpha monotonicity is enforced") {
        SupportSurface s(DirectionGrid::line(), ag);
        s.value(3, 0) = 1.0; // grows with alpha
        CHECK_THROWS_AS(reconstruct(s), NotMonotone);
    }
    SECTION("square on a 64-direction grid stays within the grid bound") {
        rng_t rng(23);
        const auto dg = DirectionGrid::circle(64);
        for (int t = 0; t < 12; ++t) {
            const double rot = frvtest::uniform(rng, 0.0, M_PI / 2.0);
            std::vector<Vec2> vs;
            for (const Vec2 c : {Vec2{-1, -1}, Vec2{1, -1}, Vec2{1, 1}, Vec2{-1, 1}})
                vs.push_back({c.x * std::cos(rot) - c.y * std::sin(rot),
                              c.x * std::sin(rot) + c.y * std::cos(rot)});
            const auto sq = CrispConvexSet::polygon(vs);
            const auto f = FuzzySet::constant(ag, sq);
            const auto r = reconstruct(eval_support(f, dg));
            // outer approximation within R * tan(pi / J)
            const double bound = std::sqrt(2.0) * std::tan(M_PI / 64.0) + 1e-9;
            const double h =
                frvtest::oracle_hausdorff_polygons(r.body(0).vertices(), sq.vertices());
            CHECK(h <= bound);
            CHECK(excess(sq, r.body(0)) <= 1e-9); // contains the original
        }
    }
}

TEST_CASE("is_valid_support") {
    const auto ag = AlphaGrid::uniform(4);
    const auto dg = DirectionGrid::line();
    SECTION("support of any valid fuzzy set is valid") {
        rng_t rng(29);
        for (int t = 0; t < 50; ++t) {
            const auto f = frvtest::random_fuzzy_interval(rng, ag);
            const auto verdict = is_valid_support(eval_support(f, dg));
            CHECK(verdict.valid);
            CHECK(verdict.zero_direction_vacuous);
        }
    }
    SECTION("difference with existing hukuhara difference is valid") {
        const auto a = FuzzySet::constant(ag, CrispConvexSet::interval(-0.8, 0.8));
        const auto b = FuzzySet::constant(ag, CrispConvexSet::interval(-0.5, 0.5));
        CHECK(is_valid_support(eval_support(a, dg) - eval_support(b, dg)).valid);
    }
    SECTION("difference violating normality is flagged") {
        const auto a = FuzzySet::constant(ag, CrispConvexSet::interval(-0.3, 0.3));
        const auto b = FuzzySet::constant(ag, CrispConvexSet::interval(-0.5, 0.5));
        const auto verdict = is_valid_support(eval_support(a, dg) - eval_support(b, dg));
        CHECK_FALSE(verdict.valid);
        REQUIRE_FALSE(verdict.violations.empty());
        CHECK(verdict.violations.front().kind == SupportViolation::Kind::Normality);
        CHECK(verdict.violations.front().amount == Catch::Approx(-0.4));
    }
    SECTION("non-finite entries are flagged") {
        SupportSurface s(dg, ag);
        s.value(0, 0) = std::numeric_limits<double>::infinity();
        const auto verdict = is_valid_support(s);
        CHECK_FALSE(verdict.valid);
        CHECK(verdict.violations.front().kind == SupportViolation::Kind::NotFinite);
    }
    SECTION("dimension 2: valid on aligned polygons, invalid on inconsistent rows") {
        rng_t rng(31);
        const auto dg2 = DirectionGrid::circle(16);
        const auto f = frvtest::random_fuzzy_polygon(rng, ag, dg2);
        auto s = eval_support(f, dg2);
        CHECK(is_valid_support(s).valid);
        s.value(1, 3) += 0.4; // a bump no convex body can support
        CHECK_FALSE(is_valid_support(s).valid);
    }
}

TEST_CASE("d2 metric") {
    const auto ag = AlphaGrid::uniform(20);
    const auto dg = DirectionGrid::line();
    SECTION("identity") {
        rng_t rng(37);
        const auto f = frvtest::random_fuzzy_interval(rng, ag);
        CHECK(d2(eval_support(f, dg), eval_support(f, dg)) == 0.0);
    }
    SECTION("origin to unit interval is 1") {
        const auto a = eval_support(FuzzySet::singleton(ag, Point(0.0)), dg);
        const auto b = eval_support(FuzzySet::constant(ag, CrispConvexSet::interval(-1, 1)), dg);
        CHECK(d2(a, b) == Catch::Approx(1.0).margin(1e-12));
    }
    SECTION("singleton shift closed form |a-b|") {
        rng_t rng(41);
        for (int t = 0; t < 60; ++t) {
            const double a = frvtest::uniform(rng, -3, 3);
            const double b = frvtest::uniform(rng, -3, 3);
            const double d = d2(eval_support(FuzzySet::singleton(ag, Point(a)), dg),
                                eval_support(FuzzySet::singleton(ag, Point(b)), dg));
            CHECK(d == Catch::Approx(std::fabs(a - b)).margin(1e-10));
        }
    }
    SECTION("grid mismatch") {
        const auto a = eval_support(FuzzySet::singleton(ag, Point(0.0)), dg);
        const auto b =
            eval_support(FuzzySet::singleton(AlphaGrid::uniform(4), Point(0.0)), dg);
        CHECK_THROWS_AS(d2(a, b), GridMismatch);
    }
}

TEST_CASE("dinf metric") {
    const auto ag = AlphaGrid::uniform(8);
    SECTION("examples") {
        const auto a = FuzzySet::constant(ag, CrispConvexSet::interval(0, 1));
        const auto b = FuzzySet::constant(ag, CrispConvexSet::interval(0, 2));
        CHECK(dinf(a, a) == 0.0);
        CHECK(dinf(a, b) == 1.0);
    }
    SECTION("translation invariance of shape") {
        rng_t rng(43);
        const auto dg = DirectionGrid::circle(16);
        const auto f = frvtest::random_fuzzy_polygon(rng, ag, dg);
        const Point v(0.7, -0.4);
        CHECK(dinf(f, translate(f, v)) == Catch::Approx(v.norm()).margin(1e-9));
    }
}

TEST_CASE("isometry between dinf and the surface sup norm") {
    const auto ag = AlphaGrid::uniform(6);
    SECTION("exact in dimension 1") {
        rng_t rng(47);
        const auto dg = DirectionGrid::line();
        for (int t = 0; t < 60; ++t) {
            const auto f = frvtest::random_fuzzy_interval(rng, ag);
            const auto g = frvtest::random_fuzzy_interval(rng, ag);
            CHECK(dinf(f, g) ==
                  Catch::Approx(eval_support(f, dg).sup_norm_diff(eval_support(g, dg)))
                      .margin(1e-12));
        }
    }
    SECTION("bracketed by the grid factor in dimension 2") {
        rng_t rng(53);
        const std::size_t J = 64;
        const auto dg = DirectionGrid::circle(J);
        for (int t = 0; t < 20; ++t) {
            const auto f = frvtest::random_fuzzy_polygon(rng, ag, dg);
            const auto g = frvtest::random_fuzzy_polygon(rng, ag, dg);
            const double grid_sup = eval_support(f, dg).sup_norm_diff(eval_support(g, dg));
            const double h = dinf(f, g);
            CHECK(grid_sup <= h + 1e-9);
            CHECK(h <= grid_sup / std::cos(M_PI / static_cast<double>(J)) + 1e-9);
        }
    }
}

TEST_CASE("monotone in alpha") {
    rng_t rng(59);
    const auto ag = AlphaGrid::uniform(10);
    for (int t = 0; t < 40; ++t) {
        const auto f = frvtest::random_fuzzy_interval(rng, ag);
        const auto s = eval_support(f, DirectionGrid::line());
        for (std::size_t k = 0; k + 1 < s.level_count(); ++k)
            for (std::size_t j = 0; j < 2; ++j) CHECK(s.value(k + 1, j) <= s.value(k, j));
    }
    const auto dg = DirectionGrid::circle(16);
    for (int t = 0; t < 10; ++t) {
        const auto f = frvtest::random_fuzzy_polygon(rng, AlphaGrid::uniform(5), dg);
        const auto s = eval_support(f, dg);
        for (std::size_t k = 0; k + 1 < s.level_count(); ++k)
            for (std::size_t j = 0; j < s.direction_count(); ++j)
                CHECK(s.value(k + 1, j) <= s.value(k, j) + 1e-9);
    }
}
