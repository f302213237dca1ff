#include <doctest.h>

#include <cmath>
#include <random>

#include "cgb/bounds.hpp"

using namespace cgb;

namespace {

const double kS32 = std::log(2.0) / std::log(3.0);

}

TEST_CASE("classify_angle: worked examples at delta = 1/81") {
    double d = 1.0 / 81;
    Regime r1 = classify_angle(d, kS32, 0.03);
    CHECK(r1.small);
    CHECK_FALSE(r1.large);
    CHECK(r1.beta == doctest::Approx(0.0625).epsilon(1e-12));
    CHECK(r1.gamma == doctest::Approx(0.19753086419753085).epsilon(1e-12));

    Regime r2 = classify_angle(d, kS32, 0.2);
    CHECK(r2.very_large);
    CHECK(r2.large);

    // boundary angles take the larger regime's tag
    Regime r3 = classify_angle(d, kS32, r1.beta);
    CHECK(r3.large);
    CHECK_FALSE(r3.small);
    Regime r4 = classify_angle(d, kS32, r1.gamma);
    CHECK(r4.very_large);

    CHECK(classify_angle(d, kS32, 0.5 * d).below_delta);
    CHECK(classify_angle(d, kS32, 0.0).below_delta);
}

TEST_CASE("classify_angle: the regime partition on random inputs") {
    std::mt19937 rng(12);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int k = 0; k < 2000; ++k) {
        double delta = std::pow(10.0, -1 - 4 * u01(rng));
        double s = 0.05 + 0.9 * u01(rng);
        double theta = delta + (M_PI - delta) * u01(rng);
        Regime r = classify_angle(delta, s, theta);
        CHECK((r.small != r.large));  // exactly one of small/large at theta >= delta
        if (r.very_large) CHECK(r.large);
        CHECK(delta <= r.beta * (1 + 1e-12));
        CHECK(r.beta <= r.gamma * (1 + 1e-12));
    }
}

TEST_CASE("ladder_level: half-open interval convention, upper endpoint included") {
    CHECK(ladder_level(1.0, 3) == 0);
    CHECK(ladder_level(1.0 / 3, 3) == 1);   // exact power: upper endpoint
    CHECK(ladder_level(1.0 / 27, 3) == 3);
    CHECK(ladder_level(0.9 / 27, 3) == 3);
    CHECK(ladder_level(1.01 / 27, 3) == 2);
    CHECK(ladder_level(1e-9, 10) == 9);  // exact power: upper endpoint of (10^-10, 10^-9]
    CHECK_THROWS_AS(ladder_level(0.0, 3), domain_error);
    CHECK_THROWS_AS(ladder_level(1.5, 3), domain_error);
}

TEST_CASE("scale_ladder: worked examples") {
    // theta = 0.1: r0 = 0.1^{1/s} ~ 0.026 -> t = 3, r = 1/27
    ScaleLadder l1 = scale_ladder(3, 1.0 / 729, kS32, 0.1);
    CHECK(l1.r0 == doctest::Approx(0.026003840843650372).epsilon(1e-12));
    CHECK(l1.t == 3);
    CHECK(l1.r == doctest::Approx(1.0 / 27).epsilon(1e-15));
    CHECK(l1.m == 2);  // 0.1 in (1/27, 1/9]
    CHECK(l1.invariants_ok);

    // rho0 = 0.25 * (1/81)^s = 1/64 -> k = 3
    ScaleLadder l2 = scale_ladder(3, 1.0 / 81, kS32, 0.25);
    CHECK(l2.rho0 == doctest::Approx(1.0 / 64).epsilon(1e-12));
    CHECK(l2.k == 3);
    CHECK(l2.t == 2);  // r0 = 1/9 exactly, upper endpoint included
    CHECK(l2.invariants_ok);

    // exact powers of a sit at the upper endpoint of their interval
    ScaleLadder l3 = scale_ladder(3, 1.0 / 729, kS32, 1.0 / 27);
    CHECK(l3.m == 3);

    CHECK_THROWS_AS(scale_ladder(3, 0.01, kS32, 0.0), domain_error);
    CHECK_THROWS_AS(scale_ladder(3, 0.01, kS32, 1.5), domain_error);
}

TEST_CASE("bound_small: endpoint, crossover, and the worked value") {
    double d = 1.0 / 81;
    // theta = delta: max(1, delta^s) = 1
    CHECK(bound_small(d, kS32, d) == doctest::Approx(std::pow(d, -kS32)).epsilon(1e-12));
    // crossover theta = delta^{1/(s+1)}: both branches agree
    double cross = std::pow(d, 1.0 / (kS32 + 1.0));
    CHECK(d / cross == doctest::Approx(std::pow(cross, kS32)).epsilon(1e-12));
    // worked: 81^s * max(0.4115, 0.1095)
    CHECK(bound_small(d, kS32, 0.03) == doctest::Approx(6.584362139917696).epsilon(1e-12));
    CHECK_THROWS_AS(bound_small(d, kS32, 0.2), domain_error);     // very large
    CHECK_THROWS_AS(bound_small(d, kS32, 0.5 * d), domain_error); // below delta
}

TEST_CASE("bound_large: substitution endpoints and the s = 1/2 symmetry") {
    double d = 1.0 / 81;
    LargeBound at1 = bound_large(d, kS32, 1.0);
    CHECK(at1.first == doctest::Approx(std::pow(d, -kS32)).epsilon(1e-12));
    REQUIRE(at1.second.has_value());
    CHECK(*at1.second == doctest::Approx(std::pow(d, -kS32 * kS32)).epsilon(1e-12));

    // frozen arithmetic at theta = 0.25: first = 64/9, second ~ 6.129
    LargeBound mid = bound_large(d, kS32, 0.25);
    CHECK(mid.first == doctest::Approx(64.0 / 9).epsilon(1e-12));
    REQUIRE(mid.second.has_value());
    CHECK(*mid.second == doctest::Approx(6.129007711492409).epsilon(1e-11));

    // s = 1/2, theta >= sqrt(delta): r0 = theta^2, branch max = sqrt(theta)
    double d42 = 1.0 / 256;
    double th = 0.5;
    LargeBound sym = bound_large(d42, 0.5, th);
    CHECK(sym.first == doctest::Approx(std::pow(d42, -0.5) * std::sqrt(th)).epsilon(1e-12));
    REQUIRE(sym.second.has_value());

    // second bound only above delta^{1-s}
    LargeBound low = bound_large(d, kS32, 0.1);
    CHECK_FALSE(low.second.has_value());
    CHECK_THROWS_AS(bound_large(d, kS32, 0.01), domain_error);
}

TEST_CASE("fit_exponent: exact lines and the degenerate input") {
    FitResult f1 = fit_exponent({{0, 0}, {1, 2}, {2, 4}, {3, 6}});
    CHECK(f1.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(f1.residual <= 1e-12);
    FitResult f2 = fit_exponent({{1, 6}, {2, 7}, {4, 9}});
    CHECK(f2.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f2.intercept == doctest::Approx(5.0).epsilon(1e-12));
    CHECK_THROWS_AS(fit_exponent({{0, 0}, {1, 1}}), domain_error);
}

TEST_CASE("check_corner_offsets: the n=1 staircase corner differences") {
    LevelSet lv = build_level(DigitSystem::staircase(3, 2), 1);
    RotatedFamily A = rotate_level(lv, 0, {0, 0});
    CountOptions opts;
    opts.collect_pairs = true;
    PairCountRecord rec = count_pairs_fast(A, A, {}, opts);
    CornerOffsetCheck s2 = check_corner_offsets(A, A, rec.pairs);
    CHECK(s2.pairs == 4);
    CHECK(s2.max_y_over_ds == doctest::Approx(1.0).epsilon(1e-12));  // |pr_y| = delta^s
    CHECK(s2.x_applicable);
    CHECK(s2.max_x_over_d == doctest::Approx(2.0).epsilon(1e-12));   // |pr_x| = 2 delta
}

TEST_CASE("check_fine_classes: brute-force partitions at n=5 stay within the caps") {
    // staircase at theta = 1/81, plus a seeded system over several small angles
    struct Case {
        DigitSystem sys;
        double theta;
    };
    std::vector<Case> cases = {{DigitSystem::staircase(3, 2), 1.0 / 81}};
    for (int k = 2; k <= 6; ++k)
        cases.push_back({DigitSystem::seeded(3, 2, 99), double(k) / 243.0});
    for (const Case& c : cases) {
        LevelSet lv = build_level(c.sys, 5);
        Regime reg = classify_angle(lv.delta(), c.sys.s(), c.theta);
        REQUIRE(reg.small);
        RotatedFamily A = rotate_level(lv, 0, {0, 0});
        RotatedFamily B = rotate_level(lv, c.theta, {0, 0});
        CountOptions opts;
        opts.collect_pairs = true;
        PairCountRecord brute = count_pairs_bruteforce(A, B, {}, opts);
        FineClassCheck mc = check_fine_classes(lv, brute.pairs, c.theta);
        CHECK(mc.max_partner_values <= 25);
        CHECK(mc.max_xdiff_values <= 51);
        CHECK(mc.coarse_divisible);
        // partition totals recover L
        std::int64_t sum = 0;
        for (const auto& [xi, cnt] : fine_class_partition(lv, brute.pairs, mc.m)) sum += cnt;
        CHECK(sum == brute.L);
    }
}

TEST_CASE("check_parent_groups: brute-force pairs at n=6, theta=0.5, 20 translations") {
    DigitSystem sys = DigitSystem::staircase(3, 2);
    LevelSet lv = build_level(sys, 6);
    double s = sys.s();
    double theta = 0.5;
    REQUIRE(theta >= std::pow(lv.delta(), 1.0 - s));
    ScaleLadder lad = scale_ladder(3, lv.delta(), s, theta);
    RotatedFamily A = rotate_level(lv, 0, {0, 0});
    std::uint64_t state = 13;
    for (int trial = 0; trial < 20; ++trial) {
        Vec2 omega{unit_symmetric(state), unit_symmetric(state)};
        if (trial == 0) omega = {0, 0};
        RotatedFamily B = rotate_level(lv, theta, omega);
        CountOptions opts;
        opts.collect_pairs = true;
        PairCountRecord brute = count_pairs_bruteforce(A, B, {}, opts);
        ParentGroupCheck lc = check_parent_groups(lv, brute.pairs, std::min(lad.k, lv.n));
        CHECK(lc.max_child_pairs <= 220 * sys.a);
        CHECK(lc.disjunction_ok);
    }
}

TEST_CASE("check_parent_groups: k = n leaves only diagonal child pairs") {
    LevelSet lv = build_level(DigitSystem::staircase(3, 2), 2);
    RotatedFamily A = rotate_level(lv, 0, {0, 0});
    CountOptions opts;
    opts.collect_pairs = true;
    PairCountRecord rec = count_pairs_fast(A, A, {}, opts);
    ParentGroupCheck lc = check_parent_groups(lv, rec.pairs, lv.n);
    CHECK(lc.max_child_pairs == 1);
    CHECK(lc.disjunction_ok);
    CHECK(lc.parent_pairs == rec.L);
}
