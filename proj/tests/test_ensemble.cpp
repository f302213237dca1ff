#include <doctest.h>

#include <cmath>
#include <random>

#include "cgb/ensemble.hpp"

using namespace cgb;

namespace {

EnsembleConfig staircase_cfg(int n) {
    EnsembleConfig cfg;
    cfg.sys = DigitSystem::staircase(3, 2);
    cfg.n = n;
    return cfg;
}

}  // namespace

TEST_CASE("angle_set: grid counts and maximality") {
    AngleSet a1 = angle_set(1.0);
    CHECK(a1.count == 4);  // {0, 1, 2, 3}
    CHECK(a1.angle(3) == 3.0);

    AngleSet a2 = angle_set(0.1);
    CHECK(a2.count == 32);

    AngleSet a3 = angle_set(1.0 / 27);
    CHECK(a3.angle(1) - a3.angle(0) == doctest::Approx(1.0 / 27));
    CHECK(a3.angle(a3.count - 1) <= M_PI);
    CHECK(M_PI - a3.angle(a3.count - 1) < a3.delta);  // maximal: no room for another
    CHECK_THROWS_AS(angle_set(4.0), domain_error);
}

TEST_CASE("pair_overlap_profile: the k=0 entry is leb(R)") {
    EnsembleConfig cfg = staircase_cfg(1);
    auto profile = pair_overlap_profile(cfg);
    REQUIRE(std::int64_t(profile.size()) == angle_set(1.0 / 3).count);
    // leb(R_1) = 8/3 by inclusion-exclusion; total area bound 9 delta = 3
    CHECK(profile[0].overlap.inner() <= 8.0 / 3);
    CHECK(profile[0].overlap.outer() >= 8.0 / 3);
    CHECK(profile[0].pair_sum_upper == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(profile[0].overlap.outer() <= 9.0 * (1.0 / 3) * 1.35);

    for (const auto& e : profile) {
        CHECK(e.overlap.inner() <= e.overlap.outer());
        CHECK(e.pair_sum_upper >= e.overlap.inner() * (1 - 1e-12));
    }

    EnsembleConfig random_omega = cfg;
    random_omega.omega.kind = OmegaPolicy::Kind::Random;
    CHECK_THROWS_AS(pair_overlap_profile(random_omega), domain_error);
}

TEST_CASE("pair_overlap_profile: zero-count angles have zero overlap") {
    // digits {1,3}: every rectangle sits right of x = 1/16, so near-pi
    // rotations land in x < 0 and cannot meet the unrotated family.
    EnsembleConfig cfg;
    cfg.sys = DigitSystem::self_similar(4, 2, {1, 3});
    cfg.n = 2;
    auto profile = pair_overlap_profile(cfg);
    bool saw_zero = false;
    for (const auto& e : profile) {
        if (e.L == 0) {
            saw_zero = true;
            CHECK(e.overlap.outer() == 0.0);
            CHECK(e.pair_sum_upper == 0.0);
        }
    }
    CHECK(saw_zero);
}

TEST_CASE("double_sum: diagonal part is |A| copies of the same raster") {
    EnsembleConfig cfg = staircase_cfg(2);
    auto profile = pair_overlap_profile(cfg);
    DoubleSumResult ds = double_sum(cfg, profile);
    CHECK(ds.angle_count == std::int64_t(profile.size()));
    CHECK(ds.diagonal_inner ==
          doctest::Approx(double(ds.angle_count) * profile[0].overlap.inner()));
    CHECK(ds.diagonal_outer ==
          doctest::Approx(double(ds.angle_count) * profile[0].overlap.outer()));
    CHECK(ds.inner <= ds.outer);
    CHECK(ds.inner == doctest::Approx(ds.diagonal_inner + ds.offdiag_inner));
}

TEST_CASE("double_sum_direct agrees with the common-origin reduction") {
    EnsembleConfig cfg = staircase_cfg(1);  // |A| = 10 angles, direct is feasible
    auto profile = pair_overlap_profile(cfg);
    DoubleSumResult via_profile = double_sum(cfg, profile);
    DoubleSumResult direct = double_sum_direct(cfg);
    CHECK(direct.angle_count == via_profile.angle_count);
    // both brackets contain the same true double sum
    CHECK(direct.inner <= via_profile.outer * (1 + 1e-9));
    CHECK(via_profile.inner <= direct.outer * (1 + 1e-9));
}

TEST_CASE("angle_sum_bound_check: nonnegative terms, finite constant") {
    EnsembleConfig cfg = staircase_cfg(2);
    auto profile = pair_overlap_profile(cfg);
    BoundReport rep = angle_sum_bound_check(cfg, profile);
    CHECK(rep.measured_max > 0);
    CHECK(rep.bound > 0);
    CHECK(rep.constant == doctest::Approx(rep.measured_max / rep.bound));
    CHECK_FALSE(rep.exact);
}

TEST_CASE("gamma_neighborhood_measure: disk lower bound, containment, rotation invariance") {
    EnsembleConfig cfg = staircase_cfg(1);
    double delta = 1.0 / 3;
    GammaMeasure g0 = gamma_neighborhood_measure(cfg, 0.0);
    CHECK(g0.contained);
    CHECK(g0.disks == 16);  // b^{n+3}
    CHECK(g0.bracket.outer() >= M_PI * delta * delta);  // at least one whole disk
    CHECK(g0.bracket.inner() <= 9.0 * delta * (1 + 1e-9));  // inside R, leb(R) <= 9 delta

    GammaMeasure g1 = gamma_neighborhood_measure(cfg, 0.7);
    CHECK(g1.contained);
    // rigid motion: both brackets contain the same measure
    CHECK(g0.bracket.inner() <= g1.bracket.outer() * (1 + 1e-9));
    CHECK(g1.bracket.inner() <= g0.bracket.outer() * (1 + 1e-9));
}

TEST_CASE("omega policies: pure functions of (seed, theta), table lookups exact") {
    OmegaPolicy rnd;
    rnd.kind = OmegaPolicy::Kind::Random;
    rnd.radius = 0.5;
    rnd.seed = 77;
    Vec2 a = rnd.omega(0.25);
    Vec2 b = rnd.omega(0.25);
    CHECK(a.x == b.x);
    CHECK(a.y == b.y);
    CHECK(std::abs(a.x) <= 0.5);
    Vec2 c = rnd.omega(0.26);
    CHECK((c.x != a.x || c.y != a.y));

    OmegaPolicy tab;
    tab.kind = OmegaPolicy::Kind::Table;
    tab.table = {{0.1, {1, 2}}, {0.2, {3, 4}}};
    CHECK(tab.omega(0.2).x == 3);
    CHECK_THROWS_AS(tab.omega(0.15), domain_error);
}

TEST_CASE("common-origin reduction: 20 random angle pairs match the profile") {
    EnsembleConfig cfg = staircase_cfg(2);
    LevelSet lv = build_level(cfg.sys, 2);
    double delta = lv.delta();
    AngleSet A = angle_set(delta);
    auto profile = pair_overlap_profile(cfg);
    std::mt19937 rng(8);
    double cell = delta / cfg.pair_cell_div;
    int checked = 0;
    for (int trial = 0; trial < 24 && checked < 20; ++trial) {
        std::int64_t p = std::int64_t(rng() % std::uint64_t(A.count));
        std::int64_t q = std::int64_t(rng() % std::uint64_t(A.count));
        if (p == q) continue;
        ++checked;
        RotatedFamily fp = rotate_level(lv, A.angle(p), {0, 0});
        RotatedFamily fq = rotate_level(lv, A.angle(q), {0, 0});
        CountOptions opts;
        opts.collect_pairs = true;
        PairCountRecord rec = count_pairs_fast(fp, fq, cfg.caps, opts);
        std::vector<ConvexPoly> polys;
        for (const auto& [i, j] : rec.pairs) {
            ConvexPoly poly = intersection_polygon(fp.rects[std::size_t(i - 1)],
                                                   fq.rects[std::size_t(j - 1)]);
            if (poly.n >= 3) polys.push_back(poly);
        }
        RasterBracket direct = polys.empty()
                                   ? RasterBracket{cell, 0, 0, 0}
                                   : raster_union_polys(polys, cell, cfg.caps.raster_cap);
        const RasterBracket& prof = profile[std::size_t(std::abs(p - q))].overlap;
        // both brackets contain leb of the same rotated overlap; they must meet
        CHECK(direct.inner() <= prof.outer() * (1 + 1e-9) + 1e-12);
        CHECK(prof.inner() <= direct.outer() * (1 + 1e-9) + 1e-12);
    }
    CHECK(checked == 20);
}

TEST_CASE("dimension_floor: branch values and the crossover identity") {
    CHECK(dimension_floor(0.5) == doctest::Approx(1.75).epsilon(1e-15));
    double s0 = (std::sqrt(5.0) - 1.0) / 2.0;
    CHECK(2.0 - s0 * s0 == doctest::Approx(1.0 / s0).epsilon(1e-12));
    CHECK(dimension_floor(s0) == doctest::Approx(s0 + 1.0).epsilon(1e-12));
    CHECK(dimension_floor(0.999) == doctest::Approx(1.0).epsilon(2e-2));
    CHECK_THROWS_AS(dimension_floor(1.0), domain_error);
}

TEST_CASE("minkowski_chain: the Cauchy-Schwarz inequality holds on computed brackets") {
    for (int n : {1, 2}) {
        EnsembleConfig cfg = staircase_cfg(n);
        ChainReport rep = minkowski_chain(cfg);
        CHECK(rep.holds);
        CHECK(rep.contained);
        CHECK(rep.lhs_inner > 0);
        CHECK(rep.mid.inner() <= rep.mid.outer());
        CHECK(rep.implied_leb_lower <= rep.mid.outer() * (1 + 1e-9));
        CHECK(std::isfinite(rep.dim_stat));
        CHECK(std::isfinite(rep.dim_measured));
    }
}
