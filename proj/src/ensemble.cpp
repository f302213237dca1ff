#include "cgb/ensemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cgb {

AngleSet angle_set(double delta) {
    if (!(delta > 0 && delta < M_PI)) throw domain_error("angle_set: delta must be in (0, pi)");
    AngleSet A;
    A.delta = delta;
    A.count = std::int64_t(std::floor(M_PI / delta)) + 1;
    return A;
}

Vec2 OmegaPolicy::omega(double theta) const {
    if (kind == Kind::Zero) return {0, 0};
    if (kind == Kind::Table) {
        for (const auto& [t, om] : table)
            if (t == theta) return om;
        throw domain_error("omega table has no entry for theta = " + std::to_string(theta));
    }
    std::uint64_t state = hash_combine(seed, std::bit_cast<std::uint64_t>(theta));
    return {radius * unit_symmetric(state), radius * unit_symmetric(state)};
}

std::vector<ProfileEntry> pair_overlap_profile(const EnsembleConfig& cfg) {
    if (!cfg.omega.zero())
        throw domain_error("pair_overlap_profile: requires the common-origin family (omega zero)");
    LevelSet level = build_level(cfg.sys, cfg.n, cfg.caps);
    double delta = level.delta();
    double cell = delta / cfg.pair_cell_div;
    AngleSet A = angle_set(delta);
    RotatedFamily base = rotate_level(level, 0.0, {0, 0});

    std::vector<ProfileEntry> profile(static_cast<std::size_t>(A.count));
    profile[0].k = 0;
    profile[0].phi = 0;
    profile[0].L = std::int64_t(base.rects.size());
    profile[0].overlap = raster_union_rects(base.rects, cell, cfg.caps.raster_cap);
    for (const OrientedRect& r : base.rects) profile[0].pair_sum_upper += r.area();

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 1; k < A.count; ++k) {
        double phi = A.angle(k);
        RotatedFamily rot = rotate_level(level, phi, {0, 0});
        CountOptions opts;
        opts.collect_pairs = true;
        PairCountRecord rec = count_pairs_fast(base, rot, cfg.caps, opts);
        ProfileEntry& e = profile[std::size_t(k)];
        e.k = k;
        e.phi = phi;
        e.L = rec.L;
        std::vector<ConvexPoly> polys;
        polys.reserve(rec.pairs.size());
        for (const auto& [i, j] : rec.pairs) {
            ConvexPoly p = intersection_polygon(base.rects[std::size_t(i - 1)],
                                                rot.rects[std::size_t(j - 1)]);
            if (p.n >= 3) {
                e.pair_sum_upper += p.area();
                polys.push_back(p);
            }
        }
        e.overlap = polys.empty() ? RasterBracket{cell, 0, 0, 0}
                                  : raster_union_polys(polys, cell, cfg.caps.raster_cap);
    }
    return profile;
}

DoubleSumResult double_sum(const EnsembleConfig&, const std::vector<ProfileEntry>& profile) {
    if (profile.empty()) throw domain_error("double_sum: empty profile");
    DoubleSumResult out;
    std::int64_t count = std::int64_t(profile.size());
    out.angle_count = count;
    // diagonal: |A| copies of leb(R)
    out.diagonal_inner = double(count) * profile[0].overlap.inner();
    out.diagonal_outer = double(count) * profile[0].overlap.outer();
    // ordered off-diagonal pairs with difference k*delta: 2 * (|A| - k) each
    for (std::int64_t k = 1; k < count; ++k) {
        double mult = 2.0 * double(count - k);
        out.offdiag_inner += mult * profile[std::size_t(k)].overlap.inner();
        out.offdiag_outer += mult * profile[std::size_t(k)].overlap.outer();
        out.fixed_inner += profile[std::size_t(k)].overlap.inner();
        out.fixed_center += profile[std::size_t(k)].overlap.center();
        out.fixed_outer += profile[std::size_t(k)].overlap.outer();
    }
    out.inner = out.diagonal_inner + out.offdiag_inner;
    out.outer = out.diagonal_outer + out.offdiag_outer;
    out.center = double(count) * profile[0].overlap.center();
    for (std::int64_t k = 1; k < count; ++k)
        out.center += 2.0 * double(count - k) * profile[std::size_t(k)].overlap.center();
    return out;
}

DoubleSumResult double_sum_direct(const EnsembleConfig& cfg) {
    LevelSet level = build_level(cfg.sys, cfg.n, cfg.caps);
    double delta = level.delta();
    AngleSet A = angle_set(delta);
    if (A.count > 64)
        throw resource_error("double_sum_direct: angle family too large (" +
                             std::to_string(A.count) + " angles); use the zero-omega profile");
    double cell = delta / cfg.pair_cell_div;
    std::vector<RotatedFamily> fams(static_cast<std::size_t>(A.count));
    for (std::int64_t k = 0; k < A.count; ++k)
        fams[std::size_t(k)] = rotate_level(level, A.angle(k), cfg.omega.omega(A.angle(k)));
    DoubleSumResult out;
    out.angle_count = A.count;
    for (std::int64_t p = 0; p < A.count; ++p) {
        for (std::int64_t q = 0; q < A.count; ++q) {
            CountOptions opts;
            opts.collect_pairs = true;
            PairCountRecord rec = count_pairs_fast(fams[std::size_t(p)], fams[std::size_t(q)],
                                                   cfg.caps, opts);
            std::vector<ConvexPoly> polys;
            for (const auto& [i, j] : rec.pairs) {
                ConvexPoly poly = intersection_polygon(fams[std::size_t(p)].rects[std::size_t(i - 1)],
                                                       fams[std::size_t(q)].rects[std::size_t(j - 1)]);
                if (poly.n >= 3) polys.push_back(poly);
            }
            RasterBracket b = polys.empty() ? RasterBracket{cell, 0, 0, 0}
                                            : raster_union_polys(polys, cell, cfg.caps.raster_cap);
            out.inner += b.inner();
            out.center += b.center();
            out.outer += b.outer();
            if (p == q) {
                out.diagonal_inner += b.inner();
                out.diagonal_outer += b.outer();
            } else {
                out.offdiag_inner += b.inner();
                out.offdiag_outer += b.outer();
            }
            if (p == 0 && q != 0) {
                out.fixed_inner += b.inner();
                out.fixed_center += b.center();
                out.fixed_outer += b.outer();
            }
        }
    }
    return out;
}

BoundReport angle_sum_bound_check(const EnsembleConfig& cfg, const std::vector<ProfileEntry>& profile) {
    LevelSet level = build_level(cfg.sys, cfg.n, cfg.caps);
    double delta = level.delta();
    double s = cfg.sys.s();
    double sum_eff = 0, sum_literal = 0;
    for (std::size_t k = 1; k < profile.size(); ++k) {
        double theta = profile[k].phi;
        double theta_eff = std::min(theta, M_PI - theta);
        if (theta_eff > 0) sum_eff += double(profile[k].L) * delta * delta / std::sin(theta_eff);
        sum_literal += double(profile[k].L) * delta * delta / theta;
    }
    BoundReport rep;
    rep.name = "angle_sum_bound";
    rep.exact = false;
    rep.bound = std::pow(delta, 1.0 - s) * std::log(1.0 / delta);
    rep.fold(sum_eff, rep.bound);
    rep.note = "literal 1/theta variant: " + std::to_string(sum_literal);
    return rep;
}

GammaMeasure gamma_neighborhood_measure(const EnsembleConfig& cfg, double theta) {
    LevelSet level = build_level(cfg.sys, cfg.n, cfg.caps);
    int N = cfg.n + cfg.gamma_extra_levels;
    LevelSet fine = build_level(cfg.sys, N, cfg.caps);
    double delta = level.delta();
    Vec2 om = cfg.omega.omega(theta);
    RotatedFamily coarse = rotate_level(level, theta, om);
    double c = std::cos(theta), sn = std::sin(theta);

    GammaMeasure out;
    out.disks = fine.b_pow;
    std::vector<Disk> disks(static_cast<std::size_t>(fine.b_pow));
    for (std::int64_t idx = 1; idx <= fine.b_pow; ++idx) {
        LatticePoint p = fine.anchor(idx);
        Vec2 z{double(p.x_num) / double(fine.a_pow), double(p.y_num) / double(fine.b_pow)};
        Vec2 q = rotate(z, c, sn) + om;
        disks[std::size_t(idx - 1)] = Disk{q, delta};
        const OrientedRect& host = coarse.rects[std::size_t(parent_index(idx, N, cfg.n, cfg.sys.b) - 1)];
        Vec2 d = q - host.center;
        double tol = kEpsGeom * host.diag();
        if (std::abs(dot(d, host.ux)) + delta > host.hx + tol ||
            std::abs(dot(d, host.uy)) + delta > host.hy + tol)
            out.contained = false;
    }
    out.bracket = raster_union_disks(disks, delta / cfg.e_cell_div, cfg.caps.raster_cap);
    return out;
}

ChainReport minkowski_chain(const EnsembleConfig& cfg) {
    LevelSet level = build_level(cfg.sys, cfg.n, cfg.caps);
    double delta = level.delta();
    AngleSet A = angle_set(delta);
    ChainReport rep;

    std::vector<GammaMeasure> gammas(static_cast<std::size_t>(A.count));
#pragma omp parallel for schedule(dynamic)
    for (std::int64_t k = 0; k < A.count; ++k)
        gammas[std::size_t(k)] = gamma_neighborhood_measure(cfg, A.angle(k));
    for (const GammaMeasure& g : gammas) {
        rep.lhs_inner += g.bracket.inner();
        rep.lhs_center += g.bracket.center();
        rep.lhs_outer += g.bracket.outer();
        rep.contained = rep.contained && g.contained;
    }

    std::vector<OrientedRect> all;
    all.reserve(std::size_t(A.count) * level.rects.size());
    for (std::int64_t k = 0; k < A.count; ++k) {
        double theta = A.angle(k);
        RotatedFamily fam = rotate_level(level, theta, cfg.omega.omega(theta));
        all.insert(all.end(), fam.rects.begin(), fam.rects.end());
    }
    rep.mid = raster_union_rects(all, delta / cfg.e_cell_div, cfg.caps.raster_cap);

    if (cfg.omega.zero()) {
        rep.rhs = double_sum(cfg, pair_overlap_profile(cfg));
    } else {
        rep.rhs = double_sum_direct(cfg);
    }

    rep.holds = rep.lhs_inner <= std::sqrt(rep.mid.outer()) * std::sqrt(rep.rhs.outer);
    if (rep.rhs.outer > 0) rep.implied_leb_lower = rep.lhs_inner * rep.lhs_inner / rep.rhs.outer;
    double logd = std::log(delta);
    if (rep.implied_leb_lower > 0)
        rep.dim_stat = 2.0 - std::log(rep.implied_leb_lower * std::log(1.0 / delta)) / logd;
    if (rep.mid.center() > 0) rep.dim_measured = 2.0 - std::log(rep.mid.center()) / logd;
    return rep;
}

double dimension_floor(double s) {
    if (!(s > 0 && s < 1)) throw domain_error("dimension_floor: s must be in (0, 1)");
    return std::min(2.0 - s * s, 1.0 / s);
}

}  // namespace cgb
