#include "cgb/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cgb {

std::vector<double> uniform_theta_grid(int points) {
    if (points < 1) throw config_error("theta grid needs at least one point");
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = 0.0;
        return out;
    }
    for (int k = 0; k < points; ++k) out[std::size_t(k)] = M_PI * double(k) / double(points - 1);
    return out;
}

namespace {

struct Instance {
    std::uint32_t sys = 0;
    std::uint16_t n = 0;
    std::uint32_t theta_idx = 0;
    std::uint16_t omega_idx = 0;  // 0 = zero translation
};

Vec2 instance_omega(const SweepGrid& grid, const Instance& in) {
    if (in.omega_idx == 0) return {0, 0};
    std::uint64_t state = hash_combine(
        grid.omega_seed, (std::uint64_t(in.sys) << 48) ^ (std::uint64_t(in.n) << 40) ^
                             (std::uint64_t(in.theta_idx) << 8) ^ std::uint64_t(in.omega_idx));
    return {grid.omega_radius * unit_symmetric(state), grid.omega_radius * unit_symmetric(state)};
}

void init_reports(SweepReports& r) {
    auto ex = [](BoundReport& b, const char* name) {
        b.name = name;
        b.exact = true;
    };
    auto fit = [](BoundReport& b, const char* name) {
        b.name = name;
        b.exact = false;
    };
    ex(r.partner_cap, "partner_cap");
    ex(r.trivial_cap, "trivial_count_cap");
    ex(r.oracle, "oracle_equivalence");
    ex(r.area_rect, "overlap_area_vs_rect_cap");
    ex(r.area_strip, "overlap_area_vs_strip_cap");
    fit(r.area_literal, "overlap_area_inverse_angle");
    ex(r.corner_y, "corner_offset_y");
    ex(r.corner_x, "corner_offset_x");
    ex(r.fine_values, "fine_partner_value_cap");
    ex(r.xdiff_values, "coarse_xdiff_value_cap");
    fit(r.fine_class_bound, "fine_class_count_bound");
    ex(r.child_pairs, "child_pair_cap");
    ex(r.index_disjunction, "index_window_disjunction");
    fit(r.small_angle, "small_angle_count_bound");
    fit(r.large_angle_first, "large_angle_count_bound");
    fit(r.large_angle_second, "large_angle_refined_bound");
    fit(r.rescaled, "rescaled_count_bound");
}

void merge_reports(SweepReports& dst, const SweepReports& src) {
    dst.instances += src.instances;
    dst.oracle_instances += src.oracle_instances;
    dst.oracle_mismatches += src.oracle_mismatches;
    dst.theta_above_one += src.theta_above_one;
    dst.ladder_ok = dst.ladder_ok && src.ladder_ok;
    dst.partner_cap.merge(src.partner_cap);
    dst.trivial_cap.merge(src.trivial_cap);
    dst.oracle.merge(src.oracle);
    dst.area_rect.merge(src.area_rect);
    dst.area_strip.merge(src.area_strip);
    dst.area_literal.merge(src.area_literal);
    dst.corner_y.merge(src.corner_y);
    dst.corner_x.merge(src.corner_x);
    dst.fine_values.merge(src.fine_values);
    dst.xdiff_values.merge(src.xdiff_values);
    dst.fine_class_bound.merge(src.fine_class_bound);
    dst.child_pairs.merge(src.child_pairs);
    dst.index_disjunction.merge(src.index_disjunction);
    dst.small_angle.merge(src.small_angle);
    dst.large_angle_first.merge(src.large_angle_first);
    dst.large_angle_second.merge(src.large_angle_second);
    dst.rescaled.merge(src.rescaled);
    dst.failures.insert(dst.failures.end(), src.failures.begin(), src.failures.end());
}

std::string instance_name(const DigitSystem& sys, int n, double theta, Vec2 omega) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "a=%d b=%d %s seed=%llu n=%d theta=%.9g omega=(%.6g,%.6g)",
                  sys.a, sys.b, sys.mode_name().c_str(), (unsigned long long)sys.seed, n, theta,
                  omega.x, omega.y);
    return buf;
}

}  // namespace

std::vector<const BoundReport*> SweepReports::all() const {
    return {&partner_cap, &trivial_cap, &oracle, &area_rect, &area_strip, &area_literal,
            &corner_y, &corner_x, &fine_values, &xdiff_values, &fine_class_bound,
            &child_pairs, &index_disjunction, &small_angle, &large_angle_first,
            &large_angle_second, &rescaled};
}

bool SweepReports::all_exact_pass() const {
    for (const BoundReport* b : all())
        if (b->exact && !b->pass) return false;
    return ladder_ok && oracle_mismatches == 0;
}

SweepReports run_verification_sweep(const SweepGrid& grid, const Caps& caps) {
    auto t0 = std::chrono::steady_clock::now();
    const double slack = 1.0 + 1e-9;

    // Precompute every level and its unrotated family, indexed [system][n].
    std::size_t nsys = grid.systems.size();
    int n_top = grid.n_max;
    std::vector<std::vector<LevelSet>> levels(nsys);
    std::vector<std::vector<RotatedFamily>> bases(nsys);
    for (std::size_t sy = 0; sy < nsys; ++sy) {
        levels[sy].reserve(std::size_t(n_top) + 1);
        for (int n = 0; n <= n_top; ++n) {
            levels[sy].push_back(build_level(grid.systems[sy], n, caps));
            bases[sy].push_back(rotate_level(levels[sy].back(), 0.0, {0, 0}));
        }
    }

    std::vector<Instance> cells;
    for (std::size_t sy = 0; sy < nsys; ++sy)
        for (int n = std::max(1, grid.n_min); n <= grid.n_max; ++n)
            for (std::size_t th = 0; th < grid.thetas.size(); ++th)
                for (int om = 0; om <= grid.omega_random_count; ++om)
                    cells.push_back(Instance{std::uint32_t(sy), std::uint16_t(n),
                                             std::uint32_t(th), std::uint16_t(om)});

    int nthreads = 1;
#ifdef _OPENMP
    nthreads = omp_get_max_threads();
#endif
    std::vector<SweepReports> partial(static_cast<std::size_t>(nthreads));
    for (auto& p : partial) init_reports(p);
    std::atomic<bool> out_of_time{false};

#pragma omp parallel
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        SweepReports& rep = partial[std::size_t(tid)];
#pragma omp for schedule(dynamic)
        for (std::int64_t ci = 0; ci < std::int64_t(cells.size()); ++ci) {
            if (out_of_time.load(std::memory_order_relaxed)) continue;
            if (caps.wall_clock_sec > 0 &&
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() >
                    caps.wall_clock_sec) {
                out_of_time.store(true, std::memory_order_relaxed);
                continue;
            }
            const Instance& in = cells[std::size_t(ci)];
            const DigitSystem& sys = grid.systems[in.sys];
            const LevelSet& level = levels[in.sys][in.n];
            const RotatedFamily& baseA = bases[in.sys][in.n];
            double theta = grid.thetas[in.theta_idx];
            Vec2 omega = instance_omega(grid, in);
            double delta = level.delta();
            double delta_s = level.delta_s();
            double s = sys.s();
            RotatedFamily B = rotate_level(level, theta, omega);
            CountOptions opts;
            opts.collect_pairs = true;
            PairCountRecord rec = count_pairs_fast(baseA, B, caps, opts);
            if (grid.corrupt_counter) {
                rec.L += 1;
                rec.max_per_i += 20;
            }
            ++rep.instances;

            rep.partner_cap.fold(double(rec.max_per_i), 10.0);
            rep.trivial_cap.fold(double(rec.L), 10.0 * double(level.b_pow));
            if (rec.max_per_i > 10)
                rep.failures.push_back("partner cap: " + std::to_string(rec.max_per_i) +
                                       " partners at " + instance_name(sys, in.n, theta, omega));

            if (grid.with_oracle && level.b_pow <= grid.oracle_limit) {
                PairCountRecord brute = count_pairs_bruteforce(baseA, B, caps);
                ++rep.oracle_instances;
                bool mismatch = brute.L != rec.L;
                rep.oracle.fold(mismatch ? 1.0 : 0.0, 0.0);
                if (mismatch) {
                    ++rep.oracle_mismatches;
                    rep.failures.push_back("oracle mismatch: fast=" + std::to_string(rec.L) +
                                           " brute=" + std::to_string(brute.L) + " at " +
                                           instance_name(sys, in.n, theta, omega));
                }
            }

            // Clipped overlaps against the exact rectangle and strip caps.
            double theta_eff = std::min(theta, M_PI - theta);
            double rect_cap = 9.0 * delta * delta_s;
            double strip9 = theta_eff > 0 ? 9.0 * strip_area_cap(delta, theta) : 0.0;
            double max_rect_ratio = 0, max_strip_ratio = 0, max_literal = 0;
            for (const auto& [i, j] : rec.pairs) {
                double area = intersection_area(baseA.rects[std::size_t(i - 1)],
                                                B.rects[std::size_t(j - 1)]);
                max_rect_ratio = std::max(max_rect_ratio, area / rect_cap);
                if (theta_eff > 0) {
                    max_strip_ratio = std::max(max_strip_ratio, area / strip9);
                    max_literal = std::max(max_literal, area * theta_eff / (delta * delta));
                }
            }
            if (!rec.pairs.empty()) {
                rep.area_rect.fold(max_rect_ratio, slack);
                if (theta_eff > 0) {
                    rep.area_strip.fold(max_strip_ratio, slack);
                    rep.area_literal.fold(max_literal, 9.0);
                }
                if (max_rect_ratio > slack || (theta_eff > 0 && max_strip_ratio > slack))
                    rep.failures.push_back("overlap caps: area ratio rect=" +
                                           std::to_string(max_rect_ratio) + " strip=" +
                                           std::to_string(max_strip_ratio) + " at " +
                                           instance_name(sys, in.n, theta, omega));

                CornerOffsetCheck s2 = check_corner_offsets(baseA, B, rec.pairs);
                rep.corner_y.fold(s2.max_y_over_ds, 10.0);
                if (s2.x_applicable) rep.corner_x.fold(s2.max_x_over_d, 10.0);
                if (s2.max_y_over_ds > 10.0 || (s2.x_applicable && s2.max_x_over_d > 10.0))
                    rep.failures.push_back("corner offsets exceeded at " +
                                           instance_name(sys, in.n, theta, omega));
            }

            Regime reg = classify_angle(delta, s, theta);

            if (reg.small) {
                FineClassCheck mc = check_fine_classes(level, rec.pairs, theta);
                rep.fine_values.fold(double(mc.max_partner_values), 25.0);
                rep.xdiff_values.fold(double(mc.max_xdiff_values), 51.0);
                if (!mc.coarse_divisible) rep.xdiff_values.pass = false;
                rep.fine_class_bound.fold(double(mc.max_class_count), mc.bound);
                rep.small_angle.fold(double(rec.L), bound_small(delta, s, theta));
                if (mc.max_partner_values > 25 || mc.max_xdiff_values > 51 || !mc.coarse_divisible)
                    rep.failures.push_back(
                        "fine-class facts: values=" + std::to_string(mc.max_partner_values) + " xdiff=" +
                        std::to_string(mc.max_xdiff_values) + (mc.coarse_divisible ? "" : " nondiv") +
                        " at " + instance_name(sys, in.n, theta, omega));
            } else if (reg.large) {
                if (theta > 1.0) {
                    ++rep.theta_above_one;
                } else {
                    LargeBound lb = bound_large(delta, s, theta);
                    rep.large_angle_first.fold(double(rec.L), lb.first);
                    if (lb.second) rep.large_angle_second.fold(double(rec.L), *lb.second);

                    ScaleLadder lad = scale_ladder(sys.a, delta, s, theta);
                    rep.ladder_ok = rep.ladder_ok && lad.invariants_ok;
                    if (!lad.invariants_ok)
                        rep.failures.push_back("ladder invariants failed at " +
                                               instance_name(sys, in.n, theta, omega));
                    if (theta >= std::pow(delta, 1.0 - s)) {
                        ParentGroupCheck lc = check_parent_groups(level, rec.pairs, std::min(lad.k, int(in.n)));
                        rep.child_pairs.fold(double(lc.max_child_pairs), 220.0 * double(sys.a));
                        rep.index_disjunction.fold(lc.disjunction_ok ? 0.0 : 1.0, 0.0);
                        if (lc.max_child_pairs > 220 * sys.a || !lc.disjunction_ok)
                            rep.failures.push_back(
                                "parent groups: children=" + std::to_string(lc.max_child_pairs) +
                                (lc.disjunction_ok ? "" : " disjunction-violated") + " at " +
                                instance_name(sys, in.n, theta, omega));
                        // rescaling bound: recount on the coarser approximation at level t.
                        int t = std::min(lad.t, int(in.n));
                        const RotatedFamily& baseR = bases[in.sys][std::size_t(t)];
                        RotatedFamily rotR = rotate_level(levels[in.sys][std::size_t(t)], theta, omega);
                        std::int64_t Lr = count_pairs_fast(baseR, rotR, caps).L;
                        if (Lr > 0) {
                            double r = 1.0 / double(levels[in.sys][std::size_t(t)].a_pow);
                            double rescaled_bound = std::pow(r, s) / std::pow(theta * delta_s, s) *
                                                    double(Lr);
                            rep.rescaled.fold(double(rec.L), rescaled_bound);
                        }
                    }
                }
            }
        }
    }

    if (out_of_time.load())
        throw resource_error("wall-clock cap exceeded: sweep budget " +
                             std::to_string(caps.wall_clock_sec) + " s");
    SweepReports total;
    init_reports(total);
    for (const auto& p : partial) merge_reports(total, p);
    std::sort(total.failures.begin(), total.failures.end());
    total.elapsed_sec =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return total;
}

}  // namespace cgb
