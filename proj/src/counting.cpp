#include "cgb/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cgb {

namespace {

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

inline bool boxes_near(const Aabb& a, const Aabb& b, double eps) {
    return a.xmin <= b.xmax + eps && b.xmin <= a.xmax + eps && a.ymin <= b.ymax + eps &&
           b.ymin <= a.ymax + eps;
}

void check_same_level(const RotatedFamily& A, const RotatedFamily& B) {
    if (A.n != B.n || A.rects.size() != B.rects.size())
        throw domain_error("pair counting requires families from the same level");
}

void finalize(PairCountRecord& rec, const CountOptions& opts) {
    rec.max_per_i = 0;
    for (std::int64_t v : rec.per_i) rec.max_per_i = std::max(rec.max_per_i, v);
    if (opts.collect_pairs) std::sort(rec.pairs.begin(), rec.pairs.end());
}

}  // namespace

RotatedFamily rotate_level(const LevelSet& level, double theta, Vec2 omega) {
    RotatedFamily fam;
    fam.n = level.n;
    fam.delta = level.delta();
    fam.delta_s = level.delta_s();
    fam.theta = theta;
    fam.omega = omega;
    fam.rects.resize(level.rects.size());
    fam.boxes.resize(level.rects.size());
    for (std::size_t k = 0; k < level.rects.size(); ++k) {
        fam.rects[k] = rotate_rect(level.rects[k], level.a_pow, level.b_pow, theta, omega);
        fam.rects[k].level = level.n;
        fam.boxes[k] = fam.rects[k].aabb();
    }
    return fam;
}

PairCountRecord count_pairs_bruteforce(const RotatedFamily& A, const RotatedFamily& B,
                                       const Caps& caps, const CountOptions& opts) {
    check_same_level(A, B);
    const std::int64_t count = std::int64_t(A.rects.size());
    if (count > 0 && count > caps.pair_cap / count)
        throw resource_error("pair budget exceeded: b^{2n} tests > pair_cap = " +
                             std::to_string(caps.pair_cap));
    double t0 = now_ms();
    PairCountRecord rec;
    rec.n = A.n;
    rec.delta = A.delta;
    rec.theta = B.theta;
    rec.omega = B.omega;
    rec.method = "bruteforce";
    rec.per_i.assign(std::size_t(count), 0);
    double eps = 0;
    if (count > 0) eps = kEpsGeom * std::max(A.rects[0].diag(), B.rects[0].diag());
    for (std::int64_t i = 0; i < count; ++i) {
        const Aabb& abox = A.boxes[std::size_t(i)];
        const OrientedRect& ar = A.rects[std::size_t(i)];
        for (std::int64_t j = 0; j < count; ++j) {
            if (!boxes_near(abox, B.boxes[std::size_t(j)], eps)) continue;
            if (rects_intersect(ar, B.rects[std::size_t(j)]).intersects()) {
                ++rec.per_i[std::size_t(i)];
                if (opts.collect_pairs) rec.pairs.emplace_back(i + 1, j + 1);
            }
        }
        rec.L += rec.per_i[std::size_t(i)];
    }
    finalize(rec, opts);
    rec.elapsed_ms = now_ms() - t0;
    return rec;
}

namespace {

// Sparse uniform grid over B's boxes, cell = 3 delta^s. Stored as a sorted
// (cell key, rect) incidence list; queries binary-search key runs.
struct GridIndex {
    double cell = 1;
    double ox = 0, oy = 0;
    std::int64_t nx = 1;
    std::vector<std::pair<std::int64_t, std::uint32_t>> entries;

    std::int64_t key(std::int64_t cx, std::int64_t cy) const { return cy * nx + cx; }
    std::int64_t cx_of(double x) const {
        return std::clamp(std::int64_t(std::floor((x - ox) / cell)), std::int64_t(0), nx - 1);
    }

    static GridIndex build(const RotatedFamily& B) {
        GridIndex g;
        g.cell = 3.0 * B.delta_s;
        Aabb all{0, 0, 0, 0};
        bool first = true;
        for (const Aabb& b : B.boxes) {
            if (first) {
                all = b;
                first = false;
            } else {
                all.xmin = std::min(all.xmin, b.xmin);
                all.ymin = std::min(all.ymin, b.ymin);
                all.xmax = std::max(all.xmax, b.xmax);
                all.ymax = std::max(all.ymax, b.ymax);
            }
        }
        g.ox = all.xmin;
        g.oy = all.ymin;
        g.nx = std::max<std::int64_t>(1, std::int64_t((all.xmax - all.xmin) / g.cell) + 2);
        for (std::size_t k = 0; k < B.boxes.size(); ++k) {
            const Aabb& b = B.boxes[k];
            std::int64_t x0 = g.cx_of(b.xmin), x1 = g.cx_of(b.xmax);
            std::int64_t y0 = std::int64_t(std::floor((b.ymin - g.oy) / g.cell));
            std::int64_t y1 = std::int64_t(std::floor((b.ymax - g.oy) / g.cell));
            for (std::int64_t cy = y0; cy <= y1; ++cy)
                for (std::int64_t cx = x0; cx <= x1; ++cx)
                    g.entries.emplace_back(g.key(cx, cy), std::uint32_t(k));
        }
        std::sort(g.entries.begin(), g.entries.end());
        return g;
    }
};

}  // namespace

PairCountRecord count_pairs_fast(const RotatedFamily& A, const RotatedFamily& B, const Caps& caps,
                                 const CountOptions& opts) {
    check_same_level(A, B);
    const std::int64_t count = std::int64_t(A.rects.size());
    double t0 = now_ms();
    PairCountRecord rec;
    rec.n = A.n;
    rec.delta = A.delta;
    rec.theta = B.theta;
    rec.omega = B.omega;
    rec.method = "fast";
    rec.per_i.assign(std::size_t(count), 0);
    if (count == 0) {
        rec.elapsed_ms = now_ms() - t0;
        return rec;
    }
    GridIndex grid = GridIndex::build(B);
    double eps = kEpsGeom * std::max(A.rects[0].diag(), B.rects[0].diag());

    std::int64_t tested_total = 0;
    int nthreads = 1;
#ifdef _OPENMP
    nthreads = omp_get_max_threads();
#endif
    std::vector<PairVec> tpairs(static_cast<std::size_t>(nthreads));

#pragma omp parallel reduction(+ : tested_total)
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        std::vector<std::uint32_t> stamp(std::size_t(count), 0xFFFFFFFFu);
#pragma omp for schedule(dynamic, 16)
        for (std::int64_t i = 0; i < count; ++i) {
            const Aabb& abox = A.boxes[std::size_t(i)];
            const OrientedRect& ar = A.rects[std::size_t(i)];
            std::int64_t x0 = grid.cx_of(abox.xmin - eps), x1 = grid.cx_of(abox.xmax + eps);
            std::int64_t y0 = std::int64_t(std::floor((abox.ymin - eps - grid.oy) / grid.cell));
            std::int64_t y1 = std::int64_t(std::floor((abox.ymax + eps - grid.oy) / grid.cell));
            for (std::int64_t cy = y0; cy <= y1; ++cy) {
                for (std::int64_t cx = x0; cx <= x1; ++cx) {
                    std::int64_t key = grid.key(cx, cy);
                    auto lo = std::lower_bound(
                        grid.entries.begin(), grid.entries.end(), std::make_pair(key, 0u),
                        [](const auto& a, const auto& b) { return a.first < b.first; });
                    for (; lo != grid.entries.end() && lo->first == key; ++lo) {
                        std::uint32_t j = lo->second;
                        if (stamp[j] == std::uint32_t(i)) continue;
                        stamp[j] = std::uint32_t(i);
                        if (!boxes_near(abox, B.boxes[j], eps)) continue;
                        ++tested_total;
                        if (rects_intersect(ar, B.rects[j]).intersects()) {
                            ++rec.per_i[std::size_t(i)];
                            if (opts.collect_pairs)
                                tpairs[std::size_t(tid)].emplace_back(i + 1, std::int64_t(j) + 1);
                        }
                    }
                }
            }
        }
    }
    if (tested_total > caps.pair_cap)
        throw resource_error("pair budget exceeded: " + std::to_string(tested_total) +
                             " tests > pair_cap = " + std::to_string(caps.pair_cap));
    for (std::int64_t v : rec.per_i) rec.L += v;
    if (opts.collect_pairs)
        for (auto& tp : tpairs) rec.pairs.insert(rec.pairs.end(), tp.begin(), tp.end());
    finalize(rec, opts);
    rec.elapsed_ms = now_ms() - t0;
    return rec;
}

std::vector<std::int64_t> per_rect_counts(const RotatedFamily& A, const RotatedFamily& B,
                                          const Caps& caps) {
    return count_pairs_fast(A, B, caps).per_i;
}

double pairwise_area_sum(const RotatedFamily& A, const RotatedFamily& B, const Caps& caps) {
    CountOptions opts;
    opts.collect_pairs = true;
    PairCountRecord rec = count_pairs_fast(A, B, caps, opts);
    double sum = 0;
    for (const auto& [i, j] : rec.pairs)
        sum += intersection_area(A.rects[std::size_t(i - 1)], B.rects[std::size_t(j - 1)]);
    return sum;
}

std::map<FineKey, std::int64_t> fine_class_partition(const LevelSet& level, const PairVec& pairs,
                                                  int m) {
    if (m < 0 || m > level.n) throw domain_error("fine_class_count: split level out of range");
    std::map<FineKey, std::int64_t> part;
    for (const auto& [i, j] : pairs) {
        Decomposition d = decompose(level, i, m);
        ++part[FineKey{d.fine_x, d.fine_y}];
    }
    return part;
}

std::int64_t fine_class_count(const LevelSet& level, const PairVec& pairs, int m, FineKey xi) {
    // realizability: xi must be a fine part of some rectangle of the level
    bool realizable = false;
    for (std::int64_t i = 1; i <= level.b_pow && !realizable; ++i) {
        Decomposition d = decompose(level, i, m);
        realizable = FineKey{d.fine_x, d.fine_y} == xi;
    }
    if (!realizable)
        throw domain_error("fine_class_count: fine part (" + std::to_string(xi.sx) + "," +
                           std::to_string(xi.sy) + ") not realizable at split level " +
                           std::to_string(m));
    std::int64_t count = 0;
    for (const auto& [i, j] : pairs) {
        Decomposition d = decompose(level, i, m);
        if (FineKey{d.fine_x, d.fine_y} == xi) ++count;
    }
    return count;
}

std::map<int, std::int64_t> multiscale_counts(const DigitSystem& sys, double theta, Vec2 omega,
                                              const std::vector<int>& levels, const Caps& caps) {
    std::map<int, std::int64_t> out;
    for (int t : levels) {
        LevelSet level = build_level(sys, t, caps);
        RotatedFamily A = rotate_level(level, 0.0, {0, 0});
        RotatedFamily B = rotate_level(level, theta, omega);
        out[t] = count_pairs_fast(A, B, caps).L;
    }
    return out;
}

}  // namespace cgb
