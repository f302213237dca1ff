// Benchmark: serial brute-force reference vs the grid counter, single- and
// multi-threaded, plus the union rasterizer. Prints one row per
// configuration to stdout.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cgb/counting.hpp"
#include "cgb/raster.hpp"

using namespace cgb;

namespace {

double time_best_of(int reps, const std::function<void()>& fn) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        auto t0 = std::chrono::steady_clock::now();
        fn();
        best = std::min(
            best,
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                .count());
    }
    return best;
}

void set_threads(int t) {
#ifdef _OPENMP
    omp_set_num_threads(t);
#else
    (void)t;
#endif
}

}  // namespace

int main(int argc, char** argv) {
    int max_threads = 1;
#ifdef _OPENMP
    max_threads = omp_get_max_threads();
#endif
    int reps = argc > 1 ? std::atoi(argv[1]) : 3;
    Caps caps;
    caps.pair_cap = std::int64_t(1) << 34;

    std::printf("# pair counting: brute-force reference vs grid counter (theta = 0.01)\n");
    std::printf("%-12s %4s %8s %12s %14s %14s %10s\n", "system", "n", "rects", "brute_ms",
                "fast_1thr_ms", "fast_par_ms", "L");
    DigitSystem sys = DigitSystem::staircase(3, 2);
    for (int n = 6; n <= 12; ++n) {
        LevelSet lv = build_level(sys, n, caps);
        RotatedFamily A = rotate_level(lv, 0, {0, 0});
        RotatedFamily B = rotate_level(lv, 0.01, {0, 0});
        std::int64_t L = 0;
        double brute_ms = -1;
        set_threads(1);
        if (lv.b_pow <= 2048)
            brute_ms = time_best_of(reps, [&] { L = count_pairs_bruteforce(A, B, caps).L; });
        double fast1_ms = time_best_of(reps, [&] { L = count_pairs_fast(A, B, caps).L; });
        set_threads(max_threads);
        double fastp_ms = time_best_of(reps, [&] { L = count_pairs_fast(A, B, caps).L; });
        std::printf("%-12s %4d %8lld %12.3f %14.3f %14.3f %10lld\n", "a=3,b=2", n,
                    (long long)lv.b_pow, brute_ms, fast1_ms, fastp_ms, (long long)L);
    }

    std::printf("\n# union rasterization of R ^ R_theta overlap polygons (cell = delta/16)\n");
    std::printf("%4s %10s %14s %14s %12s\n", "n", "polys", "serial_ms", "parallel_ms",
                "outer_cells");
    for (int n = 4; n <= 7; ++n) {
        LevelSet lv = build_level(sys, n, caps);
        RotatedFamily A = rotate_level(lv, 0, {0, 0});
        RotatedFamily B = rotate_level(lv, 3.0 * lv.delta(), {0, 0});
        CountOptions opts;
        opts.collect_pairs = true;
        PairCountRecord rec = count_pairs_fast(A, B, caps, opts);
        std::vector<ConvexPoly> polys;
        for (const auto& [i, j] : rec.pairs) {
            ConvexPoly p =
                intersection_polygon(A.rects[std::size_t(i - 1)], B.rects[std::size_t(j - 1)]);
            if (p.n >= 3) polys.push_back(p);
        }
        double cell = lv.delta() / 16.0;
        RasterBracket out;
        set_threads(1);
        double serial_ms =
            time_best_of(reps, [&] { out = raster_union_polys(polys, cell, caps.raster_cap); });
        set_threads(max_threads);
        double par_ms =
            time_best_of(reps, [&] { out = raster_union_polys(polys, cell, caps.raster_cap); });
        std::printf("%4d %10zu %14.3f %14.3f %12lld\n", n, polys.size(), serial_ms, par_ms,
                    (long long)out.outer_cells);
    }
    return 0;
}
