#pragma once

#include <cstdint>
#include <vector>

#include "cgb/common.hpp"
#include "cgb/digit_system.hpp"

namespace cgb {

// Enlarged rectangle T_i of R_n, stored exactly on the (1/a^n, 1/b^n) lattice.
// Real footprint: [px, px+3]/a^n x [py, py+3]/b^n. The unenlarged core cell
// is [px+1, px+2]/a^n x [py+1, py+2]/b^n and its bottom-left corner is the
// graph anchor. Vertical rank i satisfies py = i - 2.
struct GridRect {
    std::int64_t px = 0;
    std::int64_t py = 0;
    std::int64_t i = 0;  // 1-based vertical rank
    static constexpr int width_units = 3;
    static constexpr int height_units = 3;
};

struct LatticePoint {
    std::int64_t x_num = 0;  // over a^n
    std::int64_t y_num = 0;  // over b^n
};

// Closed interval [lo, lo+1]/a^n of a Cantor generation.
struct Interval1D {
    std::int64_t lo = 0;
};

// One full generation: all b^n enlarged rectangles, in vertical order
// (rects[k] has rank i = k+1), with exact lattice denominators.
struct LevelSet {
    DigitSystem sys;
    int n = 0;
    std::int64_t a_pow = 1;  // a^n
    std::int64_t b_pow = 1;  // b^n
    std::vector<GridRect> rects;

    double delta() const { return 1.0 / double(a_pow); }
    double delta_s() const { return 1.0 / double(b_pow); }
    LatticePoint anchor(std::int64_t i) const {
        const GridRect& r = rects[std::size_t(i - 1)];
        return {r.px + 1, r.py + 1};
    }
};

// Builds the generation at level n >= 0 (level 0 is the single unit word).
LevelSet build_level(const DigitSystem& sys, int n, const Caps& caps = {});

// C_n as a sorted list of closed intervals of length 1/a^n. n >= 0.
std::vector<Interval1D> cantor_intervals(const DigitSystem& sys, int n, const Caps& caps = {});

// The b^n graph anchor points, ordered by vertical rank. n >= 1.
std::vector<LatticePoint> graph_anchors(const DigitSystem& sys, int n, const Caps& caps = {});

// The enlarged rectangle family R_n. n >= 1.
LevelSet rect_approx(const DigitSystem& sys, int n, const Caps& caps = {});

// Bottom-left corner of T_i split at level m into a coarse part on the
// (1/a^m, 1/b^m) lattice plus a fine part on the level-n lattice (the -1
// enlargement offsets land in the fine part).
struct Decomposition {
    int m = 0;
    int n = 0;
    std::int64_t coarse_x = 0;  // over a^m
    std::int64_t coarse_y = 0;  // over b^m
    std::int64_t fine_x = 0;  // over a^n
    std::int64_t fine_y = 0;  // over b^n
};

Decomposition decompose(const LevelSet& level, std::int64_t rect_index, int m);

// Rank of the level-m ancestor of the level-n rectangle with rank i.
std::int64_t parent_index(std::int64_t i, int n, int m, int b);

}  // namespace cgb
