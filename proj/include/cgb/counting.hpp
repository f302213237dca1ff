#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cgb/geometry.hpp"
#include "cgb/lattice.hpp"

namespace cgb {

// One whole generation rotated by tau_theta, with cached bounding boxes.
struct RotatedFamily {
    int n = 0;
    double delta = 1, delta_s = 1;
    double theta = 0;
    Vec2 omega;
    std::vector<OrientedRect> rects;  // [k] is the image of T_{k+1}
    std::vector<Aabb> boxes;
};

RotatedFamily rotate_level(const LevelSet& level, double theta, Vec2 omega);

using PairVec = std::vector<std::pair<std::int64_t, std::int64_t>>;  // (i, j), 1-based

struct PairCountRecord {
    int n = 0;
    double delta = 1;
    double theta = 0;
    Vec2 omega;
    std::int64_t L = 0;
    std::int64_t max_per_i = 0;
    std::vector<std::int64_t> per_i;  // histogram i -> #partners
    PairVec pairs;                    // sorted by (i, j); filled when requested
    double elapsed_ms = 0;
    const char* method = "";
};

struct CountOptions {
    bool collect_pairs = false;
};

// Exact count over all b^{2n} ordered pairs; the serial reference oracle.
PairCountRecord count_pairs_bruteforce(const RotatedFamily& A, const RotatedFamily& B,
                                       const Caps& caps = {}, const CountOptions& opts = {});

// Grid-bucketed counter (cell = 3 delta^s), OpenMP-parallel over i. Returns
// the identical count and pair set as the brute-force oracle.
PairCountRecord count_pairs_fast(const RotatedFamily& A, const RotatedFamily& B,
                                 const Caps& caps = {}, const CountOptions& opts = {});

// Histogram i -> #{j : T_i meets T_{j,theta}}; the partner-cap statistic is
// the max entry.
std::vector<std::int64_t> per_rect_counts(const RotatedFamily& A, const RotatedFamily& B,
                                          const Caps& caps = {});

// Sum of clipped intersection areas over all intersecting pairs.
double pairwise_area_sum(const RotatedFamily& A, const RotatedFamily& B, const Caps& caps = {});

// Fine-part class key: fine numerators at split level m (over a^n, b^n).
struct FineKey {
    std::int64_t sx = 0, sy = 0;
    bool operator<(const FineKey& o) const { return sx != o.sx ? sx < o.sx : sy < o.sy; }
    bool operator==(const FineKey& o) const { return sx == o.sx && sy == o.sy; }
};

// Partition of an intersecting pair set by the fine part of the first
// rectangle's corner. Summing the counts recovers L exactly.
std::map<FineKey, std::int64_t> fine_class_partition(const LevelSet& level, const PairVec& pairs,
                                                  int m);

// Number of intersecting pairs whose first rectangle has fine part xi.
// Throws domain_error when xi is not realizable at split level m.
std::int64_t fine_class_count(const LevelSet& level, const PairVec& pairs, int m, FineKey xi);

// L(1/a^t, theta) on the coarser approximations for each requested level.
std::map<int, std::int64_t> multiscale_counts(const DigitSystem& sys, double theta, Vec2 omega,
                                              const std::vector<int>& levels,
                                              const Caps& caps = {});

}  // namespace cgb
