#pragma once

#include <cstdint>
#include <vector>

#include "cgb/bounds.hpp"
#include "cgb/counting.hpp"
#include "cgb/raster.hpp"

namespace cgb {

// Maximal delta-separated angle family {k*delta : 0 <= k <= floor(pi/delta)}.
struct AngleSet {
    double delta = 1;
    std::int64_t count = 0;
    double angle(std::int64_t k) const { return double(k) * delta; }
};

AngleSet angle_set(double delta);

struct OmegaPolicy {
    enum class Kind { Zero, Random, Table } kind = Kind::Zero;
    double radius = 1.0;
    std::uint64_t seed = 0;
    std::vector<std::pair<double, Vec2>> table;  // explicit theta -> omega entries

    bool zero() const { return kind == Kind::Zero; }
    Vec2 omega(double theta) const;  // Table: exact match required
};

struct EnsembleConfig {
    DigitSystem sys;
    int n = 1;
    OmegaPolicy omega;
    Caps caps;
    double pair_cell_div = 16.0;  // profile raster cell = delta / pair_cell_div
    double e_cell_div = 8.0;      // E(delta) raster cell = delta / e_cell_div
    int gamma_extra_levels = 3;   // anchor cloud refinement N = n + extra
};

// One entry of the rotation-difference profile: phi = k * delta.
struct ProfileEntry {
    std::int64_t k = 0;
    double phi = 0;
    std::int64_t L = 0;           // L(delta, phi)
    double pair_sum_upper = 0;    // sum of clipped pair areas (over-counts)
    RasterBracket overlap;        // leb(R_phi ∩ R) bracket (leb(R) for k = 0)
};

// leb(R_phi ∩ R) for every difference phi in the angle family, plus the
// k = 0 entry leb(R). Requires the common-origin family (omega zero).
std::vector<ProfileEntry> pair_overlap_profile(const EnsembleConfig& cfg);

struct DoubleSumResult {
    double inner = 0, center = 0, outer = 0;  // sum over all (theta, theta') pairs
    double diagonal_inner = 0, diagonal_outer = 0;
    double offdiag_inner = 0, offdiag_outer = 0;
    // the theta'-fixed sum over theta >= delta (per-angle overlap totals)
    double fixed_inner = 0, fixed_center = 0, fixed_outer = 0;
    std::int64_t angle_count = 0;
};

DoubleSumResult double_sum(const EnsembleConfig& cfg, const std::vector<ProfileEntry>& profile);
// Direct evaluation over all angle pairs; viable only for small families.
DoubleSumResult double_sum_direct(const EnsembleConfig& cfg);

// Count-weighted angle sum: L(delta,theta) * delta^2 / theta_eff summed vs
// delta^{1-s} log(1/delta). The literal 1/theta variant rides along in note.
BoundReport angle_sum_bound_check(const EnsembleConfig& cfg, const std::vector<ProfileEntry>& profile);

struct GammaMeasure {
    RasterBracket bracket;
    bool contained = true;  // delta-disks around anchors stay inside R_theta
    std::int64_t disks = 0;
};

GammaMeasure gamma_neighborhood_measure(const EnsembleConfig& cfg, double theta);

struct ChainReport {
    double lhs_inner = 0, lhs_center = 0, lhs_outer = 0;  // sum over theta of leb(Gamma_theta(delta))
    RasterBracket mid;                                    // leb(E(delta)) for E = union R_theta
    DoubleSumResult rhs;
    bool holds = false;             // lhs_inner <= sqrt(mid_outer * rhs_outer)
    bool contained = true;
    double implied_leb_lower = 0;   // lhs^2 / rhs
    double dim_stat = 0;            // 2 - log(implied * log(1/delta)) / log(delta)
    double dim_measured = 0;        // 2 - log(mid_center) / log(delta)
};

ChainReport minkowski_chain(const EnsembleConfig& cfg);

// min(2 - s^2, 1/s); the branch crossover sits at s0 = (sqrt(5)-1)/2.
double dimension_floor(double s);

}  // namespace cgb
