#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cgb/bounds.hpp"
#include "cgb/counting.hpp"
#include "cgb/ensemble.hpp"

namespace cgb {

// Grid of verification instances: systems x levels x angles x translations.
struct SweepGrid {
    std::vector<DigitSystem> systems;
    int n_min = 1;
    int n_max = 6;
    std::vector<double> thetas;
    int omega_random_count = 0;  // translations beyond omega = 0
    double omega_radius = 1.0;
    std::uint64_t omega_seed = 1;
    bool with_oracle = true;
    std::int64_t oracle_limit = 1024;  // brute-force cross-check when b^n <= limit
    bool corrupt_counter = false;      // fault-injection hook: perturbs the fast counter
};

std::vector<double> uniform_theta_grid(int points);  // k * pi/(points-1)

// Aggregated check reports over a sweep. Exact-constant reports drive the
// verify exit code; tilde-bound reports carry fitted constants only.
struct SweepReports {
    std::int64_t instances = 0;
    std::int64_t oracle_instances = 0;
    std::int64_t oracle_mismatches = 0;
    std::int64_t theta_above_one = 0;  // ladder checks skipped there
    bool ladder_ok = true;
    double elapsed_sec = 0;

    BoundReport partner_cap;         // per-rectangle partner count <= 10
    BoundReport trivial_cap;         // L <= 10 b^n
    BoundReport oracle;              // fast vs brute mismatches = 0
    BoundReport area_rect;           // area / (9 delta^{1+s}) <= 1
    BoundReport area_strip;          // area / (9 strip cap) <= 1
    BoundReport area_literal;        // area * theta_eff / delta^2 (reported)
    BoundReport corner_y;            // |pr_y(x - y_theta)| / delta^s <= 10
    BoundReport corner_x;            // |pr_x(x - y_theta)| / delta <= 10
    BoundReport fine_values;         // distinct fine partner values per class <= 25
    BoundReport xdiff_values;        // distinct coarse x-differences <= 51
    BoundReport fine_class_bound;    // max class size / max(delta/theta^{1+s}, 1)
    BoundReport child_pairs;         // child pairs per parent pair <= 220a
    BoundReport index_disjunction;   // index-window disjunction violations = 0
    BoundReport small_angle;         // L / small-regime bound
    BoundReport large_angle_first;   // L / large-regime first bound
    BoundReport large_angle_second;  // L / large-regime second bound
    BoundReport rescaled;            // L(delta) * (theta delta^s)^s / (r^s L(r))

    std::vector<std::string> failures;

    std::vector<const BoundReport*> all() const;
    bool all_exact_pass() const;
};

SweepReports run_verification_sweep(const SweepGrid& grid, const Caps& caps);

}  // namespace cgb
