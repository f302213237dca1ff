#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cgb/counting.hpp"

namespace cgb {

// Angle regime at scale delta. beta = min(delta^s, delta^{1-s}),
// gamma = max(...). Boundary angles take the larger regime's tag.
struct Regime {
    bool below_delta = false;
    bool small = false;
    bool large = false;       // includes very_large
    bool very_large = false;
    double beta = 0;
    double gamma = 0;

    const char* tag() const {
        if (below_delta) return "below_delta";
        if (very_large) return "very_large";
        if (large) return "large";
        return "small";
    }
};

Regime classify_angle(double delta, double s, double theta);

// Derived scales attached to (delta, theta), theta in (0, 1].
struct ScaleLadder {
    double delta = 0, theta = 0, s = 0;
    int m = 0;        // |theta| in (a^{-(m+1)}, a^{-m}]
    double r0 = 0;    // max(|theta|^{1/s}, |theta|^{1/(1-s)})
    int t = 0;        // r0 in (a^{-(t+1)}, a^{-t}]
    double r = 0;     // a^{-t}
    double rho0 = 0;  // |theta| * delta^s
    int k = 0;        // rho0 in (a^{-(k+1)}, a^{-k}]
    double rho = 0;   // a^{-k}
    bool invariants_ok = false;
};

ScaleLadder scale_ladder(int a, double delta, double s, double theta);

// Unique level l >= 0 with value in (a^{-(l+1)}, a^{-l}]; value in (0, 1].
int ladder_level(double value, int a);

// Count bounds for the small/large angle regimes (up to the absolute constant).
double bound_small(double delta, double s, double theta);
struct LargeBound {
    double first = 0;
    std::optional<double> second;  // only when theta >= delta^{1-s}
};
LargeBound bound_large(double delta, double s, double theta);

// Measured quantity vs reference bound. Exact-constant checks assert pass;
// tilde-bounds report the fitted constant only.
struct BoundReport {
    std::string name;
    std::int64_t instances = 0;
    double measured_max = 0;
    double bound = 0;
    double constant = 0;  // max(measured / bound)
    bool exact = false;
    bool pass = true;
    std::string note;

    void fold(double measured, double bound_value);
    void merge(const BoundReport& other);
};

// --- per-instance checks (shared by the verify CLI and the sweeps) ------

struct CornerOffsetCheck {
    std::int64_t pairs = 0;
    double max_y_over_ds = 0;   // |pr_y(x - y_theta)| / delta^s, bound 10
    double max_x_over_d = 0;    // |pr_x(x - y_theta)| / delta, bound 10 (theta <= delta^{1-s})
    bool x_applicable = false;
};
CornerOffsetCheck check_corner_offsets(const RotatedFamily& A, const RotatedFamily& B, const PairVec& pairs);

struct FineClassCheck {
    int m = 0;
    std::int64_t classes = 0;
    std::int64_t max_class_count = 0;            // max class size
    double bound = 0;                  // max(delta/theta^{1+s}, 1)
    double constant = 0;               // max_class_count / bound
    std::int64_t max_partner_values = 0;   // cap: 25
    std::int64_t max_xdiff_values = 0;  // cap: 51
    bool coarse_divisible = true;      // x-differences are multiples of a^{n-m} units
};
FineClassCheck check_fine_classes(const LevelSet& level, const PairVec& pairs, double theta);

struct ParentGroupCheck {
    int k = 0;
    std::int64_t parent_pairs = 0;
    std::int64_t max_child_pairs = 0;  // cap: 220a
    bool disjunction_ok = true;               // |i-i'| <= 10a or |j-j'| <= 10a
    std::int64_t disjunction_checked = 0;
};
ParentGroupCheck check_parent_groups(const LevelSet& level, const PairVec& pairs, int ladder_k);

// Ordinary least squares on (x = log(1/delta), y = log value).
struct FitResult {
    double slope = 0;
    double intercept = 0;
    double residual = 0;  // max absolute deviation
};
FitResult fit_exponent(const std::vector<std::pair<double, double>>& points);

}  // namespace cgb
