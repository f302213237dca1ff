#include "cgb/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace cgb {

Regime classify_angle(double delta, double s, double theta) {
    if (!(delta > 0 && delta < 1)) throw domain_error("classify_angle: delta must be in (0,1)");
    if (theta < 0 || theta > M_PI + 1e-15)
        throw domain_error("classify_angle: theta must be in [0, pi]");
    Regime r;
    r.beta = std::min(std::pow(delta, s), std::pow(delta, 1.0 - s));
    r.gamma = std::max(std::pow(delta, s), std::pow(delta, 1.0 - s));
    double t = std::abs(theta);
    if (t < delta) {
        r.below_delta = true;
        return r;
    }
    if (t < r.beta) {
        r.small = true;
        return r;
    }
    r.large = true;
    r.very_large = t >= r.gamma;
    return r;
}

int ladder_level(double value, int a) {
    if (!(value > 0 && value <= 1)) throw domain_error("ladder_level: value must be in (0, 1]");
    auto inv_pow = [a](int l) { return 1.0 / double(checked_ipow(a, l, "ladder_level")); };
    int l = std::max(0, int(std::floor(-std::log(value) / std::log(double(a)))) - 1);
    while (value <= inv_pow(l + 1)) ++l;
    while (l > 0 && value > inv_pow(l)) --l;
    return l;
}

ScaleLadder scale_ladder(int a, double delta, double s, double theta) {
    if (!(theta > 0 && theta <= 1))
        throw domain_error("scale_ladder: theta must be in (0, 1]");
    ScaleLadder lad;
    lad.delta = delta;
    lad.theta = theta;
    lad.s = s;
    lad.m = ladder_level(theta, a);
    lad.r0 = std::max(std::pow(theta, 1.0 / s), std::pow(theta, 1.0 / (1.0 - s)));
    lad.t = ladder_level(lad.r0, a);
    lad.r = 1.0 / double(checked_ipow(a, lad.t, "scale_ladder"));
    lad.rho0 = theta * std::pow(delta, s);
    lad.k = ladder_level(std::min(1.0, lad.rho0), a);
    lad.rho = 1.0 / double(checked_ipow(a, lad.k, "scale_ladder"));
    // ladder invariants: theta <= min(r^s, r^{1-s}); and when theta >= delta^{1-s},
    // delta <= rho0 <= r0 (hence delta <= rho <= r).
    double tol = 1e-12;
    lad.invariants_ok =
        theta <= std::min(std::pow(lad.r, s), std::pow(lad.r, 1.0 - s)) * (1.0 + tol);
    if (theta >= std::pow(delta, 1.0 - s) * (1.0 - tol))
        lad.invariants_ok = lad.invariants_ok && delta <= lad.rho0 * (1.0 + tol) &&
                            lad.rho0 <= lad.r0 * (1.0 + tol) && delta <= lad.rho * (1.0 + tol) &&
                            lad.rho <= lad.r * (1.0 + tol);
    return lad;
}

double bound_small(double delta, double s, double theta) {
    Regime reg = classify_angle(delta, s, theta);
    if (!reg.small) throw domain_error("bound_small: theta is not in the small regime");
    return std::pow(delta, -s) * std::max(delta / theta, std::pow(theta, s));
}

LargeBound bound_large(double delta, double s, double theta) {
    Regime reg = classify_angle(delta, s, std::min(theta, M_PI));
    if (!reg.large) throw domain_error("bound_large: theta is not in the large regime");
    if (theta > 1) throw domain_error("bound_large: requires theta <= 1");
    double r0 = std::max(std::pow(theta, 1.0 / s), std::pow(theta, 1.0 / (1.0 - s)));
    LargeBound out;
    double branch = std::max(r0 / theta, std::pow(theta, s));
    out.first = std::pow(delta, -s) * branch;
    if (theta >= std::pow(delta, 1.0 - s))
        out.second = std::pow(theta, -s) * std::pow(delta, -s * s) * branch;
    return out;
}

void BoundReport::fold(double measured, double bound_value) {
    ++instances;
    if (measured > measured_max) {
        measured_max = measured;
        bound = bound_value;
    }
    if (bound_value > 0) constant = std::max(constant, measured / bound_value);
    if (exact && measured > bound_value) pass = false;
}

void BoundReport::merge(const BoundReport& other) {
    instances += other.instances;
    if (other.measured_max > measured_max) {
        measured_max = other.measured_max;
        bound = other.bound;
    }
    constant = std::max(constant, other.constant);
    pass = pass && other.pass;
    if (note.empty()) note = other.note;
}

CornerOffsetCheck check_corner_offsets(const RotatedFamily& A, const RotatedFamily& B, const PairVec& pairs) {
    CornerOffsetCheck out;
    out.pairs = std::int64_t(pairs.size());
    double s = std::log(1.0 / A.delta_s) / std::log(1.0 / A.delta);
    out.x_applicable = std::abs(B.theta) <= std::pow(A.delta, 1.0 - s);
    for (const auto& [i, j] : pairs) {
        Vec2 x = A.rects[std::size_t(i - 1)].corners[0];
        Vec2 yt = B.rects[std::size_t(j - 1)].corners[0];
        out.max_y_over_ds = std::max(out.max_y_over_ds, std::abs(x.y - yt.y) / A.delta_s);
        if (out.x_applicable)
            out.max_x_over_d = std::max(out.max_x_over_d, std::abs(x.x - yt.x) / A.delta);
    }
    return out;
}

FineClassCheck check_fine_classes(const LevelSet& level, const PairVec& pairs, double theta) {
    FineClassCheck out;
    double delta = level.delta();
    double s = level.sys.s();
    out.m = ladder_level(std::abs(theta), level.sys.a);
    out.m = std::min(out.m, level.n);
    out.bound = std::max(delta / std::pow(std::abs(theta), 1.0 + s), 1.0);

    std::int64_t ad = checked_ipow(level.sys.a, level.n - out.m, "check_fine_classes");
    std::int64_t bd = checked_ipow(level.sys.b, level.n - out.m, "check_fine_classes");
    auto fine_of = [&](std::int64_t idx) -> FineKey {
        const GridRect& r = level.rects[std::size_t(idx - 1)];
        return FineKey{(r.px + 1) % ad - 1, (r.py + 1) % bd - 1};
    };

    // xi -> (class size, partner fine parts, pr_x(x - y) corner differences)
    struct ClassData {
        std::int64_t count = 0;
        std::set<FineKey> partner_fine;
        std::map<FineKey, std::set<std::int64_t>> xdiff_by_z;
    };
    std::map<FineKey, ClassData> classes;
    for (const auto& [i, j] : pairs) {
        ClassData& cd = classes[fine_of(i)];
        ++cd.count;
        FineKey z = fine_of(j);
        cd.partner_fine.insert(z);
        const GridRect& ri = level.rects[std::size_t(i - 1)];
        const GridRect& rj = level.rects[std::size_t(j - 1)];
        cd.xdiff_by_z[z].insert(ri.px - rj.px);
    }
    out.classes = std::int64_t(classes.size());
    for (const auto& [xi, cd] : classes) {
        out.max_class_count = std::max(out.max_class_count, cd.count);
        out.max_partner_values =
            std::max(out.max_partner_values, std::int64_t(cd.partner_fine.size()));
        for (const auto& [z, diffs] : cd.xdiff_by_z) {
            // distinct values of pr_x(x - x' - y + y') over pairs-of-pairs
            // sharing (xi, z); as differences of the collected values.
            std::set<std::int64_t> dd;
            for (std::int64_t u : diffs)
                for (std::int64_t v : diffs) {
                    dd.insert(u - v);
                    if ((u - v) % ad != 0) out.coarse_divisible = false;
                }
            out.max_xdiff_values = std::max(out.max_xdiff_values, std::int64_t(dd.size()));
        }
    }
    if (out.bound > 0) out.constant = double(out.max_class_count) / out.bound;
    return out;
}

ParentGroupCheck check_parent_groups(const LevelSet& level, const PairVec& pairs, int ladder_k) {
    ParentGroupCheck out;
    out.k = ladder_k;
    int a = level.sys.a;
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::pair<std::int64_t, std::int64_t>>>
        groups;
    for (const auto& [i, j] : pairs) {
        std::int64_t pi = parent_index(i, level.n, ladder_k, level.sys.b);
        std::int64_t pj = parent_index(j, level.n, ladder_k, level.sys.b);
        groups[{pi, pj}].emplace_back(i, j);
    }
    out.parent_pairs = std::int64_t(groups.size());
    for (const auto& [pp, members] : groups) {
        out.max_child_pairs = std::max(out.max_child_pairs, std::int64_t(members.size()));
        for (std::size_t u = 0; u < members.size(); ++u)
            for (std::size_t v = u + 1; v < members.size(); ++v) {
                ++out.disjunction_checked;
                if (std::abs(members[u].first - members[v].first) > 10 * a &&
                    std::abs(members[u].second - members[v].second) > 10 * a)
                    out.disjunction_ok = false;
            }
    }
    return out;
}

FitResult fit_exponent(const std::vector<std::pair<double, double>>& points) {
    if (points.size() < 3) throw domain_error("fit_exponent: need >= 3 points");
    double n = double(points.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : points) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    FitResult fit;
    double den = n * sxx - sx * sx;
    if (den == 0) throw domain_error("fit_exponent: degenerate abscissae");
    fit.slope = (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    for (const auto& [x, y] : points)
        fit.residual = std::max(fit.residual, std::abs(y - fit.intercept - fit.slope * x));
    return fit;
}

}  // namespace cgb
