#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "cgb/lattice.hpp"

namespace cgb {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double t, Vec2 a) { return {t * a.x, t * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::sqrt(dot(a, a)); }
inline Vec2 rotate(Vec2 p, double c, double s) { return {c * p.x - s * p.y, s * p.x + c * p.y}; }

struct Aabb {
    double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
};

// Relative geometric tolerance; scaled by the larger rectangle diagonal when
// classifying marginal contacts.
inline constexpr double kEpsGeom = 1e-12;

// Image of a GridRect under tau_theta(z) = e^{i theta} z + omega. Corners are
// kept counterclockwise with corners[0] the image of the lattice bottom-left.
struct OrientedRect {
    Vec2 center;
    Vec2 ux, uy;     // unit axis directions (columns of the rotation)
    double hx = 0;   // half side along ux (= 1.5 * delta)
    double hy = 0;   // half side along uy (= 1.5 * delta^s)
    std::array<Vec2, 4> corners;
    double theta = 0;
    Vec2 omega;
    int level = 0;
    std::int64_t index = 0;

    double diag() const { return 2.0 * std::sqrt(hx * hx + hy * hy); }
    double area() const { return 4.0 * hx * hy; }
    Aabb aabb() const {
        double ex = hx * std::abs(ux.x) + hy * std::abs(uy.x);
        double ey = hx * std::abs(ux.y) + hy * std::abs(uy.y);
        return {center.x - ex, center.y - ey, center.x + ex, center.y + ey};
    }
    bool contains(Vec2 p, double slack = 0.0) const {
        Vec2 d = p - center;
        return std::abs(dot(d, ux)) <= hx + slack && std::abs(dot(d, uy)) <= hy + slack;
    }
};

OrientedRect rotate_rect(const GridRect& r, std::int64_t a_pow, std::int64_t b_pow, double theta,
                         Vec2 omega);

enum class Verdict { Disjoint, Intersecting, Marginal };

struct IntersectResult {
    Verdict verdict = Verdict::Disjoint;
    double margin = 0.0;  // signed: positive = separated, negative = overlapping
    int axis = -1;        // witness axis index (0,1 from A; 2,3 from B)

    // Marginal contacts count as intersecting everywhere downstream.
    bool intersects() const { return verdict != Verdict::Disjoint; }
};

// Separating-axis test over the 4 candidate axes, closed rectangles.
IntersectResult rects_intersect(const OrientedRect& A, const OrientedRect& B);

// Convex intersection polygon (at most 8 vertices).
struct ConvexPoly {
    std::array<Vec2, 8> pts;
    int n = 0;
    // Shoelace anchored at the first vertex: polygons sit O(1) from the
    // origin but have tiny areas, so the unanchored sum cancels badly.
    double area() const {
        if (n < 3) return 0.0;
        double s = 0;
        for (int k = 1; k + 1 < n; ++k)
            s += cross(pts[std::size_t(k)] - pts[0], pts[std::size_t(k + 1)] - pts[0]);
        return 0.5 * std::abs(s);
    }
    Aabb aabb() const;
};

ConvexPoly intersection_polygon(const OrientedRect& A, const OrientedRect& B);
double intersection_area(const OrientedRect& A, const OrientedRect& B);

// Area of the intersection of two infinite strips of width delta at angle
// theta: delta^2 / sin(theta_eff), theta_eff = min(theta, pi - theta).
// Returns +inf when theta_eff vanishes.
double strip_area_cap(double delta, double theta);

// The three projection inequalities for e^{i theta} z vs z, checked with
// slack proportional to |z|.
std::array<bool, 3> projection_inequalities(Vec2 z, double theta, double slack_rel = kEpsGeom);

}  // namespace cgb
