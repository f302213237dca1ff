#include "cgb/geometry.hpp"

#include <algorithm>

namespace cgb {

OrientedRect rotate_rect(const GridRect& r, std::int64_t a_pow, std::int64_t b_pow, double theta,
                         Vec2 omega) {
    double w = double(GridRect::width_units) / double(a_pow);
    double h = double(GridRect::height_units) / double(b_pow);
    if (w <= 0 || h <= 0) throw domain_error("rotate_rect: degenerate rectangle");
    // Lattice corner coordinates are rounded once, from the exact numerators.
    double x0 = double(r.px) / double(a_pow);
    double y0 = double(r.py) / double(b_pow);
    double x1 = double(r.px + GridRect::width_units) / double(a_pow);
    double y1 = double(r.py + GridRect::height_units) / double(b_pow);
    double c = std::cos(theta), s = std::sin(theta);
    OrientedRect o;
    o.theta = theta;
    o.omega = omega;
    o.level = 0;
    o.index = r.i;
    o.hx = 0.5 * w;
    o.hy = 0.5 * h;
    o.ux = {c, s};
    o.uy = {-s, c};
    o.corners[0] = rotate({x0, y0}, c, s) + omega;
    o.corners[1] = rotate({x1, y0}, c, s) + omega;
    o.corners[2] = rotate({x1, y1}, c, s) + omega;
    o.corners[3] = rotate({x0, y1}, c, s) + omega;
    o.center = rotate({0.5 * (x0 + x1), 0.5 * (y0 + y1)}, c, s) + omega;
    return o;
}

IntersectResult rects_intersect(const OrientedRect& A, const OrientedRect& B) {
    if (A.hx <= 0 || A.hy <= 0 || B.hx <= 0 || B.hy <= 0)
        throw domain_error("rects_intersect: degenerate rectangle");
    Vec2 d = B.center - A.center;
    const Vec2 axes[4] = {A.ux, A.uy, B.ux, B.uy};
    double eps = kEpsGeom * std::max(A.diag(), B.diag());
    IntersectResult res;
    res.margin = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < 4; ++k) {
        Vec2 ax = axes[k];
        double ra = A.hx * std::abs(dot(ax, A.ux)) + A.hy * std::abs(dot(ax, A.uy));
        double rb = B.hx * std::abs(dot(ax, B.ux)) + B.hy * std::abs(dot(ax, B.uy));
        double sep = std::abs(dot(d, ax)) - (ra + rb);  // positive = separated on this axis
        if (sep > res.margin) {
            res.margin = sep;
            res.axis = k;
        }
        if (sep > eps) {
            res.verdict = Verdict::Disjoint;
            res.margin = sep;
            res.axis = k;
            return res;
        }
    }
    res.verdict = std::abs(res.margin) < eps ? Verdict::Marginal : Verdict::Intersecting;
    return res;
}

Aabb ConvexPoly::aabb() const {
    Aabb b{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity(),
           -std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (int k = 0; k < n; ++k) {
        b.xmin = std::min(b.xmin, pts[std::size_t(k)].x);
        b.ymin = std::min(b.ymin, pts[std::size_t(k)].y);
        b.xmax = std::max(b.xmax, pts[std::size_t(k)].x);
        b.ymax = std::max(b.ymax, pts[std::size_t(k)].y);
    }
    return b;
}

namespace {

// Sutherland-Hodgman clip of a convex polygon by the half-plane
// dot(p, nrm) <= d, in place via a scratch buffer.
void clip_halfplane(ConvexPoly& poly, Vec2 nrm, double d) {
    std::array<Vec2, 8> out;
    int m = 0;
    for (int k = 0; k < poly.n; ++k) {
        Vec2 p = poly.pts[std::size_t(k)];
        Vec2 q = poly.pts[std::size_t((k + 1) % poly.n)];
        double fp = dot(p, nrm) - d;
        double fq = dot(q, nrm) - d;
        if (fp <= 0) {
            if (m < 8) out[std::size_t(m++)] = p;
        }
        if ((fp < 0 && fq > 0) || (fp > 0 && fq < 0)) {
            double t = fp / (fp - fq);
            if (m < 8) out[std::size_t(m++)] = p + t * (q - p);
        }
    }
    poly.pts = out;
    poly.n = m;
}

}  // namespace

ConvexPoly intersection_polygon(const OrientedRect& A, const OrientedRect& B) {
    ConvexPoly poly;
    poly.n = 4;
    for (int k = 0; k < 4; ++k) poly.pts[std::size_t(k)] = A.corners[std::size_t(k)];
    // B as 4 half-planes around its center.
    clip_halfplane(poly, B.ux, dot(B.center, B.ux) + B.hx);
    clip_halfplane(poly, {-B.ux.x, -B.ux.y}, -dot(B.center, B.ux) + B.hx);
    clip_halfplane(poly, B.uy, dot(B.center, B.uy) + B.hy);
    clip_halfplane(poly, {-B.uy.x, -B.uy.y}, -dot(B.center, B.uy) + B.hy);
    return poly;
}

double intersection_area(const OrientedRect& A, const OrientedRect& B) {
    ConvexPoly poly = intersection_polygon(A, B);
    return poly.n >= 3 ? poly.area() : 0.0;
}

double strip_area_cap(double delta, double theta) {
    double theta_eff = std::min(theta, M_PI - theta);
    if (theta_eff <= 0) return std::numeric_limits<double>::infinity();
    double s = std::sin(theta_eff);
    if (s <= 0) return std::numeric_limits<double>::infinity();
    return delta * delta / s;
}

std::array<bool, 3> projection_inequalities(Vec2 z, double theta, double slack_rel) {
    double zn = norm(z);
    double slack = slack_rel * zn;
    double c = std::cos(theta), s = std::sin(theta);
    Vec2 rz = rotate(z, c, s);
    double dx = std::abs(rz.x - z.x);
    double dy = std::abs(rz.y - z.y);
    double tz = std::abs(theta) * zn;
    bool i1 = dx <= tz + slack;
    bool i2 = dy <= tz + slack;
    bool i3 = std::abs(dx - std::abs(theta * z.y)) <= 2.0 * theta * theta * zn + slack;
    return {i1, i2, i3};
}

}  // namespace cgb
