#include "cgb/raster.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cgb {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Span1D {
    double lo = kInf;
    double hi = -kInf;
    bool empty() const { return !(lo <= hi); }
};

// Continuous [u,v] -> integer cell intervals. Conversions err outward for
// touched cells and inward for contained cells, so float rounding can only
// widen the bracket, never flip its direction.
struct CellInterval {
    std::int64_t lo = 0, hi = -1;  // inclusive
    bool empty() const { return hi < lo; }
};

CellInterval cells_touching(Span1D s, double c) {
    if (s.empty()) return {};
    CellInterval out;
    out.lo = std::int64_t(std::floor(s.lo / c)) - 1;
    while ((double(out.lo) + 1.0) * c < s.lo) ++out.lo;
    out.hi = std::int64_t(std::floor(s.hi / c)) + 1;
    while (double(out.hi) * c > s.hi) --out.hi;
    return out;
}

// The inner spans are valid LEFT-EDGE ranges: cell k qualifies iff k*c lands
// inside the span. Rounds inward.
CellInterval cells_leftedge_in(Span1D s, double c) {
    if (s.empty()) return {};
    CellInterval out;
    out.lo = std::int64_t(std::ceil(s.lo / c)) + 1;
    while (double(out.lo - 1) * c >= s.lo) --out.lo;
    out.hi = std::int64_t(std::floor(s.hi / c)) - 1;
    while ((double(out.hi) + 1.0) * c <= s.hi) ++out.hi;
    return out;
}

CellInterval cells_center_in(Span1D s, double c) {
    if (s.empty()) return {};
    CellInterval out;
    out.lo = std::int64_t(std::floor(s.lo / c - 0.5));
    while ((double(out.lo) + 0.5) * c < s.lo) ++out.lo;
    out.hi = std::int64_t(std::ceil(s.hi / c - 0.5));
    while ((double(out.hi) + 0.5) * c > s.hi) --out.hi;
    return out;
}

// Per-shape slab queries. Rows are y in [j*c, (j+1)*c].
struct PolySlab {
    const ConvexPoly* poly;

    Span1D outer(double y0, double y1) const {
        Span1D s;
        const auto& P = *poly;
        for (int k = 0; k < P.n; ++k) {
            Vec2 p = P.pts[std::size_t(k)];
            Vec2 q = P.pts[std::size_t((k + 1) % P.n)];
            if (p.y >= y0 && p.y <= y1) {
                s.lo = std::min(s.lo, p.x);
                s.hi = std::max(s.hi, p.x);
            }
            // edge crossings with both slab boundaries
            for (double yb : {y0, y1}) {
                if ((p.y - yb) * (q.y - yb) < 0) {
                    double t = (yb - p.y) / (q.y - p.y);
                    double x = p.x + t * (q.x - p.x);
                    s.lo = std::min(s.lo, x);
                    s.hi = std::max(s.hi, x);
                }
            }
        }
        return s;
    }

    Span1D center(double ym) const {
        Span1D s;
        const auto& P = *poly;
        for (int k = 0; k < P.n; ++k) {
            Vec2 p = P.pts[std::size_t(k)];
            Vec2 q = P.pts[std::size_t((k + 1) % P.n)];
            if (p.y == ym) {
                s.lo = std::min(s.lo, p.x);
                s.hi = std::max(s.hi, p.x);
            }
            if ((p.y - ym) * (q.y - ym) < 0) {
                double t = (ym - p.y) / (q.y - p.y);
                double x = p.x + t * (q.x - p.x);
                s.lo = std::min(s.lo, x);
                s.hi = std::max(s.hi, x);
            }
        }
        return s;
    }

    // x-range such that the whole cell [x, x+c] x [y0, y1] lies in the polygon.
    Span1D inner(double y0, double y1, double c) const {
        Span1D s{-kInf, kInf};
        const auto& P = *poly;
        for (int k = 0; k < P.n; ++k) {
            Vec2 p = P.pts[std::size_t(k)];
            Vec2 q = P.pts[std::size_t((k + 1) % P.n)];
            Vec2 nrm{q.y - p.y, p.x - q.x};  // outward for CCW
            double d = dot(p, nrm);
            double rhs = d - std::max(0.0, nrm.x) * c - std::max(nrm.y * y0, nrm.y * y1);
            if (nrm.x > 0) {
                s.hi = std::min(s.hi, rhs / nrm.x);
            } else if (nrm.x < 0) {
                s.lo = std::max(s.lo, rhs / nrm.x);
            } else if (rhs < 0) {
                return {};
            }
        }
        if (s.lo > s.hi) return {};
        return s;
    }

    Span1D yspan() const {
        Span1D s;
        for (int k = 0; k < poly->n; ++k) {
            s.lo = std::min(s.lo, poly->pts[std::size_t(k)].y);
            s.hi = std::max(s.hi, poly->pts[std::size_t(k)].y);
        }
        return s;
    }
};

struct DiskSlab {
    const Disk* disk;

    Span1D chord(double dy) const {
        const Disk& D = *disk;
        if (dy > D.r) return {};
        double half = std::sqrt(std::max(0.0, D.r * D.r - dy * dy));
        return {D.c.x - half, D.c.x + half};
    }
    Span1D outer(double y0, double y1) const {
        double dy = std::max({0.0, y0 - disk->c.y, disk->c.y - y1});
        return chord(dy);
    }
    Span1D center(double ym) const { return chord(std::abs(ym - disk->c.y)); }
    Span1D inner(double y0, double y1, double c) const {
        double ystar = std::max(std::abs(y0 - disk->c.y), std::abs(y1 - disk->c.y));
        Span1D s = chord(ystar);
        if (s.empty()) return {};
        s.hi -= c;
        if (s.lo > s.hi) return {};
        return s;
    }
    Span1D yspan() const { return {disk->c.y - disk->r, disk->c.y + disk->r}; }
};

std::int64_t merge_count(std::vector<CellInterval>& iv) {
    if (iv.empty()) return 0;
    std::sort(iv.begin(), iv.end(),
              [](const CellInterval& a, const CellInterval& b) { return a.lo < b.lo; });
    std::int64_t total = 0;
    std::int64_t cur_lo = iv[0].lo, cur_hi = iv[0].hi;
    for (std::size_t k = 1; k < iv.size(); ++k) {
        if (iv[k].lo > cur_hi + 1) {
            total += cur_hi - cur_lo + 1;
            cur_lo = iv[k].lo;
            cur_hi = iv[k].hi;
        } else {
            cur_hi = std::max(cur_hi, iv[k].hi);
        }
    }
    total += cur_hi - cur_lo + 1;
    return total;
}

template <class Slab>
RasterBracket raster_union_impl(std::span<const Slab> shapes, double cell, std::int64_t cell_cap) {
    if (cell <= 0) throw domain_error("raster: cell size must be positive");
    RasterBracket out;
    out.cell = cell;
    if (shapes.empty()) return out;

    // Row span per shape (touched rows, conservative outward).
    std::vector<CellInterval> rowspan(shapes.size());
    std::int64_t row_min = std::numeric_limits<std::int64_t>::max();
    std::int64_t row_max = std::numeric_limits<std::int64_t>::min();
    std::int64_t incidences = 0;
    for (std::size_t k = 0; k < shapes.size(); ++k) {
        Span1D ys = shapes[k].yspan();
        rowspan[k] = cells_touching(ys, cell);
        if (rowspan[k].empty()) continue;
        row_min = std::min(row_min, rowspan[k].lo);
        row_max = std::max(row_max, rowspan[k].hi);
        incidences += rowspan[k].hi - rowspan[k].lo + 1;
    }
    if (incidences == 0) return out;
    if (incidences > std::max(cell_cap * 4, std::int64_t(1) << 28))
        throw resource_error("raster cap exceeded: row incidences " + std::to_string(incidences));
    std::int64_t nrows = row_max - row_min + 1;

    // CSR: shapes bucketed by row.
    std::vector<std::int64_t> head(std::size_t(nrows) + 1, 0);
    for (std::size_t k = 0; k < shapes.size(); ++k) {
        if (rowspan[k].empty()) continue;
        for (std::int64_t r = rowspan[k].lo; r <= rowspan[k].hi; ++r)
            ++head[std::size_t(r - row_min) + 1];
    }
    for (std::size_t r = 1; r < head.size(); ++r) head[r] += head[r - 1];
    std::vector<std::uint32_t> items(static_cast<std::size_t>(incidences));
    {
        std::vector<std::int64_t> cursor(head.begin(), head.end() - 1);
        for (std::size_t k = 0; k < shapes.size(); ++k) {
            if (rowspan[k].empty()) continue;
            for (std::int64_t r = rowspan[k].lo; r <= rowspan[k].hi; ++r)
                items[std::size_t(cursor[std::size_t(r - row_min)]++)] = std::uint32_t(k);
        }
    }

    std::int64_t inner_total = 0, center_total = 0, outer_total = 0;
#pragma omp parallel reduction(+ : inner_total, center_total, outer_total)
    {
        std::vector<CellInterval> iv_outer, iv_center, iv_inner;
#pragma omp for schedule(dynamic, 64)
        for (std::int64_t r = 0; r < nrows; ++r) {
            std::int64_t lo = head[std::size_t(r)], hi = head[std::size_t(r) + 1];
            if (lo == hi) continue;
            double y0 = double(r + row_min) * cell;
            double y1 = y0 + cell;
            double ym = y0 + 0.5 * cell;
            iv_outer.clear();
            iv_center.clear();
            iv_inner.clear();
            for (std::int64_t t = lo; t < hi; ++t) {
                const Slab& sh = shapes[items[std::size_t(t)]];
                CellInterval o = cells_touching(sh.outer(y0, y1), cell);
                if (!o.empty()) iv_outer.push_back(o);
                CellInterval c = cells_center_in(sh.center(ym), cell);
                if (!c.empty()) iv_center.push_back(c);
                CellInterval i = cells_leftedge_in(sh.inner(y0, y1, cell), cell);
                if (!i.empty()) iv_inner.push_back(i);
            }
            outer_total += merge_count(iv_outer);
            center_total += merge_count(iv_center);
            inner_total += merge_count(iv_inner);
        }
    }
    if (outer_total > cell_cap)
        throw resource_error("raster cap exceeded: " + std::to_string(outer_total) +
                             " touched cells > raster_cap = " + std::to_string(cell_cap));
    out.inner_cells = inner_total;
    out.center_cells = center_total;
    out.outer_cells = outer_total;
    return out;
}

}  // namespace

RasterBracket raster_union_polys(std::span<const ConvexPoly> polys, double cell,
                                 std::int64_t cell_cap) {
    std::vector<PolySlab> slabs;
    slabs.reserve(polys.size());
    for (const ConvexPoly& p : polys)
        if (p.n >= 3) slabs.push_back(PolySlab{&p});
    return raster_union_impl(std::span<const PolySlab>(slabs), cell, cell_cap);
}

RasterBracket raster_union_rects(std::span<const OrientedRect> rects, double cell,
                                 std::int64_t cell_cap) {
    std::vector<ConvexPoly> polys(rects.size());
    for (std::size_t k = 0; k < rects.size(); ++k) {
        polys[k].n = 4;
        polys[k].pts.fill({});
        for (int j = 0; j < 4; ++j) polys[k].pts[std::size_t(j)] = rects[k].corners[std::size_t(j)];
    }
    return raster_union_polys(polys, cell, cell_cap);
}

RasterBracket raster_union_disks(std::span<const Disk> disks, double cell, std::int64_t cell_cap) {
    std::vector<DiskSlab> slabs;
    slabs.reserve(disks.size());
    for (const Disk& d : disks)
        if (d.r > 0) slabs.push_back(DiskSlab{&d});
    return raster_union_impl(std::span<const DiskSlab>(slabs), cell, cell_cap);
}

}  // namespace cgb
