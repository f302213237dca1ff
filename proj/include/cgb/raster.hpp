#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cgb/geometry.hpp"

namespace cgb {

struct Disk {
    Vec2 c;
    double r = 0;
};

// Union-measure bracket from a fixed grid of square cells anchored at the
// origin. inner counts cells certifiably contained in some shape, outer
// counts cells that may touch the union, center is the midpoint-sample
// estimate. The true measure satisfies inner() <= leb <= outer().
struct RasterBracket {
    double cell = 0;
    std::int64_t inner_cells = 0;
    std::int64_t center_cells = 0;
    std::int64_t outer_cells = 0;

    double inner() const { return double(inner_cells) * cell * cell; }
    double center() const { return double(center_cells) * cell * cell; }
    double outer() const { return double(outer_cells) * cell * cell; }
    double width() const { return outer() - inner(); }
};

RasterBracket raster_union_polys(std::span<const ConvexPoly> polys, double cell,
                                 std::int64_t cell_cap);
RasterBracket raster_union_rects(std::span<const OrientedRect> rects, double cell,
                                 std::int64_t cell_cap);
RasterBracket raster_union_disks(std::span<const Disk> disks, double cell, std::int64_t cell_cap);

}  // namespace cgb
