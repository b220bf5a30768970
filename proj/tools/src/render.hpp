#pragma once

#include "gshift/hom.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gshift::cli {

// Cells of a rank-2 window laid out on a W × H raster, first coordinate
// horizontal, second coordinate downwards.
struct Raster {
    std::int64_t x0 = 0, y0 = 0;
    int width = 0, height = 0;
    std::vector<int> col, row; // per window cell

    // nullopt unless the group has rank 2 and is Zd or a torus.
    static std::optional<Raster> of(const GroupModel& g, const Shape& window);
};

// Binary PGM (P5); value -1 is written as maxval.
std::string pgm(const Raster& r, const std::vector<int>& value, int maxval);

struct Layer {
    std::string fill;
    double opacity = 1;
    // Window cell indices, canonical order.
    std::vector<std::uint32_t> cells;
};

// Layers painted in order; cells of one layer are merged into row runs.
std::string svg(const Raster& r, const std::string& title, const std::vector<Layer>& layers);

// Tiles as translucent shapes with their centers marked.
std::string tiling_svg(const Raster& r, const TilingWindow& t);

// Stage m: V_m medium, the rest of T_m light, the rest of U_m dark, open cells grey.
std::string stage_svg(const Raster& r, const StageState& s);

} // namespace gshift::cli
