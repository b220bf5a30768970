#include "render.hpp"

#include "gshift/region.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace gshift::cli {

std::optional<Raster> Raster::of(const GroupModel& g, const Shape& window)
{
    if (g.rank() != 2 || (g.kind() != GroupKind::Zd && g.kind() != GroupKind::Torus) || window.empty())
        return std::nullopt;
    Raster r;
    std::int64_t x1 = window[0][0], y1 = window[0][1];
    r.x0 = x1;
    r.y0 = y1;
    for (const auto& e : window) {
        r.x0 = std::min(r.x0, e[0]);
        r.y0 = std::min(r.y0, e[1]);
        x1 = std::max(x1, e[0]);
        y1 = std::max(y1, e[1]);
    }
    r.width = static_cast<int>(x1 - r.x0 + 1);
    r.height = static_cast<int>(y1 - r.y0 + 1);
    for (const auto& e : window) {
        r.col.push_back(static_cast<int>(e[0] - r.x0));
        r.row.push_back(static_cast<int>(e[1] - r.y0));
    }
    return r;
}

std::string pgm(const Raster& r, const std::vector<int>& value, int maxval)
{
    std::vector<unsigned char> px(static_cast<std::size_t>(r.width) * r.height, static_cast<unsigned char>(maxval));
    for (std::size_t i = 0; i < value.size(); ++i)
        px[static_cast<std::size_t>(r.row[i]) * r.width + r.col[i]] =
            static_cast<unsigned char>(value[i] < 0 ? maxval : value[i]);
    std::string out = "P5\n" + std::to_string(r.width) + " " + std::to_string(r.height) + "\n" +
                      std::to_string(maxval) + "\n";
    out.append(px.begin(), px.end());
    return out;
}

namespace {

void runs(std::ostringstream& o, const Raster& r, const std::vector<std::uint32_t>& cells)
{
    std::map<int, std::vector<int>> by_row;
    for (auto c : cells)
        by_row[r.row[c]].push_back(r.col[c]);
    for (auto& [y, xs] : by_row) {
        std::sort(xs.begin(), xs.end());
        xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
        for (std::size_t i = 0; i < xs.size();) {
            std::size_t j = i + 1;
            while (j < xs.size() && xs[j] == xs[j - 1] + 1)
                ++j;
            o << "<rect x=\"" << xs[i] << "\" y=\"" << y << "\" width=\"" << (xs[j - 1] - xs[i] + 1)
              << "\" height=\"1\"/>";
            i = j;
        }
    }
}

std::string header(const Raster& r, const std::string& title)
{
    std::ostringstream o;
    o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << r.width << " " << r.height << "\" width=\""
      << 3 * r.width << "\" height=\"" << 3 * r.height << "\" shape-rendering=\"crispEdges\">\n"
      << "<title>" << title << "</title>\n"
      << "<rect width=\"" << r.width << "\" height=\"" << r.height << "\" fill=\"#ffffff\"/>\n";
    return o.str();
}

} // namespace

std::string svg(const Raster& r, const std::string& title, const std::vector<Layer>& layers)
{
    std::ostringstream o;
    o << header(r, title);
    for (const auto& l : layers) {
        if (l.cells.empty())
            continue;
        o << "<g fill=\"" << l.fill << "\"";
        if (l.opacity < 1)
            o << " fill-opacity=\"" << l.opacity << "\"";
        o << ">";
        runs(o, r, l.cells);
        o << "</g>\n";
    }
    o << "</svg>\n";
    return o.str();
}

std::string tiling_svg(const Raster& r, const TilingWindow& t)
{
    const Region reg(t.group, t.window);
    std::ostringstream o;
    o << header(r, "quasi-tiling");
    std::vector<std::uint32_t> open, centers;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (t.status[i] == TileStatus::Unknown)
            open.push_back(static_cast<std::uint32_t>(i));
        if (t.status[i] == TileStatus::Center)
            centers.push_back(static_cast<std::uint32_t>(i));
    }
    o << "<g fill=\"#e0e0e0\">";
    runs(o, r, open);
    o << "</g>\n<g fill=\"#4a7fb5\" fill-opacity=\"0.3\">";
    for (auto c : centers) {
        std::vector<std::uint32_t> cells;
        for (const auto& f : t.tile) {
            const auto j = reg.neighbor(c, f);
            if (j != Region::npos)
                cells.push_back(j);
        }
        runs(o, r, cells);
    }
    o << "</g>\n<g fill=\"#1f3d66\">";
    runs(o, r, centers);
    o << "</g>\n</svg>\n";
    return o.str();
}

std::string stage_svg(const Raster& r, const StageState& s)
{
    Layer open{"#e0e0e0", 1, {}}, tiles{"#c6dbef", 1, {}}, u{"#1f3d66", 1, {}}, v{"#5b8fc9", 1, {}};
    for (std::size_t i = 0; i < s.u.size(); ++i) {
        const auto c = static_cast<std::uint32_t>(i);
        if (s.v[i] == Tri::Yes)
            v.cells.push_back(c);
        else if (s.t[i] == Tri::Yes)
            tiles.cells.push_back(c);
        else if (s.u[i] == Tri::Yes)
            u.cells.push_back(c);
        else if (s.u[i] == Tri::Maybe || s.v[i] == Tri::Maybe || s.t[i] == Tri::Maybe)
            open.cells.push_back(c);
    }
    return svg(r, "stage " + std::to_string(s.m), {open, tiles, u, v});
}

} // namespace gshift::cli
