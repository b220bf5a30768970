#include "gshift/region.hpp"

#include "gshift/error.hpp"
#include "gshift/runtime.hpp"

#include <algorithm>

namespace gshift {

Region::Region(GroupModel g, Shape s) : group_(std::move(g)), shape_(std::move(s))
{
    require_cells(shape_.size(), "region");
    if (shape_.size() >= npos)
        throw ResourceError("region too large to index");
    const auto ord = group_.order();
    whole_ = ord && *ord == shape_.size();
    const bool lattice = group_.kind() == GroupKind::Zd || group_.kind() == GroupKind::Torus;
    if (lattice && !shape_.empty() && group_.rank() > 0) {
        std::array<std::int64_t, 4> hi{};
        for (int i = 0; i < group_.rank(); ++i) {
            lo_[i] = shape_[0].c[i];
            hi[i] = shape_[0].c[i];
        }
        for (const auto& e : shape_)
            for (int i = 0; i < group_.rank(); ++i) {
                lo_[i] = std::min(lo_[i], e.c[i]);
                hi[i] = std::max(hi[i], e.c[i]);
            }
        std::size_t vol = 1;
        for (int i = 0; i < group_.rank(); ++i) {
            ext_[i] = hi[i] - lo_[i] + 1;
            vol *= static_cast<std::size_t>(ext_[i]);
        }
        box_ = vol == shape_.size();
    }
    if (!box_) {
        map_.reserve(shape_.size());
        for (std::size_t i = 0; i < shape_.size(); ++i)
            map_.emplace(shape_[i], static_cast<std::uint32_t>(i));
    }
}

std::uint32_t Region::index_of(const Element& e) const
{
    if (box_) {
        std::int64_t idx = 0;
        for (int i = 0; i < group_.rank(); ++i) {
            const std::int64_t d = e.c[i] - lo_[i];
            if (d < 0 || d >= ext_[i])
                return npos;
            idx = idx * ext_[i] + d;
        }
        return static_cast<std::uint32_t>(idx);
    }
    auto it = map_.find(e);
    return it == map_.end() ? npos : it->second;
}

std::vector<std::uint32_t> Region::shift_map(const Element& s) const
{
    std::vector<std::uint32_t> out(size());
    if (!box_) {
        for (std::size_t i = 0; i < size(); ++i)
            out[i] = neighbor(i, s);
        return out;
    }
    // boxes live in abelian groups, so the shift acts axis by axis
    const int d = group_.rank();
    const bool wrap = group_.kind() == GroupKind::Torus;
    std::array<std::vector<std::int64_t>, 4> axis;
    for (int a = 0; a < d; ++a) {
        axis[a].resize(static_cast<std::size_t>(ext_[a]));
        for (std::int64_t c = 0; c < ext_[a]; ++c) {
            std::int64_t v = lo_[a] + c + s.c[a];
            if (wrap) {
                const std::int64_t m = group_.moduli()[a];
                v = ((v % m) + m) % m;
            }
            const std::int64_t off = v - lo_[a];
            axis[a][c] = off < 0 || off >= ext_[a] ? -1 : off;
        }
    }
    std::array<std::int64_t, 4> c{};
    for (std::size_t i = 0; i < size(); ++i) {
        std::int64_t idx = 0;
        for (int a = 0; a < d && idx >= 0; ++a) {
            const std::int64_t off = axis[a][c[a]];
            idx = off < 0 ? -1 : idx * ext_[a] + off;
        }
        out[i] = idx < 0 ? npos : static_cast<std::uint32_t>(idx);
        for (int a = d - 1; a >= 0; --a) {
            if (++c[a] < ext_[a])
                break;
            c[a] = 0;
        }
    }
    return out;
}

Shape box_shape(const GroupModel& g, std::vector<std::int64_t> lo, std::vector<std::int64_t> ext)
{
    if (g.kind() != GroupKind::Zd && g.kind() != GroupKind::Torus)
        throw PreconditionError("box windows need a Zd or torus group");
    const int d = g.rank();
    if (static_cast<int>(lo.size()) != d || static_cast<int>(ext.size()) != d)
        throw PreconditionError("box dimension does not match group rank");
    std::size_t vol = 1;
    for (int i = 0; i < d; ++i) {
        if (ext[i] < 1)
            throw PreconditionError("box extents must be positive");
        if (g.kind() == GroupKind::Torus && ext[i] > g.moduli()[i])
            throw PreconditionError("box wider than the torus");
        vol *= static_cast<std::size_t>(ext[i]);
    }
    require_cells(vol, "box window");
    std::vector<Element> v;
    v.reserve(vol);
    std::array<std::int64_t, 4> off{};
    for (std::size_t k = 0; k < vol; ++k) {
        std::vector<std::int64_t> c(d);
        for (int i = 0; i < d; ++i)
            c[i] = lo[i] + off[i];
        v.push_back(g.element(c));
        for (int i = d - 1; i >= 0; --i) {
            if (++off[i] < ext[i])
                break;
            off[i] = 0;
        }
    }
    return Shape::from_unsorted(std::move(v));
}

Adjacency::Adjacency(const Region& r, const GenSet& k) : degree_(k.size()), next_(r.size() * k.size())
{
    border_.assign(r.size(), 0);
    for (std::size_t i = 0; i < r.size(); ++i)
        for (std::size_t j = 0; j < degree_; ++j) {
            next_[i * degree_ + j] = r.neighbor(i, k.shape()[j]);
            if (next_[i * degree_ + j] == Region::npos)
                border_[i] = 1;
        }
}

std::vector<int> Adjacency::distance_to_sources(const std::vector<char>& source) const
{
    const std::size_t n = border_.size();
    std::vector<int> dist(n, kFar);
    std::vector<std::uint32_t> frontier, next;
    for (std::size_t i = 0; i < n; ++i)
        if (source[i]) {
            dist[i] = 0;
            frontier.push_back(static_cast<std::uint32_t>(i));
        }
    // the outside acts as one more source at level 0
    for (std::size_t i = 0; i < n; ++i)
        if (border_[i] && dist[i] > 1) {
            dist[i] = 1;
            next.push_back(static_cast<std::uint32_t>(i));
        }
    for (int level = 0; !frontier.empty() || !next.empty(); ++level) {
        for (auto i : frontier)
            for (std::size_t j = 0; j < degree_; ++j) {
                const auto t = next_[i * degree_ + j];
                if (t != Region::npos && dist[t] > level + 1) {
                    dist[t] = level + 1;
                    next.push_back(t);
                }
            }
        frontier.swap(next);
        next.clear();
    }
    return dist;
}

std::vector<int> distance_to_sources(const Region& r, const GenSet& k, const std::vector<char>& source)
{
    return Adjacency(r, k).distance_to_sources(source);
}

} // namespace gshift
