#pragma once

#include "gshift/group.hpp"
#include "gshift/metric.hpp"
#include "gshift/shape.hpp"

#include <array>
#include <cstdint>
#include <limits>
#include <unordered_map>
#include <vector>

namespace gshift {

// A window with dense indices 0..size-1 in canonical order. Axis-aligned
// boxes of Zd or a torus are indexed arithmetically, anything else by hash.
class Region {
public:
    static constexpr std::uint32_t npos = std::numeric_limits<std::uint32_t>::max();

    Region(GroupModel g, Shape s);

    const GroupModel& group() const { return group_; }
    const Shape& shape() const { return shape_; }
    std::size_t size() const { return shape_.size(); }
    const Element& at(std::size_t i) const { return shape_[i]; }

    std::uint32_t index_of(const Element& e) const;
    bool contains(const Element& e) const { return index_of(e) != npos; }
    // Index of at(i)·s, or npos.
    std::uint32_t neighbor(std::size_t i, const Element& s) const { return index_of(group_.mul(shape_[i], s)); }
    // neighbor(i, s) for every i.
    std::vector<std::uint32_t> shift_map(const Element& s) const;
    bool is_box() const { return box_; }
    // True when the region is the whole (finite) group.
    bool is_whole_group() const { return whole_; }

private:
    GroupModel group_;
    Shape shape_;
    bool box_ = false;
    bool whole_ = false;
    std::array<std::int64_t, 4> lo_{};
    std::array<std::int64_t, 4> ext_{};
    std::unordered_map<Element, std::uint32_t, ElementHash> map_;
};

// Axis-aligned box [lo_i, lo_i + ext_i) of a Zd or torus group.
Shape box_shape(const GroupModel& g, std::vector<std::int64_t> lo, std::vector<std::int64_t> ext);

inline constexpr int kFar = std::numeric_limits<int>::max();

// dist[i] = word distance from at(i) to the nearest element that is either
// outside the region or has source[i] set; kFar when there is none.
// Then at(i)·B_r avoids both exactly when dist[i] > r.
std::vector<int> distance_to_sources(const Region& r, const GenSet& k, const std::vector<char>& source);

// Neighbor table of a region under right multiplication by K, for repeated
// searches over the same region.
class Adjacency {
public:
    Adjacency(const Region& r, const GenSet& k);
    std::uint32_t next(std::size_t i, std::size_t j) const { return next_[i * degree_ + j]; }
    std::size_t degree() const { return degree_; }
    std::vector<int> distance_to_sources(const std::vector<char>& source) const;

private:
    std::size_t degree_;
    std::vector<std::uint32_t> next_;
    std::vector<char> border_;
};

} // namespace gshift
