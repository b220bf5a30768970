#pragma once

#include "gshift/group.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace gshift {

// Finite set of group elements kept sorted in normal-form lexicographic
// order, which is the canonical iteration order everywhere downstream.
class Shape {
public:
    Shape() = default;
    static Shape from_unsorted(std::vector<Element> elems);
    // Caller guarantees strictly increasing input.
    static Shape from_sorted(std::vector<Element> elems);

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    const Element& operator[](std::size_t i) const { return elems_[i]; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }
    const std::vector<Element>& elements() const { return elems_; }

    bool contains(const Element& e) const;
    std::optional<std::size_t> index_of(const Element& e) const;
    bool includes(const Shape& sub) const;

    bool operator==(const Shape&) const = default;
    auto operator<=>(const Shape&) const = default;

private:
    std::vector<Element> elems_;
};

Shape shape_union(const Shape& a, const Shape& b);
Shape shape_intersection(const Shape& a, const Shape& b);
Shape shape_difference(const Shape& a, const Shape& b);

// g·S
Shape translate(const GroupModel& g, const Element& by, const Shape& s);
// A·B = {ab}
Shape product(const GroupModel& g, const Shape& a, const Shape& b);
Shape inverse(const GroupModel& g, const Shape& s);
// K^n with K^0 = {e}
Shape power(const GroupModel& g, const Shape& k, int n);
// int_K(E) = {g in E : gK ⊆ E}
Shape interior(const GroupModel& g, const Shape& k, const Shape& e);

} // namespace gshift
