#include "gshift/shape.hpp"

#include "gshift/error.hpp"
#include "gshift/runtime.hpp"

#include <algorithm>
#include <iterator>

namespace gshift {

Shape Shape::from_unsorted(std::vector<Element> elems)
{
    std::sort(elems.begin(), elems.end());
    elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    Shape s;
    s.elems_ = std::move(elems);
    return s;
}

Shape Shape::from_sorted(std::vector<Element> elems)
{
    Shape s;
    s.elems_ = std::move(elems);
    return s;
}

bool Shape::contains(const Element& e) const
{
    return std::binary_search(elems_.begin(), elems_.end(), e);
}

std::optional<std::size_t> Shape::index_of(const Element& e) const
{
    auto it = std::lower_bound(elems_.begin(), elems_.end(), e);
    if (it == elems_.end() || *it != e)
        return std::nullopt;
    return static_cast<std::size_t>(it - elems_.begin());
}

bool Shape::includes(const Shape& sub) const
{
    return std::includes(elems_.begin(), elems_.end(), sub.elems_.begin(), sub.elems_.end());
}

Shape shape_union(const Shape& a, const Shape& b)
{
    std::vector<Element> out;
    out.reserve(a.size() + b.size());
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return Shape::from_sorted(std::move(out));
}

Shape shape_intersection(const Shape& a, const Shape& b)
{
    std::vector<Element> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return Shape::from_sorted(std::move(out));
}

Shape shape_difference(const Shape& a, const Shape& b)
{
    std::vector<Element> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return Shape::from_sorted(std::move(out));
}

Shape translate(const GroupModel& g, const Element& by, const Shape& s)
{
    std::vector<Element> out;
    out.reserve(s.size());
    for (const auto& e : s)
        out.push_back(g.mul(by, e));
    return Shape::from_unsorted(std::move(out));
}

Shape product(const GroupModel& g, const Shape& a, const Shape& b)
{
    require_cells(a.size() * b.size(), "shape product");
    std::vector<Element> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a)
        for (const auto& y : b)
            out.push_back(g.mul(x, y));
    return Shape::from_unsorted(std::move(out));
}

Shape inverse(const GroupModel& g, const Shape& s)
{
    std::vector<Element> out;
    out.reserve(s.size());
    for (const auto& e : s)
        out.push_back(g.inv(e));
    return Shape::from_unsorted(std::move(out));
}

Shape power(const GroupModel& g, const Shape& k, int n)
{
    if (n < 0)
        throw PreconditionError("negative shape power");
    Shape acc = Shape::from_sorted({g.identity()});
    for (int i = 0; i < n; ++i)
        acc = product(g, acc, k);
    return acc;
}

Shape interior(const GroupModel& g, const Shape& k, const Shape& e)
{
    std::vector<Element> out;
    for (const auto& x : e) {
        bool inside = true;
        for (const auto& y : k)
            if (!e.contains(g.mul(x, y))) {
                inside = false;
                break;
            }
        if (inside)
            out.push_back(x);
    }
    return Shape::from_sorted(std::move(out));
}

} // namespace gshift
