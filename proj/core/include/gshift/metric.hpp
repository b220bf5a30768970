#pragma once

#include "gshift/group.hpp"
#include "gshift/shape.hpp"

#include <compare>
#include <cstddef>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace gshift {

// Finite symmetric generating set containing the identity.
class GenSet {
public:
    // Throws PreconditionError unless elems is symmetric and contains e.
    static GenSet make(const GroupModel& g, std::vector<Element> elems);
    // {e, ±e_i} for Zd and tori, {e, a^±1, b^±1} for Heisenberg3, all
    // elements for a finite table group.
    static GenSet standard(const GroupModel& g);

    const Shape& shape() const { return elems_; }
    std::size_t size() const { return elems_.size(); }
    bool operator==(const GenSet&) const = default;

private:
    Shape elems_;
};

// S ∪ S⁻¹ ∪ {e}
Shape symmetrize(const GroupModel& g, const Shape& s);

struct Infinite {};
inline constexpr Infinite kInfinite{};

// Word distance: a radius or the infinite marker for elements outside ⟨K⟩.
class WordDistance {
public:
    WordDistance(int r) : r_(r) {}
    WordDistance(Infinite) {}

    bool finite() const { return r_.has_value(); }
    // Throws PreconditionError on the infinite marker.
    int value() const;

    bool operator==(const WordDistance&) const = default;
    std::strong_ordering operator<=>(const WordDistance& o) const;

private:
    std::optional<int> r_;
};

std::string to_string(const WordDistance& d);

// Balls, spheres and distances for one (group, K) pair. Layers are
// memoized; all methods are safe for concurrent use.
class WordMetric {
public:
    WordMetric(GroupModel g, GenSet k);
    WordMetric(const WordMetric&) = delete;
    WordMetric& operator=(const WordMetric&) = delete;

    const GroupModel& group() const { return group_; }
    const GenSet& generators() const { return gens_; }

    // B_n(K), sorted. The reference stays valid for the metric's lifetime.
    const Shape& ball(int n) const;
    std::size_t ball_size(int n) const;
    // Elements at distance exactly n, sorted.
    const std::vector<Element>& sphere(int n) const;

    WordDistance norm(const Element& g) const;
    WordDistance dist(const Element& g, const Element& h) const;
    // min over s in S of dist(g, s); PreconditionError on empty S.
    WordDistance dist_to_set(const Element& g, const Shape& s) const;
    // max dist between two elements of S (0 for |S| <= 1).
    int diameter(const Shape& s) const;
    // Least r with S ⊆ B_r.
    int radius_of(const Shape& s) const;

private:
    void extend_locked(int n) const;
    bool outside_span(const Element& g) const;

    GroupModel group_;
    GenSet gens_;
    mutable std::mutex mu_;
    mutable std::vector<std::vector<Element>> spheres_;
    mutable std::deque<Shape> balls_;
    mutable std::unordered_map<Element, int, ElementHash> seen_;
    mutable std::size_t total_ = 0;
    mutable bool saturated_ = false;
    std::vector<std::vector<std::int64_t>> lattice_; // echelon basis of the abelianized span
};

double doubling_constant(const WordMetric& m, int n_max);
double growth_order_estimate(const WordMetric& m, int n_max);

} // namespace gshift
