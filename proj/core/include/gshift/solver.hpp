#pragma once

#include "gshift/region.hpp"
#include "gshift/sft.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace gshift {

// Windows gK ⊆ domain of a spec, as index lists over a Region.
class ConstraintSystem {
public:
    ConstraintSystem(const SftSpec& spec, const Region& domain);

    const SftSpec& spec() const { return *spec_; }
    const Region& domain() const { return *domain_; }
    std::size_t window_count() const { return anchors_.size(); }
    std::size_t k() const { return k_; }
    const std::uint32_t* window(std::size_t w) const { return cells_.data() + w * k_; }
    std::uint32_t anchor(std::size_t w) const { return anchors_[w]; }
    const std::vector<std::uint32_t>& windows_of(std::size_t cell) const { return by_cell_[cell]; }

    // -1 marks an unassigned cell; windows with any unassigned cell pass.
    bool window_ok(std::size_t w, const std::vector<int>& values) const;
    bool cell_ok(std::size_t cell, const std::vector<int>& values) const;
    // Some assignment of the window's unassigned cells avoids the forbidden set.
    bool window_completable(std::size_t w, const std::vector<int>& values) const;
    bool cell_completable(std::size_t cell, const std::vector<int>& values) const;
    // Index of the first fully assigned forbidden window, or -1.
    long first_violation(const std::vector<int>& values) const;

private:
    const SftSpec* spec_;
    const Region* domain_;
    std::size_t k_;
    std::vector<std::uint32_t> anchors_;
    std::vector<std::uint32_t> cells_;
    std::vector<std::vector<std::uint32_t>> by_cell_;
};

// Depth-first search over free cells in a fixed order with per-cell candidate
// lists. Deterministic: the first solution is the least one in candidate order.
class Backtracker {
public:
    Backtracker(const ConstraintSystem& cs, std::vector<std::uint32_t> order,
                std::vector<std::vector<Symbol>> candidates);

    // Returns true and completes `values` with the first solution. With
    // backtrack = false the first dead end ends the search.
    bool solve(std::vector<int>& values, bool backtrack = true);
    // Visits every solution; the callback returns false to stop early.
    void enumerate(std::vector<int>& values, const std::function<bool(const std::vector<int>&)>& visit);
    std::uint64_t nodes() const { return nodes_; }
    // Also reject a value when some window through the cell can no longer be
    // completed (per-window forward checking).
    void set_forward_check(bool on) { forward_ = on; }

private:
    template <class Visit>
    bool run(std::vector<int>& values, bool backtrack, Visit&& visit);

    const ConstraintSystem& cs_;
    std::vector<std::uint32_t> order_;
    std::vector<std::vector<Symbol>> cand_;
    std::uint64_t nodes_ = 0;
    bool forward_ = false;
};

// Ascending symbols 0..k-1.
std::vector<Symbol> all_symbols(std::size_t k);
// `first` followed by the remaining symbols ascending.
std::vector<Symbol> symbols_preferring(std::size_t k, std::initializer_list<Symbol> first);

} // namespace gshift
