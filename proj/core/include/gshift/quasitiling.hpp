#pragma once

#include "gshift/metric.hpp"
#include "gshift/pattern.hpp"
#include "gshift/region.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gshift {

// A finite window of one point x of the sampled system.
struct PointWindow {
    GroupModel group;
    Pattern x;
    std::string rule;

    // x(i,j) = ⌊(i+1)α+jβ⌋ − ⌊iα+jβ⌋ on a window of Z².
    static PointWindow rotation2d(const GroupModel& g, const Shape& window, double alpha, double beta);
    // Independent uniform symbols from a seeded generator.
    static PointWindow random(const GroupModel& g, const Shape& window, std::size_t alphabet, std::uint64_t seed);
    static PointWindow explicit_pattern(const GroupModel& g, Pattern x);

    const Shape& window() const { return x.shape(); }
};

Symbol rotation2d_symbol(double alpha, double beta, std::int64_t i, std::int64_t j);

// u_i = x(source·S_i) read back at e, with S_i = FF⁻¹·B_radius.
struct CoverEntry {
    int radius = 0;
    Element source;
};

class SeparationCover {
public:
    const GroupModel& group() const { return window_->group; }
    const WordMetric& metric() const { return *metric_; }
    // FF⁻¹
    const Shape& separation() const { return sep_; }
    std::size_t size() const { return entries_.size(); }
    const CoverEntry& entry(std::size_t i) const { return entries_[i]; }
    const Shape& entry_shape(std::size_t i) const;
    Pattern pattern(std::size_t i) const;
    int max_radius() const { return static_cast<int>(shapes_.size()) - 1; }
    // Positions of the source window whose type could not be decided.
    std::size_t undetermined() const { return undetermined_; }

    // Entry occurring at each cell of w, -1 when the type is undecided or
    // matches no entry. Entries are pairwise exclusive by minimality of radius.
    std::vector<int> locate(const PointWindow& w) const;

private:
    friend SeparationCover build_cover(const PointWindow&, const WordMetric&, const Shape&, int);
    std::shared_ptr<const PointWindow> window_;
    const WordMetric* metric_ = nullptr;
    Shape sep_;
    std::vector<Shape> shapes_; // S for radius 0..max
    std::vector<CoverEntry> entries_;
    std::size_t undetermined_ = 0;
};

// Minimal separation radius per position, one entry per distinct local type
// in canonical scan order. The metric must outlive the cover.
// AperiodicityWitnessNotFound when a position stays unseparated at r_sep
// (or no position can be typed at all).
SeparationCover build_cover(const PointWindow& x, const WordMetric& metric, const Shape& f, int r_sep);
// 3·diameter(F)
int default_separation_radius(const WordMetric& metric, const Shape& f);

enum class TileStatus : std::uint8_t { Center, Never, Unknown };

struct TilingWindow {
    GroupModel group;
    Shape window;
    Shape tile;
    Shape separation;
    std::vector<TileStatus> status;
    std::vector<int> stage;
    std::vector<int> border_distance;
    // Every Unknown cell has border distance <= safety_radius.
    int safety_radius = 0;
    // Radius of R_n from the block-code recursion; an upper bound.
    std::int64_t conservative_radius = 0;

    bool safe(std::size_t i) const { return border_distance[i] > safety_radius; }
    std::size_t safe_count() const;
    Shape safe_region() const;
    Shape centers() const;
};

// Stage-by-stage greedy in three-valued logic: cells outside the window or
// of undecided type may be centers at any stage.
TilingWindow quasi_tile(const PointWindow& x, const SeparationCover& cover, const Shape& f);

struct VerifyResult {
    bool ok = true;
    std::size_t checked = 0;
    std::optional<Element> witness;
};

// Safe centers c1 ≠ c2 with c1F ∩ c2F ≠ ∅.
VerifyResult check_disjoint(const TilingWindow& t, const Shape& f);
// Safe g with no center in gC⁻¹; cells whose gC⁻¹ is not all safe are
// skipped unless a center is found there.
VerifyResult check_covering(const TilingWindow& t, const Shape& c);
bool verify_disjoint(const TilingWindow& t, const Shape& f);
bool verify_covering(const TilingWindow& t, const Shape& c);

// deg_n(g) = |{c : dist(g, cK^{2n₀}) <= n}| = |{c : ρ(g,c) <= 2n₀+n}|.
// SafeRegionError unless g·B_{2n₀+n} lies in the safe region.
int degree(const TilingWindow& t, const WordMetric& k, int n0, const Element& g, int n);
// Per window cell; -1 where g·B_{2n₀+n} leaves the safe region.
std::vector<int> degree_map(const TilingWindow& t, const WordMetric& k, int n0, int n);
// Cells with a defined degree <= m.
Shape e_set(const TilingWindow& t, const WordMetric& k, int n0, int m, int n);

} // namespace gshift
