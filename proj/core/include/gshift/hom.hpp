#pragma once

#include "gshift/quasitiling.hpp"
#include "gshift/sft.hpp"

#include <cstdint>
#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

namespace gshift {

enum class HomMode { Theorem, Demo };

struct HomParams {
    HomMode mode = HomMode::Demo;
    int n0 = 6;
    // Demo mode: unset means the largest observed deg_{n₀} on the window.
    std::optional<int> m0;
    double c0 = 0;

    // m₀ = ⌈C₀²⌉, n₀ = 3m₀ with C₀ = doubling_constant(K, horizon).
    static HomParams theorem(const WordMetric& k, int horizon = 64);
    static HomParams demo(int n0, std::optional<int> m0 = std::nullopt);
};

// Canonical tuple extension Φ(A, F, v): lazily filled, memoized under
// translation. Safe for concurrent use; results never depend on the order
// of lookups.
class ExtensionTable {
public:
    // Tuples must satisfy A, F ⊆ B_bound; bound < 0 disables the check.
    // Any nonempty A is accepted; its canonical translate contains e.
    ExtensionTable(const SftSpec& y, const WordMetric& k, int bound);
    ExtensionTable(const ExtensionTable&) = delete;
    ExtensionTable& operator=(const ExtensionTable&) = delete;

    const SftSpec& spec() const { return *y_; }
    int bound() const { return bound_; }
    std::size_t size() const;
    std::size_t hits() const;

    // Pattern on A with Φ ∪ v locally allowed on (A ∪ F)·K_Y, hence
    // globally allowed on A ∪ F by the FEP.
    Pattern extend(const Shape& a, const Shape& f, const Pattern& v);

private:
    struct Canon {
        Shape a, f;
        std::vector<Symbol> v;
        bool operator==(const Canon&) const = default;
    };
    Pattern compute(const Canon& c) const;

    const SftSpec* y_;
    const WordMetric* k_;
    int bound_;
    mutable std::mutex mu_;
    std::unordered_map<std::uint64_t, std::vector<std::pair<Canon, Pattern>>> memo_;
    std::size_t entries_ = 0;
    std::size_t hits_ = 0;
};

// Translate by a⁻¹ minimizing (a⁻¹A, a⁻¹F, a⁻¹·v) lexicographically over a ∈ A.
Element canonical_anchor(const GroupModel& g, const Shape& a, const Shape& f, const Pattern& v);

Pattern extend_tuple(ExtensionTable& table, const Shape& a, const Shape& f, const Pattern& v);

enum class Tri : std::uint8_t { No, Yes, Maybe };

// One T_S (T_c at stage 1) with its fill. Centers are window indices.
struct StageTile {
    std::vector<std::uint32_t> centers;
    std::vector<std::uint32_t> cells;
    // T_S is final only if every cell of T̃_S has a final membership.
    bool complete = false;
    // F_S and w_S known: p_S could be computed.
    bool filled = false;
    Element anchor;
    std::vector<std::uint32_t> f_cells;
    Pattern p;
};

struct StageReport {
    int m = 0;
    std::size_t tiles = 0, tiles_filled = 0;
    std::size_t u_yes = 0, u_maybe = 0, v_yes = 0, v_maybe = 0;
    // Lemma Disjoint: pairs of distinct final tiles with T_S·K ∩ T_S'·K ≠ ∅.
    std::size_t disjoint_checked = 0, disjoint_violations = 0;
    // Lemma Contains on cells where both sides are final.
    std::size_t contains_u_checked = 0, contains_u_violations = 0;
    std::size_t contains_v_checked = 0, contains_v_violations = 0;
    // Forbidden windows of Y fully inside the known part of u_m.
    std::size_t u_forbidden = 0;
    // v_m agrees with v_{m-1} on V_{m-1}.
    std::size_t overwrite_violations = 0;

    bool ok() const
    {
        return disjoint_violations == 0 && contains_u_violations == 0 && contains_v_violations == 0 &&
               u_forbidden == 0 && overwrite_violations == 0;
    }
};

struct StageState {
    int m = 0;
    std::vector<Tri> t, u, v;
    // u_m symbol per window cell, -1 when absent or unknown.
    std::vector<int> value;
    std::vector<StageTile> tiles;
    StageReport report;
};

struct HomRun {
    HomParams params;
    TilingWindow tiling;
    std::vector<StageState> stages;
    // Every cell with border distance > safety_radius has final V_{m₀}
    // membership and, inside V_{m₀}, a final symbol.
    int safety_radius = 0;
    std::size_t safe_cells = 0;
    // Lemma AllOfG on the safe region.
    std::size_t all_of_g_violations = 0;
    // v_{m₀} on the final cells of V_{m₀} inside the safe region.
    Pattern output;

    bool lemmas_ok() const;
    bool safe(std::size_t i) const { return tiling.border_distance[i] > safety_radius; }
    // Cells where a three-valued set is Yes.
    Shape yes_cells(const std::vector<Tri>& set) const;
    // v_m on its final cells.
    Pattern v_pattern(int m) const;
};

struct HomOptions {
    // Throw StageLemmaViolation on any failed check; otherwise only report.
    bool abort_on_violation = true;
    // Skip all fills and compute stage sets only.
    bool shapes_only = false;
};

// Stage sets and lemma checks over an existing tiling. Tile shape must be
// K^{n₀}; metric generators K must contain Y's witness when filling.
HomRun run_stages(const TilingWindow& t, const WordMetric& k, HomParams params, ExtensionTable* table,
                  const HomOptions& opt);

HomRun build_stages(const TilingWindow& t, const WordMetric& k, const HomParams& params);

// φ₁ ∘ φ₀ on a window: quasi_tile with F = K^{n₀} over the given cover,
// then the staged fills. The cover must have been built with F = K^{n₀}.
// A null table means a private one bounded by K^{10n₀}.
HomRun construct_hom(const PointWindow& x, const SeparationCover& cover, const SftSpec& y, const WordMetric& k,
                     const HomParams& params, const HomOptions& opt = {}, ExtensionTable* table = nullptr);

// p_S recomputed with a chosen anchor g ∈ T_S, against the run's stage
// m-1 data. PreconditionError unless the tile is filled and g ∈ T_S.
Pattern recompute_tile(const HomRun& run, ExtensionTable& table, const WordMetric& k, int m, std::size_t tile,
                       const Element& g);

struct StageTiles {
    Shape centers;
    Shape cells;
    bool complete = false;
};

// T_c = cK^{2n₀} ∩ E_{1,2} per center with a nonempty final part.
std::vector<StageTiles> stage1_tiles(const TilingWindow& t, const WordMetric& k, int n0);
// T_S = T̃_S ∩ E_{m,3m-1} for the S ∈ 𝒞_m with a nonempty final part.
std::vector<StageTiles> stagem_tiles(const TilingWindow& t, const WordMetric& k, int n0, int m);

struct BlockCodeRadius {
    std::int64_t phi1 = 0;
    std::int64_t phi0 = 0;
    std::int64_t total = 0;
};

// 10n₀ for φ₁ plus the R_n radius of the quasi-tiling for φ₀.
BlockCodeRadius block_code_radius(const HomParams& params, const TilingWindow& t);

std::string to_string(HomMode m);

} // namespace gshift
