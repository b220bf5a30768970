#pragma once

#include "gshift/group.hpp"
#include "gshift/metric.hpp"
#include "gshift/pattern.hpp"
#include "gshift/shape.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace gshift {

enum class FillKind { SafeSymbol, SingleSite, BruteForce };

struct FillStrategy {
    FillKind kind = FillKind::BruteForce;
    Symbol safe = 0; // SafeSymbol only

    static FillStrategy safe_symbol(Symbol s) { return {FillKind::SafeSymbol, s}; }
    static FillStrategy single_site() { return {FillKind::SingleSite, 0}; }
    static FillStrategy brute_force() { return {FillKind::BruteForce, 0}; }
    bool operator==(const FillStrategy&) const = default;
};

std::string to_string(const FillStrategy& f);
// "safe:<n>" | "single-site" | "brute"
FillStrategy parse_fill_strategy(const std::string& s);

// X_F for a forbidden set F ⊆ A^K. Windows are encoded as
// sum_j s_j |A|^j over K in canonical order.
class SftSpec {
public:
    SftSpec(GroupModel group, Alphabet alphabet, Shape witness, const std::vector<Pattern>& forbidden,
            FillStrategy fill, std::string name = {});

    const GroupModel& group() const { return group_; }
    const Alphabet& alphabet() const { return alphabet_; }
    std::size_t alphabet_size() const { return alphabet_.size(); }
    const Shape& witness() const { return witness_; }
    const FillStrategy& fill() const { return fill_; }
    const std::string& name() const { return name_; }
    std::size_t forbidden_count() const { return forbidden_codes_.size(); }
    std::vector<Pattern> forbidden() const;

    std::uint64_t encode(std::span<const Symbol> window) const;
    bool is_forbidden_code(std::uint64_t code) const;
    bool is_forbidden(std::span<const Symbol> window) const { return is_forbidden_code(encode(window)); }

private:
    GroupModel group_;
    Alphabet alphabet_;
    Shape witness_;
    FillStrategy fill_;
    std::string name_;
    std::vector<std::uint64_t> forbidden_codes_; // sorted
    std::vector<bool> dense_;
};

// "full:k", "hardsquare-safe", "hardsquare", "checkerboard:q". K is {e} plus
// the positive standard generators (e₁,…,e_d for Zd and tori, a and b for
// Heisenberg3); full:k uses K = {e}.
SftSpec builtin_spec(const GroupModel& g, const std::string& name);

bool locally_allowed(const SftSpec& spec, const Pattern& w);

// Extends w to target. The result is locally allowed and agrees with w on
// int_K(shape(w)). FillFailure when the spec's strategy cannot extend w.
Pattern fep_fill(const SftSpec& spec, const Pattern& w, const Shape& target);

// Surrogate for w ∈ L_S(X): w extends to a locally allowed pattern on S·K^margin.
bool allowed_with_margin(const SftSpec& spec, const Pattern& w, int margin);

struct FepCheckResult {
    bool ok = true;
    std::optional<Pattern> counterexample;
    std::uint64_t checked = 0; // distinct interior restrictions examined
};

// Every locally allowed w on B_R·K must have int_K(B_R·K)-restriction that
// extends to a locally allowed pattern on B_{R+2}·K.
FepCheckResult check_fep_bruteforce(const SftSpec& spec, const WordMetric& metric, int radius);

struct SiCheckOptions {
    int margin = 2;                     // global-allowedness surrogate
    std::vector<Shape> sub_shapes;      // base shapes E, F (translated inside B_R); default {e}, dominoes, 2x2 square
    std::optional<std::uint64_t> trials; // sample instead of exhausting
    std::uint64_t seed = 1;
};

struct SiCheckResult {
    bool ok = true;
    std::optional<std::pair<Pattern, Pattern>> counterexample;
    std::uint64_t shape_pairs = 0;
    std::uint64_t pattern_pairs = 0;
};

// Pairs u ∈ L_E, v ∈ L_F with E·si_shape ∩ F = ∅, E, F translates of the
// sub-shapes inside B_R; checks u ∪ v ∈ L_{E∪F}.
SiCheckResult check_si(const SftSpec& spec, const WordMetric& metric, const Shape& si_shape, int radius,
                       const SiCheckOptions& opt = {});

// Sliding-block rule on a finite shape containing e.
struct BlockMap {
    Shape shape;
    std::size_t source_alphabet = 0;
    std::size_t target_alphabet = 0;
    // Symbols of the source pattern on `shape`, canonical order.
    std::function<Symbol(std::span<const Symbol>)> rule;
};

struct TransportOptions {
    // Also forbid Y-patterns on which Φ₀∘Φ₁ is not the identity at e.
    bool enforce_inverse = true;
};

struct FepWitness {
    Shape witness;
    std::vector<Pattern> forbidden;
};

// Carries an FEP witness (K, F) of X across a conjugacy with block maps
// Φ₀: X → Y (shape R₀) and Φ₁: Y → X (shape R₁) to K' = R₀·K·R₁.
FepWitness transport_fep_witness(const GroupModel& g, const Shape& k, const std::vector<Pattern>& forbidden,
                                 std::size_t alphabet_x, const BlockMap& phi0, const BlockMap& phi1,
                                 const TransportOptions& opt = {});

struct ExtenderWindow {
    Shape outer;
    Shape inner;
    Pattern u;
    Shape complement;          // outer \ inner, canonical order
    std::vector<Symbol> flat;  // members in lexicographic order, |complement| symbols each
    std::size_t count = 0;

    std::span<const Symbol> member(std::size_t i) const
    {
        return {flat.data() + i * complement.size(), complement.size()};
    }
};

ExtenderWindow extender_set(const SftSpec& spec, const Pattern& u, const Shape& w);

// u, v live on S·K⁻¹·K and agree on SK⁻¹K \ S; PreconditionError otherwise.
bool extender_equal_by_boundary(const SftSpec& spec, const Shape& s, const Pattern& u, const Pattern& v,
                                const Shape& w);

} // namespace gshift
