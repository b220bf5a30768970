#pragma once

#include "gshift/metric.hpp"
#include "gshift/sft.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gshift {

using BigCount = unsigned __int128;

std::string to_decimal(BigCount n);

// Locally allowed patterns on a finite shape, factored over the connected
// components of its constraint graph.
struct PatternCount {
    std::size_t cells = 0;
    std::vector<BigCount> components;

    // Natural log of the product.
    double log() const;
    // Product, or nullopt when it does not fit in 128 bits.
    std::optional<BigCount> total() const;
};

// margin = false: patterns w on f with every K_Y-window inside f allowed.
// margin = true: restrictions to f of locally allowed patterns on f·K_Y;
// an upper bound on |L_f(X)| that is exact when the spec has the FEP.
// ResourceError past the enumeration cap.
PatternCount count_patterns(const SftSpec& spec, const Shape& f, bool margin);

enum class EntropyMethod { Count, TransferMatrix };

enum class StripBoundary { Free, Periodic };

// Slice transfer graph on Z² strips {0..L-1} × {0..width-1}. A state is the
// slice at fixed first coordinate; an edge a → b means every window meeting
// exactly those two consecutive slices is allowed. Needs a witness whose
// first-coordinate extent is at most 1. With Periodic the second coordinate
// wraps mod width. `fixed` pins the listed rows of every slice to one symbol.
class TransferMatrix {
public:
    TransferMatrix(const SftSpec& spec, int width, StripBoundary boundary, std::vector<int> fixed_rows = {},
                   Symbol fixed_symbol = 0);

    int width() const { return width_; }
    // Admissible slices: fixed rows match and, when slice_local, the
    // in-slice windows pass.
    std::size_t states() const { return states_; }
    // Witness confined to one slice: every pair of admissible slices is an edge.
    bool slice_local() const { return local_; }
    std::size_t edges() const;

    // Exact count of locally allowed patterns on the length × width strip.
    BigCount count(int length) const;

    struct Radius {
        double lower = 0, upper = 0;
        int iterations = 0;
    };
    // Perron root by power iteration on T + I with Collatz–Wielandt bounds;
    // lower ≤ ρ(T) ≤ upper always holds.
    Radius spectral_radius(double rel_tol = 1e-13, int max_iter = 200000) const;

private:
    std::size_t k_;
    int width_;
    std::size_t states_ = 0;
    bool local_ = false;
    // Reverse adjacency over admissible slice indices.
    std::vector<std::uint32_t> pred_off_, pred_;
};

// Count of locally allowed patterns on the length × width box of Z², by
// DFS or by transfer matrix. Both routes are exact and must agree.
BigCount count_strip(const SftSpec& spec, int width, int length, EntropyMethod method);

enum class BoundKind { Upper, Lower, Estimate };

std::string to_string(BoundKind b);
std::string to_string(EntropyMethod m);
EntropyMethod parse_entropy_method(const std::string& s);

enum class EntropyShape { Ball, Box, Strip };

struct EntropyOptions {
    // Unset: Ball for Count, Strip for TransferMatrix.
    std::optional<EntropyShape> shape;
    // Count only; see count_patterns.
    bool margin = true;
};

struct EntropyResult {
    // Nats per site.
    double value = 0;
    BoundKind bound = BoundKind::Upper;
    std::string shape;
    std::size_t cells = 0;
    // Rigorous bracket around h(X) where one is available.
    std::optional<double> lower, upper;
};

// Count on B_n(K) or the n × n box: (1/|F|) log of the count, an upper bound.
// TransferMatrix on the n × n box: the same quantity through slice sweeps.
// TransferMatrix on a strip of width n: the cylinder value log ρ/n as an
// estimate, bracketed by the free-strip upper bound and the padded lower bound.
EntropyResult entropy_estimate(const SftSpec& spec, const WordMetric& k, int n, EntropyMethod method,
                               const EntropyOptions& opt = {});

struct StripBounds {
    int width = 0;
    // log ρ(free strip) / width.
    double upper = 0;
    // log ρ(padded cylinder) / (width + pad): rows of width `width` separated
    // by `pad` rows of one fixed symbol, pad = second-coordinate extent of K_Y.
    double lower = 0;
    int pad = 0;
    Symbol pad_symbol = 0;
    // log ρ(periodic cylinder) / width.
    double cylinder = 0;
};

StripBounds strip_bounds(const SftSpec& spec, int width);

struct EntropyGap {
    double hx_upper = 0;
    double hy_lower = 0;
    bool certified = false;
};

// Z² only: free-strip upper bound for X against the padded lower bound for
// Y, both at strip width n.
EntropyGap entropy_gap_report(const SftSpec& x, const SftSpec& y, int n);

} // namespace gshift
