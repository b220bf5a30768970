#include "gshift/entropy.hpp"

#include "gshift/error.hpp"
#include "gshift/region.hpp"
#include "gshift/runtime.hpp"
#include "gshift/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

namespace gshift {

namespace {

BigCount checked_add(BigCount a, BigCount b)
{
    BigCount r;
    if (__builtin_add_overflow(a, b, &r))
        throw ResourceError("pattern count exceeds 128 bits");
    return r;
}

BigCount checked_mul(BigCount a, BigCount b)
{
    BigCount r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ResourceError("pattern count exceeds 128 bits");
    return r;
}

long double log_big(BigCount n)
{
    const auto hi = static_cast<std::uint64_t>(n >> 64);
    const auto lo = static_cast<std::uint64_t>(n);
    return std::log(static_cast<long double>(hi) * 18446744073709551616.0L + static_cast<long double>(lo));
}

void require_z2(const SftSpec& spec, const char* what)
{
    if (spec.group().kind() != GroupKind::Zd || spec.group().rank() != 2)
        throw PreconditionError(std::string(what) + " needs the group Z^2");
}

struct UnionFind {
    std::vector<std::uint32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
    std::uint32_t find(std::uint32_t x)
    {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b)
    {
        a = find(a);
        b = find(b);
        if (a != b)
            parent[std::max(a, b)] = std::min(a, b);
    }
};

} // namespace

std::string to_decimal(BigCount n)
{
    if (n == 0)
        return "0";
    std::string s;
    while (n > 0) {
        s.push_back(static_cast<char>('0' + static_cast<int>(n % 10)));
        n /= 10;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

double PatternCount::log() const
{
    std::map<BigCount, std::size_t> mult;
    for (auto c : components)
        ++mult[c];
    long double sum = 0;
    for (const auto& [c, m] : mult)
        sum += static_cast<long double>(m) * log_big(c);
    return static_cast<double>(sum);
}

std::optional<BigCount> PatternCount::total() const
{
    BigCount t = 1;
    for (auto c : components)
        if (__builtin_mul_overflow(t, c, &t))
            return std::nullopt;
    return t;
}

namespace {

// Σ (m/|F|)·log c so that a uniform product comes out as exactly log c.
double per_site(const PatternCount& pc)
{
    if (pc.cells == 0)
        throw PreconditionError("entropy of an empty shape");
    std::map<BigCount, std::size_t> mult;
    for (auto c : pc.components)
        ++mult[c];
    long double sum = 0;
    for (const auto& [c, m] : mult)
        sum += static_cast<long double>(m) / static_cast<long double>(pc.cells) * log_big(c);
    return static_cast<double>(sum);
}

} // namespace

PatternCount count_patterns(const SftSpec& spec, const Shape& f, bool margin)
{
    const auto& g = spec.group();
    const Shape domain = margin ? shape_union(f, product(g, f, spec.witness())) : f;
    require_cells(domain.size(), "entropy count domain");
    const Region reg(g, domain);
    const ConstraintSystem cs(spec, reg);

    UnionFind uf(reg.size());
    for (std::size_t w = 0; w < cs.window_count(); ++w) {
        const auto* cells = cs.window(w);
        for (std::size_t j = 1; j < cs.k(); ++j)
            uf.unite(cells[0], cells[j]);
    }
    std::map<std::uint32_t, std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> comps;
    for (std::uint32_t i = 0; i < reg.size(); ++i) {
        auto& [in_f, rest] = comps[uf.find(i)];
        (f.contains(reg.at(i)) ? in_f : rest).push_back(i);
    }

    PatternCount out;
    out.cells = f.size();
    const auto k = spec.alphabet_size();
    const auto syms = all_symbols(k);
    std::vector<int> values(reg.size(), -1);
    for (auto& [root, parts] : comps) {
        auto& [in_f, rest] = parts;
        if (in_f.empty())
            continue;
        if (in_f.size() == 1 && rest.empty() && cs.windows_of(in_f[0]).empty()) {
            out.components.push_back(k);
            continue;
        }
        Backtracker bt(cs, in_f, std::vector<std::vector<Symbol>>(in_f.size(), syms));
        bt.set_forward_check(true);
        std::optional<Backtracker> ext;
        if (!rest.empty()) {
            ext.emplace(cs, rest, std::vector<std::vector<Symbol>>(rest.size(), syms));
            ext->set_forward_check(true);
        }
        BigCount n = 0;
        std::uint64_t seen = 0;
        std::vector<int> tmp;
        bt.enumerate(values, [&](const std::vector<int>& v) {
            if (++seen > caps().max_enumeration)
                throw ResourceError("entropy count exceeded the enumeration cap");
            if (ext) {
                tmp = v;
                if (!ext->solve(tmp))
                    return true;
            }
            ++n;
            return true;
        });
        for (auto c : in_f)
            values[c] = -1;
        out.components.push_back(n);
    }
    return out;
}

TransferMatrix::TransferMatrix(const SftSpec& spec, int width, StripBoundary boundary, std::vector<int> fixed_rows,
                               Symbol fixed_symbol)
    : k_(spec.alphabet_size()), width_(width)
{
    require_z2(spec, "transfer matrix");
    if (width < 1)
        throw PreconditionError("strip width must be at least 1");
    if (fixed_symbol >= k_)
        throw PreconditionError("fixed symbol outside the alphabet");
    for (int r : fixed_rows)
        if (r < 0 || r >= width)
            throw PreconditionError("fixed row outside the strip");

    const auto& kw = spec.witness();
    std::int64_t x0 = std::numeric_limits<std::int64_t>::max(), x1 = std::numeric_limits<std::int64_t>::min();
    std::int64_t y0 = x0, y1 = x1;
    for (const auto& e : kw) {
        x0 = std::min(x0, e[0]);
        x1 = std::max(x1, e[0]);
        y0 = std::min(y0, e[1]);
        y1 = std::max(y1, e[1]);
    }
    if (x1 - x0 > 1)
        throw PreconditionError("transfer matrix needs windows spanning at most two slices");
    local_ = x1 == x0;

    std::uint64_t total = 1;
    for (int i = 0; i < width; ++i) {
        if (total > (std::uint64_t{1} << 20) / k_)
            throw ResourceError("transfer matrix has more than 2^20 slice states");
        total *= k_;
    }

    // Window anchors in the second coordinate.
    std::vector<int> anchors;
    for (int y = 0; y < width; ++y)
        if (boundary == StripBoundary::Periodic || (y + y0 >= 0 && y + y1 < width))
            anchors.push_back(y);
    struct Offset {
        int slice;
        std::int64_t dy;
    };
    std::vector<Offset> offs;
    for (const auto& e : kw)
        offs.push_back({static_cast<int>(e[0] - x0), e[1]});
    const auto row_of = [&](int y, std::int64_t dy) {
        return static_cast<int>(((y + dy) % width + width) % width);
    };

    std::vector<Symbol> digits;
    std::vector<Symbol> fixed_mask(width, 0);
    for (int r : fixed_rows)
        fixed_mask[r] = 1;
    for (std::uint64_t c = 0; c < total; ++c) {
        std::vector<Symbol> d(width);
        auto x = c;
        bool keep = true;
        for (int i = 0; i < width; ++i) {
            d[i] = static_cast<Symbol>(x % k_);
            x /= k_;
            if (fixed_mask[i] && d[i] != fixed_symbol)
                keep = false;
        }
        if (!keep)
            continue;
        if (local_) {
            std::vector<Symbol> buf(offs.size());
            for (int y : anchors) {
                for (std::size_t j = 0; j < offs.size(); ++j)
                    buf[j] = d[row_of(y, offs[j].dy)];
                if (spec.is_forbidden(buf)) {
                    keep = false;
                    break;
                }
            }
            if (!keep)
                continue;
        }
        ++states_;
        digits.insert(digits.end(), d.begin(), d.end());
    }
    if (local_)
        return;

    const auto s = states_;
    if (s > 0 && s > caps().max_enumeration / s)
        throw ResourceError("transfer matrix pair scan exceeds the enumeration cap");
    std::vector<std::vector<std::uint32_t>> pred(s);
    std::vector<Symbol> buf(offs.size());
    for (std::size_t a = 0; a < s; ++a) {
        const Symbol* da = &digits[a * width];
        for (std::size_t b = 0; b < s; ++b) {
            const Symbol* db = &digits[b * width];
            bool ok = true;
            for (int y : anchors) {
                for (std::size_t j = 0; j < offs.size(); ++j)
                    buf[j] = (offs[j].slice ? db : da)[row_of(y, offs[j].dy)];
                if (spec.is_forbidden(buf)) {
                    ok = false;
                    break;
                }
            }
            if (ok)
                pred[b].push_back(static_cast<std::uint32_t>(a));
        }
        if ((a & 0xff) == 0)
            check_clock("transfer matrix construction");
    }
    pred_off_.assign(s + 1, 0);
    for (std::size_t b = 0; b < s; ++b)
        pred_off_[b + 1] = pred_off_[b] + static_cast<std::uint32_t>(pred[b].size());
    pred_.reserve(pred_off_[s]);
    for (auto& p : pred)
        pred_.insert(pred_.end(), p.begin(), p.end());
}

std::size_t TransferMatrix::edges() const
{
    return local_ ? states_ * states_ : pred_.size();
}

BigCount TransferMatrix::count(int length) const
{
    if (length < 0)
        throw PreconditionError("negative strip length");
    if (length == 0)
        return 1;
    if (local_) {
        BigCount t = 1;
        for (int i = 0; i < length; ++i)
            t = checked_mul(t, states_);
        return t;
    }
    std::vector<BigCount> v(states_, 1), w(states_);
    for (int step = 1; step < length; ++step) {
        for (std::size_t b = 0; b < states_; ++b) {
            BigCount sum = 0;
            for (auto i = pred_off_[b]; i < pred_off_[b + 1]; ++i)
                sum = checked_add(sum, v[pred_[i]]);
            w[b] = sum;
        }
        v.swap(w);
    }
    BigCount t = 0;
    for (auto x : v)
        t = checked_add(t, x);
    return t;
}

TransferMatrix::Radius TransferMatrix::spectral_radius(double rel_tol, int max_iter) const
{
    if (local_)
        return {static_cast<double>(states_), static_cast<double>(states_), 0};
    const auto s = states_;

    // Only states on a cycle carry the Perron root; drop the rest so that the
    // Collatz–Wielandt ratios can close.
    std::vector<std::uint32_t> indeg(s, 0), outdeg(s, 0);
    std::vector<std::vector<std::uint32_t>> succ(s);
    for (std::size_t b = 0; b < s; ++b)
        for (auto i = pred_off_[b]; i < pred_off_[b + 1]; ++i) {
            succ[pred_[i]].push_back(static_cast<std::uint32_t>(b));
            ++indeg[b];
            ++outdeg[pred_[i]];
        }
    std::vector<char> alive(s, 1);
    std::vector<std::uint32_t> queue;
    for (std::size_t i = 0; i < s; ++i)
        if (indeg[i] == 0 || outdeg[i] == 0) {
            alive[i] = 0;
            queue.push_back(static_cast<std::uint32_t>(i));
        }
    while (!queue.empty()) {
        const auto x = queue.back();
        queue.pop_back();
        for (auto b : succ[x])
            if (alive[b] && --indeg[b] == 0) {
                alive[b] = 0;
                queue.push_back(b);
            }
        for (auto i = pred_off_[x]; i < pred_off_[x + 1]; ++i) {
            const auto a = pred_[i];
            if (alive[a] && --outdeg[a] == 0) {
                alive[a] = 0;
                queue.push_back(a);
            }
        }
    }
    std::vector<std::uint32_t> live;
    for (std::size_t i = 0; i < s; ++i)
        if (alive[i])
            live.push_back(static_cast<std::uint32_t>(i));
    if (live.empty())
        return {0, 0, 0};

    std::vector<double> v(s, 0), w(s, 0);
    for (auto i : live)
        v[i] = 1;
    constexpr std::size_t chunk = 1024;
    const std::size_t chunks = (live.size() + chunk - 1) / chunk;
    Radius r;
    for (int it = 1; it <= max_iter; ++it) {
        parallel_for(chunks, [&](std::size_t c) {
            const auto end = std::min(live.size(), (c + 1) * chunk);
            for (auto j = c * chunk; j < end; ++j) {
                const auto b = live[j];
                double sum = v[b];
                for (auto i = pred_off_[b]; i < pred_off_[b + 1]; ++i)
                    sum += v[pred_[i]];
                w[b] = sum;
            }
        });
        double lo = std::numeric_limits<double>::infinity(), hi = 0, top = 0;
        for (auto b : live) {
            const double q = w[b] / v[b];
            lo = std::min(lo, q);
            hi = std::max(hi, q);
            top = std::max(top, w[b]);
        }
        for (auto b : live)
            v[b] = w[b] / top;
        r = {std::max(0.0, lo - 1), hi - 1, it};
        if (hi - lo <= rel_tol * lo)
            break;
        if ((it & 0xff) == 0)
            check_clock("transfer matrix power iteration");
    }
    return r;
}

BigCount count_strip(const SftSpec& spec, int width, int length, EntropyMethod method)
{
    require_z2(spec, "strip count");
    if (width < 0 || length < 0)
        throw PreconditionError("negative strip size");
    if (width == 0 || length == 0)
        return 1;
    if (method == EntropyMethod::TransferMatrix)
        return TransferMatrix(spec, width, StripBoundary::Free).count(length);
    const auto box = box_shape(spec.group(), {0, 0}, {length, width});
    const auto t = count_patterns(spec, box, false).total();
    if (!t)
        throw ResourceError("pattern count exceeds 128 bits");
    return *t;
}

std::string to_string(BoundKind b)
{
    switch (b) {
    case BoundKind::Upper:
        return "upper";
    case BoundKind::Lower:
        return "lower";
    case BoundKind::Estimate:
        return "estimate";
    }
    return "?";
}

std::string to_string(EntropyMethod m)
{
    return m == EntropyMethod::Count ? "count" : "transfer";
}

EntropyMethod parse_entropy_method(const std::string& s)
{
    if (s == "count")
        return EntropyMethod::Count;
    if (s == "transfer" || s == "transfer-matrix")
        return EntropyMethod::TransferMatrix;
    throw PreconditionError("unknown entropy method '" + s + "' (expected count or transfer)");
}

StripBounds strip_bounds(const SftSpec& spec, int width)
{
    require_z2(spec, "strip bounds");
    std::int64_t y0 = std::numeric_limits<std::int64_t>::max(), y1 = std::numeric_limits<std::int64_t>::min();
    for (const auto& e : spec.witness()) {
        y0 = std::min(y0, e[1]);
        y1 = std::max(y1, e[1]);
    }
    StripBounds sb;
    sb.width = width;
    sb.pad = static_cast<int>(y1 - y0);
    const auto ln = [](double x) { return x > 0 ? std::log(x) : -std::numeric_limits<double>::infinity(); };

    sb.upper = ln(TransferMatrix(spec, width, StripBoundary::Free).spectral_radius().upper) / width;
    const auto cyl = TransferMatrix(spec, width, StripBoundary::Periodic).spectral_radius();
    sb.cylinder = ln(0.5 * (cyl.lower + cyl.upper)) / width;

    // A window spans at most pad + 1 consecutive rows, so across a band of
    // `pad` fixed rows it meets only one strip: independent strips stack.
    std::vector<int> fixed;
    for (int i = 0; i < sb.pad; ++i)
        fixed.push_back(width + i);
    std::vector<Symbol> candidates;
    if (sb.pad == 0 || spec.fill().kind == FillKind::SafeSymbol)
        candidates.push_back(sb.pad == 0 ? 0 : spec.fill().safe);
    else
        candidates = all_symbols(spec.alphabet_size());
    sb.lower = -std::numeric_limits<double>::infinity();
    for (auto s : candidates) {
        const auto r = TransferMatrix(spec, width + sb.pad, StripBoundary::Periodic, fixed, s).spectral_radius();
        const double v = ln(r.lower) / (width + sb.pad);
        if (v > sb.lower) {
            sb.lower = v;
            sb.pad_symbol = s;
        }
    }
    return sb;
}

EntropyResult entropy_estimate(const SftSpec& spec, const WordMetric& k, int n, EntropyMethod method,
                               const EntropyOptions& opt)
{
    if (n < 0)
        throw PreconditionError("entropy index must be nonnegative");
    const auto shape = opt.shape.value_or(method == EntropyMethod::Count ? EntropyShape::Ball : EntropyShape::Strip);
    EntropyResult r;
    const auto ns = std::to_string(n);
    if (method == EntropyMethod::Count) {
        Shape f;
        if (shape == EntropyShape::Ball) {
            if (!(k.group() == spec.group()))
                throw PreconditionError("metric and spec live on different groups");
            f = k.ball(n);
            r.shape = "ball B_" + ns;
        } else if (shape == EntropyShape::Box) {
            require_z2(spec, "box count");
            if (n == 0)
                throw PreconditionError("box side must be at least 1");
            f = box_shape(spec.group(), {0, 0}, {n, n});
            r.shape = "box " + ns + "x" + ns;
        } else {
            throw PreconditionError("the count method works on balls and boxes");
        }
        const auto pc = count_patterns(spec, f, opt.margin);
        r.value = per_site(pc);
        r.bound = BoundKind::Upper;
        r.cells = pc.cells;
        if (opt.margin)
            r.shape += " with K-margin";
        return r;
    }

    require_z2(spec, "transfer matrix");
    if (n < 1)
        throw PreconditionError("transfer matrix width must be at least 1");
    if (shape == EntropyShape::Box) {
        const auto c = TransferMatrix(spec, n, StripBoundary::Free).count(n);
        r.cells = static_cast<std::size_t>(n) * n;
        r.value = static_cast<double>(log_big(c) / static_cast<long double>(r.cells));
        r.bound = BoundKind::Upper;
        r.shape = "box " + ns + "x" + ns;
        return r;
    }
    if (shape != EntropyShape::Strip)
        throw PreconditionError("the transfer-matrix method works on boxes and strips");
    const auto sb = strip_bounds(spec, n);
    r.value = sb.cylinder;
    r.bound = BoundKind::Estimate;
    r.shape = "cylinder width " + ns;
    r.cells = static_cast<std::size_t>(n);
    r.lower = sb.lower;
    r.upper = sb.upper;
    return r;
}

EntropyGap entropy_gap_report(const SftSpec& x, const SftSpec& y, int n)
{
    EntropyGap g;
    g.hx_upper = strip_bounds(x, n).upper;
    g.hy_lower = strip_bounds(y, n).lower;
    g.certified = g.hx_upper < g.hy_lower;
    return g;
}

} // namespace gshift
