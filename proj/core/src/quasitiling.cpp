#include "gshift/quasitiling.hpp"

#include "gshift/error.hpp"
#include "gshift/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <random>
#include <unordered_map>

namespace gshift {

Symbol rotation2d_symbol(double alpha, double beta, std::int64_t i, std::int64_t j)
{
    const long double a = alpha, b = beta;
    const long double base = static_cast<long double>(i) * a + static_cast<long double>(j) * b;
    return static_cast<Symbol>(std::floor(base + a) - std::floor(base));
}

PointWindow PointWindow::rotation2d(const GroupModel& g, const Shape& window, double alpha, double beta)
{
    if (g.kind() != GroupKind::Zd || g.rank() != 2)
        throw PreconditionError("rotation2d samples live on zd:2, not " + g.name());
    if (!(alpha > 0 && alpha < 1))
        throw PreconditionError("rotation2d needs 0 < alpha < 1");
    require_cells(window.size(), "rotation2d window");
    std::vector<Symbol> s;
    s.reserve(window.size());
    for (const auto& e : window)
        s.push_back(rotation2d_symbol(alpha, beta, e[0], e[1]));
    return {g, Pattern(window, std::move(s)),
            "rotation2d(" + std::to_string(alpha) + "," + std::to_string(beta) + ")"};
}

PointWindow PointWindow::random(const GroupModel& g, const Shape& window, std::size_t alphabet, std::uint64_t seed)
{
    if (alphabet < 1 || alphabet > 256)
        throw PreconditionError("random sample alphabet must have 1..256 symbols");
    require_cells(window.size(), "random window");
    std::mt19937_64 rng(seed);
    std::vector<Symbol> s(window.size());
    for (auto& v : s)
        v = static_cast<Symbol>(rng() % alphabet);
    return {g, Pattern(window, std::move(s)), "random(" + std::to_string(alphabet) + "," + std::to_string(seed) + ")"};
}

PointWindow PointWindow::explicit_pattern(const GroupModel& g, Pattern x)
{
    for (const auto& e : x.shape())
        if (!g.is_valid(e))
            throw PreconditionError("explicit sample has an element outside " + g.name());
    return {g, std::move(x), "explicit"};
}

namespace {

constexpr int kUndecided = -1;
constexpr int kNoWitness = -2;

// Minimal r such that for every f in FF⁻¹ \ {e} some s in B_r has
// x(gs) ≠ x(gfs). kUndecided when the window runs out first, kNoWitness
// when r_sep is reached inside the window.
//
// Per f this is a BFS distance to the mismatch set {h : x(h) ≠ x(hf)}, with
// cells whose hf leaves the window counted as sources too. Within
// g·B_rmax every cell and its f-translate lie in the window, so a BFS
// distance <= rmax is exact and anything larger is unresolved.
std::vector<int> separation_radii(const Region& reg, const std::vector<Symbol>& sym, const WordMetric& m,
                                  const Shape& sep, int r_sep, const std::vector<int>& border)
{
    const auto& g = reg.group();
    const int rad_sep = m.radius_of(sep);
    std::vector<int> rmax(reg.size(), -1);
    for (std::size_t i = 0; i < reg.size(); ++i) {
        const long long room = border[i] == kFar ? r_sep : static_cast<long long>(border[i]) - 1 - rad_sep;
        if (room >= 0)
            rmax[i] = static_cast<int>(std::min<long long>(room, r_sep));
    }
    std::vector<Element> fs;
    for (const auto& f : sep)
        if (f != g.identity())
            fs.push_back(f);
    std::vector<int> need(reg.size(), 0);
    std::vector<char> unresolved(reg.size(), 0);
    std::mutex mu;
    const Adjacency adj(reg, m.generators());
    parallel_for(fs.size(), [&](std::size_t k) {
        std::vector<char> src(reg.size());
        const auto shift = reg.shift_map(fs[k]);
        for (std::size_t h = 0; h < reg.size(); ++h) {
            const auto j = shift[h];
            src[h] = j == Region::npos || sym[h] != sym[j];
        }
        const auto d = adj.distance_to_sources(src);
        std::lock_guard lock(mu);
        for (std::size_t i = 0; i < reg.size(); ++i) {
            if (d[i] > rmax[i])
                unresolved[i] = 1;
            else
                need[i] = std::max(need[i], d[i]);
        }
    });
    std::vector<int> out(reg.size(), kUndecided);
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (rmax[i] < 0)
            continue;
        if (unresolved[i])
            out[i] = rmax[i] == r_sep ? kNoWitness : kUndecided;
        else
            out[i] = need[i];
    }
    return out;
}

std::uint64_t hash_type(const Region& reg, const std::vector<Symbol>& sym, std::size_t i, const Shape& s, int r)
{
    std::uint64_t h = 0x9e3779b97f4a7c15ull ^ static_cast<std::uint64_t>(r);
    for (const auto& e : s) {
        h ^= sym[reg.neighbor(i, e)] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
}

bool same_type(const Region& ra, const std::vector<Symbol>& sa, std::size_t ia, const Region& rb,
               const std::vector<Symbol>& sb, std::size_t ib, const Shape& s)
{
    for (const auto& e : s)
        if (sa[ra.neighbor(ia, e)] != sb[rb.neighbor(ib, e)])
            return false;
    return true;
}

std::vector<int> border_of(const Region& reg, const GenSet& k)
{
    return distance_to_sources(reg, k, std::vector<char>(reg.size(), 0));
}

} // namespace

int default_separation_radius(const WordMetric& metric, const Shape& f)
{
    return 3 * metric.diameter(f);
}

const Shape& SeparationCover::entry_shape(std::size_t i) const
{
    return shapes_.at(static_cast<std::size_t>(entries_.at(i).radius));
}

Pattern SeparationCover::pattern(std::size_t i) const
{
    const auto& e = entries_.at(i);
    const auto& s = shapes_.at(static_cast<std::size_t>(e.radius));
    const auto& g = group();
    std::vector<Symbol> v;
    v.reserve(s.size());
    for (const auto& x : s)
        v.push_back(window_->x.at(g.mul(e.source, x)));
    return Pattern(s, std::move(v));
}

std::vector<int> SeparationCover::locate(const PointWindow& w) const
{
    if (!(w.group == group()))
        throw PreconditionError("sample group differs from the cover's group");
    const Region reg(w.group, w.window());
    const Region src(window_->group, window_->window());
    const auto& sym = w.x.symbols();
    const auto& src_sym = window_->x.symbols();
    const auto radii = separation_radii(reg, sym, *metric_, sep_, max_radius(), border_of(reg, metric_->generators()));

    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index;
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        const auto& e = entries_[i];
        const auto j = src.index_of(e.source);
        index[hash_type(src, src_sym, j, shapes_[e.radius], e.radius)].push_back(static_cast<std::uint32_t>(i));
    }
    std::vector<int> out(reg.size(), -1);
    parallel_for(reg.size(), [&](std::size_t i) {
        const int r = radii[i];
        if (r < 0)
            return;
        const auto it = index.find(hash_type(reg, sym, i, shapes_[r], r));
        if (it == index.end())
            return;
        for (auto k : it->second) {
            const auto& e = entries_[k];
            if (e.radius == r && same_type(reg, sym, i, src, src_sym, src.index_of(e.source), shapes_[r])) {
                out[i] = static_cast<int>(k);
                return;
            }
        }
    });
    return out;
}

SeparationCover build_cover(const PointWindow& x, const WordMetric& metric, const Shape& f, int r_sep)
{
    const auto& g = x.group;
    if (!(metric.group() == g))
        throw PreconditionError("metric group differs from the sample group");
    if (f.empty())
        throw PreconditionError("tile shape F must be nonempty");
    if (r_sep < 0)
        throw PreconditionError("separation radius cap must be >= 0");
    SeparationCover c;
    c.window_ = std::make_shared<const PointWindow>(x);
    c.metric_ = &metric;
    c.sep_ = product(g, f, inverse(g, f));
    const Region reg(g, x.window());
    const auto& sym = x.x.symbols();
    const auto radii = separation_radii(reg, sym, metric, c.sep_, r_sep, border_of(reg, metric.generators()));
    for (std::size_t i = 0; i < reg.size(); ++i)
        if (radii[i] == kNoWitness)
            throw AperiodicityWitnessNotFound("the FF⁻¹-translates at " + describe(reg.at(i), g.rank()) +
                                              " agree on the whole ball of radius " + std::to_string(r_sep) +
                                              "; the sample is too periodic at this scale");
    int rmax = -1;
    for (int r : radii)
        rmax = std::max(rmax, r);
    if (rmax < 0)
        throw AperiodicityWitnessNotFound("no position of the window has a decidable type; enlarge the window");
    // FF⁻¹B_r = FF⁻¹B_{r-1}·K
    c.shapes_.push_back(c.sep_);
    for (int r = 1; r <= rmax; ++r)
        c.shapes_.push_back(product(g, c.shapes_.back(), metric.generators().shape()));

    std::vector<std::uint64_t> hashes(reg.size(), 0);
    parallel_for(reg.size(), [&](std::size_t i) {
        if (radii[i] >= 0)
            hashes[i] = hash_type(reg, sym, i, c.shapes_[radii[i]], radii[i]);
    });
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> seen;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        const int r = radii[i];
        if (r < 0) {
            ++c.undetermined_;
            continue;
        }
        auto& bucket = seen[hashes[i]];
        bool found = false;
        for (auto j : bucket)
            if (radii[j] == r && same_type(reg, sym, i, reg, sym, j, c.shapes_[r])) {
                found = true;
                break;
            }
        if (found)
            continue;
        bucket.push_back(static_cast<std::uint32_t>(i));
        c.entries_.push_back({r, reg.at(i)});
    }
    return c;
}

std::size_t TilingWindow::safe_count() const
{
    std::size_t n = 0;
    for (std::size_t i = 0; i < window.size(); ++i)
        n += safe(i);
    return n;
}

Shape TilingWindow::safe_region() const
{
    std::vector<Element> v;
    for (std::size_t i = 0; i < window.size(); ++i)
        if (safe(i))
            v.push_back(window[i]);
    return Shape::from_sorted(std::move(v));
}

Shape TilingWindow::centers() const
{
    std::vector<Element> v;
    for (std::size_t i = 0; i < window.size(); ++i)
        if (status[i] == TileStatus::Center)
            v.push_back(window[i]);
    return Shape::from_sorted(std::move(v));
}

TilingWindow quasi_tile(const PointWindow& x, const SeparationCover& cover, const Shape& f)
{
    const auto& g = x.group;
    const Shape sep = product(g, f, inverse(g, f));
    if (sep != cover.separation())
        throw PreconditionError("tile shape F does not match the cover's separation set FF⁻¹");
    TilingWindow t;
    t.group = g;
    t.window = x.window();
    t.tile = f;
    t.separation = sep;
    const Region reg(g, t.window);
    t.stage = cover.locate(x);
    t.border_distance = border_of(reg, cover.metric().generators());
    t.status.assign(reg.size(), TileStatus::Unknown);

    std::vector<std::uint32_t> order;
    for (std::size_t i = 0; i < reg.size(); ++i)
        if (t.stage[i] >= 0)
            order.push_back(static_cast<std::uint32_t>(i));
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return t.stage[a] < t.stage[b]; });
    std::vector<Element> others;
    for (const auto& e : sep)
        if (e != g.identity())
            others.push_back(e);
    // C_i = {g : u_i occurs at g, gFF⁻¹ ∩ C_{i-1} = ∅} ∪ C_{i-1}
    for (auto i : order) {
        const int s = t.stage[i];
        bool maybe = false, blocked = false;
        for (const auto& e : others) {
            const auto j = reg.neighbor(i, e);
            if (j == Region::npos || t.stage[j] < 0) {
                maybe = true;
                continue;
            }
            if (t.stage[j] >= s)
                continue;
            if (t.status[j] == TileStatus::Center) {
                blocked = true;
                break;
            }
            if (t.status[j] == TileStatus::Unknown)
                maybe = true;
        }
        t.status[i] = blocked ? TileStatus::Never : maybe ? TileStatus::Unknown : TileStatus::Center;
    }

    t.safety_radius = 0;
    for (std::size_t i = 0; i < reg.size(); ++i)
        if (t.status[i] == TileStatus::Unknown)
            t.safety_radius = std::max(t.safety_radius, t.border_distance[i]);

    // R_i = S_i ∪ FF⁻¹R_{i-1}, measured by radius
    const std::int64_t rad_sep = cover.metric().radius_of(sep);
    std::int64_t r = -1;
    for (std::size_t i = 0; i < cover.size(); ++i) {
        const std::int64_t si = rad_sep + cover.entry(i).radius;
        r = r < 0 ? si : std::max(si, rad_sep + r);
    }
    t.conservative_radius = std::max<std::int64_t>(r, 0);
    return t;
}

VerifyResult check_disjoint(const TilingWindow& t, const Shape& f)
{
    const auto& g = t.group;
    const Region reg(g, t.window);
    const Shape sep = product(g, f, inverse(g, f));
    VerifyResult res;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (!t.safe(i) || t.status[i] != TileStatus::Center)
            continue;
        ++res.checked;
        for (const auto& e : sep) {
            if (e == g.identity())
                continue;
            const auto j = reg.neighbor(i, e);
            if (j != Region::npos && t.safe(j) && t.status[j] == TileStatus::Center) {
                res.ok = false;
                res.witness = reg.at(i);
                return res;
            }
        }
    }
    return res;
}

VerifyResult check_covering(const TilingWindow& t, const Shape& c)
{
    const auto& g = t.group;
    const Region reg(g, t.window);
    const Shape cinv = inverse(g, c);
    VerifyResult res;
    for (std::size_t i = 0; i < reg.size(); ++i) {
        if (!t.safe(i))
            continue;
        bool covered = false, decided = true;
        for (const auto& e : cinv) {
            const auto j = reg.neighbor(i, e);
            if (j == Region::npos || t.status[j] == TileStatus::Unknown) {
                decided = false;
                continue;
            }
            if (t.status[j] == TileStatus::Center) {
                covered = true;
                break;
            }
        }
        if (covered || decided)
            ++res.checked;
        if (!covered && decided) {
            res.ok = false;
            res.witness = reg.at(i);
            return res;
        }
    }
    return res;
}

bool verify_disjoint(const TilingWindow& t, const Shape& f) { return check_disjoint(t, f).ok; }
bool verify_covering(const TilingWindow& t, const Shape& c) { return check_covering(t, c).ok; }

namespace {

void check_degree_args(int n0, int n)
{
    if (n0 < 0 || n < 0 || n > n0)
        throw PreconditionError("degree needs 0 <= n <= n0");
}

} // namespace

int degree(const TilingWindow& t, const WordMetric& k, int n0, const Element& g, int n)
{
    check_degree_args(n0, n);
    int count = 0;
    for (const auto& s : k.ball(2 * n0 + n)) {
        const auto j = t.window.index_of(t.group.mul(g, s));
        if (!j || !t.safe(*j))
            throw SafeRegionError("degree at " + describe(g, t.group.rank()) + " needs B_" +
                                  std::to_string(2 * n0 + n) + " inside the safe region");
        count += t.status[*j] == TileStatus::Center;
    }
    return count;
}

std::vector<int> degree_map(const TilingWindow& t, const WordMetric& k, int n0, int n)
{
    check_degree_args(n0, n);
    const Region reg(t.group, t.window);
    const int radius = 2 * n0 + n;
    std::vector<char> unsafe(reg.size());
    for (std::size_t i = 0; i < reg.size(); ++i)
        unsafe[i] = !t.safe(i);
    const auto reach = distance_to_sources(reg, k.generators(), unsafe);
    std::vector<int> deg(reg.size(), 0);
    const auto& ball = k.ball(radius);
    // ρ(g,c) <= R ⇔ g ∈ cB_R, the ball being symmetric
    for (std::size_t c = 0; c < reg.size(); ++c) {
        if (t.status[c] != TileStatus::Center)
            continue;
        for (const auto& s : ball) {
            const auto j = reg.neighbor(c, s);
            if (j != Region::npos)
                ++deg[j];
        }
    }
    for (std::size_t i = 0; i < reg.size(); ++i)
        if (reach[i] <= radius)
            deg[i] = -1;
    return deg;
}

Shape e_set(const TilingWindow& t, const WordMetric& k, int n0, int m, int n)
{
    const auto deg = degree_map(t, k, n0, n);
    std::vector<Element> v;
    for (std::size_t i = 0; i < deg.size(); ++i)
        if (deg[i] >= 0 && deg[i] <= m)
            v.push_back(t.window[i]);
    return Shape::from_sorted(std::move(v));
}

} // namespace gshift
