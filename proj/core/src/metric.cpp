#include "gshift/metric.hpp"

#include "gshift/error.hpp"
#include "gshift/runtime.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace gshift {

GenSet GenSet::make(const GroupModel& g, std::vector<Element> elems)
{
    for (const auto& e : elems)
        if (!g.is_valid(e))
            throw PreconditionError("generating set element is not a valid " + g.name() + " element");
    Shape s = Shape::from_unsorted(std::move(elems));
    if (!s.contains(g.identity()))
        throw PreconditionError("generating set must contain the identity");
    for (const auto& e : s)
        if (!s.contains(g.inv(e)))
            throw PreconditionError("generating set must be symmetric");
    GenSet k;
    k.elems_ = std::move(s);
    return k;
}

GenSet GenSet::standard(const GroupModel& g)
{
    std::vector<Element> v{g.identity()};
    switch (g.kind()) {
    case GroupKind::Zd:
    case GroupKind::Torus:
        for (int i = 0; i < g.rank(); ++i) {
            Element e = g.identity();
            e.c[i] = 1;
            if (g.kind() == GroupKind::Torus)
                e.c[i] %= g.moduli()[i];
            v.push_back(e);
            v.push_back(g.inv(e));
        }
        break;
    case GroupKind::Heisenberg3:
        v.push_back(make_element({1, 0, 0}));
        v.push_back(make_element({0, 1, 0}));
        v.push_back(g.inv(make_element({1, 0, 0})));
        v.push_back(g.inv(make_element({0, 1, 0})));
        break;
    case GroupKind::FiniteTable:
        v = g.all_elements();
        break;
    }
    return make(g, std::move(v));
}

Shape symmetrize(const GroupModel& g, const Shape& s)
{
    std::vector<Element> v(s.begin(), s.end());
    for (const auto& e : s)
        v.push_back(g.inv(e));
    v.push_back(g.identity());
    return Shape::from_unsorted(std::move(v));
}

int WordDistance::value() const
{
    if (!r_)
        throw PreconditionError("word distance is infinite");
    return *r_;
}

std::strong_ordering WordDistance::operator<=>(const WordDistance& o) const
{
    if (r_ && o.r_)
        return *r_ <=> *o.r_;
    if (!r_ && !o.r_)
        return std::strong_ordering::equal;
    return r_ ? std::strong_ordering::less : std::strong_ordering::greater;
}

std::string to_string(const WordDistance& d)
{
    return d.finite() ? std::to_string(d.value()) : std::string("inf");
}

namespace {

// Abelianized coordinates used for the span test; empty when not applicable.
std::vector<std::int64_t> abelian_coords(const GroupModel& g, const Element& e)
{
    if (g.kind() == GroupKind::Zd)
        return std::vector<std::int64_t>(e.c.begin(), e.c.begin() + g.rank());
    if (g.kind() == GroupKind::Heisenberg3)
        return {e.c[0], e.c[1]};
    return {};
}

std::vector<std::vector<std::int64_t>> echelon(std::vector<std::vector<std::int64_t>> rows, std::size_t dim)
{
    std::size_t top = 0;
    for (std::size_t col = 0; col < dim && top < rows.size(); ++col) {
        for (;;) {
            std::size_t best = rows.size();
            for (std::size_t r = top; r < rows.size(); ++r)
                if (rows[r][col] != 0 && (best == rows.size() || std::llabs(rows[r][col]) < std::llabs(rows[best][col])))
                    best = r;
            if (best == rows.size())
                break;
            std::swap(rows[top], rows[best]);
            bool clean = true;
            for (std::size_t r = top + 1; r < rows.size(); ++r) {
                if (rows[r][col] == 0)
                    continue;
                const std::int64_t q = rows[r][col] / rows[top][col];
                for (std::size_t c = 0; c < dim; ++c)
                    rows[r][c] -= q * rows[top][c];
                if (rows[r][col] != 0)
                    clean = false;
            }
            if (clean) {
                ++top;
                break;
            }
        }
    }
    rows.resize(top);
    return rows;
}

} // namespace

WordMetric::WordMetric(GroupModel g, GenSet k) : group_(std::move(g)), gens_(std::move(k))
{
    spheres_.push_back({group_.identity()});
    seen_.emplace(group_.identity(), 0);
    total_ = 1;
    std::vector<std::vector<std::int64_t>> rows;
    for (const auto& e : gens_.shape()) {
        auto v = abelian_coords(group_, e);
        if (!v.empty())
            rows.push_back(std::move(v));
    }
    if (!rows.empty()) {
        const std::size_t dim = rows.front().size();
        lattice_ = echelon(std::move(rows), dim);
    }
    if (gens_.size() == 1)
        saturated_ = true;
}

void WordMetric::extend_locked(int n) const
{
    while (static_cast<int>(spheres_.size()) <= n) {
        if (saturated_) {
            spheres_.emplace_back();
            continue;
        }
        std::vector<Element> next;
        const int r = static_cast<int>(spheres_.size());
        for (const auto& s : spheres_.back())
            for (const auto& k : gens_.shape()) {
                Element x = group_.mul(s, k);
                if (seen_.emplace(x, r).second)
                    next.push_back(x);
            }
        total_ += next.size();
        if (total_ > caps().max_ball)
            throw ResourceError("ball of radius " + std::to_string(r) + " exceeds cap of " +
                                std::to_string(caps().max_ball) + " elements");
        std::sort(next.begin(), next.end());
        if (next.empty())
            saturated_ = true;
        spheres_.push_back(std::move(next));
    }
}

const Shape& WordMetric::ball(int n) const
{
    if (n < 0)
        throw PreconditionError("ball radius must be nonnegative");
    std::lock_guard lk(mu_);
    extend_locked(n);
    while (static_cast<int>(balls_.size()) <= n) {
        const int r = static_cast<int>(balls_.size());
        std::vector<Element> v;
        if (r > 0)
            v = balls_.back().elements();
        const auto& sp = spheres_[r];
        std::vector<Element> merged;
        merged.reserve(v.size() + sp.size());
        std::merge(v.begin(), v.end(), sp.begin(), sp.end(), std::back_inserter(merged));
        balls_.push_back(Shape::from_sorted(std::move(merged)));
    }
    return balls_[n];
}

std::size_t WordMetric::ball_size(int n) const
{
    if (n < 0)
        throw PreconditionError("ball radius must be nonnegative");
    std::lock_guard lk(mu_);
    extend_locked(n);
    std::size_t s = 0;
    for (int r = 0; r <= n; ++r)
        s += spheres_[r].size();
    return s;
}

const std::vector<Element>& WordMetric::sphere(int n) const
{
    if (n < 0)
        throw PreconditionError("sphere radius must be nonnegative");
    std::lock_guard lk(mu_);
    extend_locked(n);
    return spheres_[n];
}

bool WordMetric::outside_span(const Element& g) const
{
    auto v = abelian_coords(group_, g);
    if (v.empty())
        return false;
    if (lattice_.empty())
        return std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; });
    for (const auto& row : lattice_) {
        std::size_t col = 0;
        while (row[col] == 0)
            ++col;
        if (v[col] % row[col] != 0)
            return true;
        const std::int64_t q = v[col] / row[col];
        for (std::size_t c = 0; c < v.size(); ++c)
            v[c] -= q * row[c];
    }
    return std::any_of(v.begin(), v.end(), [](auto x) { return x != 0; });
}

WordDistance WordMetric::norm(const Element& g) const
{
    if (!group_.is_valid(g))
        throw PreconditionError("not a valid " + group_.name() + " element");
    if (outside_span(g))
        return kInfinite;
    std::lock_guard lk(mu_);
    for (;;) {
        if (auto it = seen_.find(g); it != seen_.end())
            return it->second;
        if (saturated_)
            return kInfinite;
        extend_locked(static_cast<int>(spheres_.size()));
    }
}

WordDistance WordMetric::dist(const Element& g, const Element& h) const
{
    return norm(group_.mul(group_.inv(g), h));
}

WordDistance WordMetric::dist_to_set(const Element& g, const Shape& s) const
{
    if (s.empty())
        throw PreconditionError("dist_to_set of an empty set");
    WordDistance best = kInfinite;
    for (const auto& x : s)
        best = std::min(best, dist(g, x));
    return best;
}

int WordMetric::diameter(const Shape& s) const
{
    int d = 0;
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            d = std::max(d, dist(s[i], s[j]).value());
    return d;
}

int WordMetric::radius_of(const Shape& s) const
{
    int r = 0;
    for (const auto& x : s)
        r = std::max(r, norm(x).value());
    return r;
}

double doubling_constant(const WordMetric& m, int n_max)
{
    if (n_max < 1)
        throw PreconditionError("doubling_constant needs n_max >= 1");
    double c = 0;
    for (int n = 1; n <= n_max; ++n)
        c = std::max(c, static_cast<double>(m.ball_size(2 * n)) / static_cast<double>(m.ball_size(n)));
    return c;
}

double growth_order_estimate(const WordMetric& m, int n_max)
{
    if (n_max < 4)
        throw PreconditionError("growth_order_estimate needs n_max >= 4");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (int n = n_max / 2; n <= n_max; ++n) {
        const double x = std::log(static_cast<double>(n));
        const double y = std::log(static_cast<double>(m.ball_size(n)));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++cnt;
    }
    return (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
}

} // namespace gshift
