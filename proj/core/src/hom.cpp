#include "gshift/hom.hpp"

#include "gshift/error.hpp"
#include "gshift/runtime.hpp"
#include "gshift/solver.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace gshift {

std::string to_string(HomMode m) { return m == HomMode::Theorem ? "theorem" : "demo"; }

HomParams HomParams::theorem(const WordMetric& k, int horizon)
{
    HomParams p;
    p.mode = HomMode::Theorem;
    p.c0 = doubling_constant(k, horizon);
    p.m0 = static_cast<int>(std::ceil(p.c0 * p.c0 - 1e-9));
    p.n0 = 3 * *p.m0;
    return p;
}

HomParams HomParams::demo(int n0, std::optional<int> m0)
{
    HomParams p;
    p.mode = HomMode::Demo;
    p.n0 = n0;
    p.m0 = m0;
    return p;
}

namespace {

// Rank ≤ 2 torus: A split into columns of equal first coordinate. The
// sorted a⁻¹A is a rotation of the columns, each rotated at a's second
// coordinate, so translates are generated in order without sorting.
class TorusColumns {
public:
    TorusColumns(const GroupModel& g, const Shape& a) : a_(a)
    {
        m0_ = g.moduli()[0];
        m1_ = g.rank() == 2 ? g.moduli()[1] : 1;
        col_of_.resize(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == 0 || a[i][0] != a[i - 1][0])
                begin_.push_back(i);
            col_of_[i] = begin_.size() - 1;
        }
        begin_.push_back(a.size());
    }

    std::size_t columns() const { return begin_.size() - 1; }

    // First index in column c with second coordinate >= v, or the column end.
    std::size_t seek(std::size_t c, std::int64_t v) const
    {
        auto it = std::lower_bound(a_.begin() + begin_[c], a_.begin() + begin_[c + 1], v,
                                   [](const Element& x, std::int64_t y) { return x[1] < y; });
        return static_cast<std::size_t>(it - a_.begin());
    }

    Element least_nonidentity(std::size_t i) const
    {
        const std::size_t c = col_of_[i];
        const std::size_t b = begin_[c], e = begin_[c + 1];
        Element d{};
        if (e - b >= 2) {
            const std::int64_t next = i + 1 < e ? a_[i + 1][1] : a_[b][1] + m1_;
            d.c[1] = next - a_[i][1];
            return d;
        }
        const std::size_t cn = (c + 1) % columns();
        d.c[0] = ((a_[begin_[cn]][0] - a_[i][0]) % m0_ + m0_) % m0_;
        const std::size_t p = seek(cn, a_[i][1]);
        d.c[1] = p < begin_[cn + 1] ? a_[p][1] - a_[i][1] : a_[begin_[cn]][1] + m1_ - a_[i][1];
        return d;
    }

    // Elements of a⁻¹A in ascending order.
    class Walk {
    public:
        Walk(const TorusColumns& t, std::size_t i) : t_(t), a_(t.a_[i]), col_(t.col_of_[i]) { enter(); }
        Element next()
        {
            const Element& x = t_.a_[pos_];
            Element d{};
            d.c[0] = ((x[0] - a_[0]) % t_.m0_ + t_.m0_) % t_.m0_;
            d.c[1] = ((x[1] - a_[1]) % t_.m1_ + t_.m1_) % t_.m1_;
            if (++pos_ == t_.begin_[col_ + 1])
                pos_ = t_.begin_[col_];
            if (pos_ == start_) {
                col_ = (col_ + 1) % t_.columns();
                enter();
            }
            return d;
        }

    private:
        void enter()
        {
            start_ = t_.seek(col_, a_[1]);
            if (start_ == t_.begin_[col_ + 1])
                start_ = t_.begin_[col_];
            pos_ = start_;
        }
        const TorusColumns& t_;
        Element a_;
        std::size_t col_, start_ = 0, pos_ = 0;
    };

    // Sign of a_i⁻¹A compared with a_j⁻¹A.
    int compare(std::size_t i, std::size_t j) const
    {
        Walk wi(*this, i), wj(*this, j);
        for (std::size_t k = 0; k < a_.size(); ++k) {
            const Element x = wi.next(), y = wj.next();
            if (x != y)
                return x < y ? -1 : 1;
        }
        return 0;
    }

private:
    const Shape& a_;
    std::int64_t m0_, m1_;
    std::vector<std::size_t> begin_;
    std::vector<std::size_t> col_of_;
};

struct Translated {
    Shape a, f;
    std::vector<Symbol> v;
    auto operator<=>(const Translated&) const = default;
};

Translated translate_tuple(const GroupModel& g, const Element& by, const Shape& a, const Pattern& v)
{
    const Pattern tv = translate(g, by, v);
    return {translate(g, by, a), tv.shape(), tv.symbols()};
}

std::uint64_t mix(std::uint64_t h, std::uint64_t x)
{
    h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h * 0xff51afd7ed558ccdull;
}

} // namespace

Element canonical_anchor(const GroupModel& g, const Shape& a, const Shape& f, const Pattern& v)
{
    if (a.empty())
        throw PreconditionError("extension tuple needs a nonempty A");
    if (v.shape() != f)
        throw PreconditionError("extension tuple: v must be a pattern on F");
    if (a.size() == 1)
        return a[0];
    // Translation preserves the order of Zd, so the least a⁻¹A starts
    // furthest below e.
    if (g.kind() == GroupKind::Zd)
        return a[a.size() - 1];
    // Otherwise every a⁻¹A contains e; compare the next element first.
    if (g.kind() == GroupKind::Torus && g.rank() <= 2) {
        const TorusColumns cols(g, a);
        std::vector<Element> key(a.size());
        for (std::size_t i = 0; i < a.size(); ++i)
            key[i] = cols.least_nonidentity(i);
        const Element best = *std::min_element(key.begin(), key.end());
        std::optional<std::size_t> pick;
        std::vector<std::size_t> tied;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (key[i] != best)
                continue;
            const int c = pick ? cols.compare(i, *pick) : -1;
            if (c < 0) {
                pick = i;
                tied.clear();
            } else if (c == 0) {
                tied.push_back(i);
            }
        }
        if (tied.empty())
            return a[*pick];
        // A is periodic; the translates of (F, v) decide.
        Translated pick_t = translate_tuple(g, g.inv(a[*pick]), a, v);
        for (auto i : tied) {
            Translated t = translate_tuple(g, g.inv(a[i]), a, v);
            if (t < pick_t) {
                pick = i;
                pick_t = std::move(t);
            }
        }
        return a[*pick];
    }
    std::vector<Element> key(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Element inv = g.inv(a[i]);
        bool first = true;
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (j == i)
                continue;
            const Element x = g.mul(inv, a[j]);
            if (first || x < key[i])
                key[i] = x;
            first = false;
        }
    }
    const Element best = *std::min_element(key.begin(), key.end());
    std::optional<std::size_t> pick;
    Translated pick_t;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (key[i] != best)
            continue;
        Translated t = translate_tuple(g, g.inv(a[i]), a, v);
        if (!pick || t < pick_t) {
            pick = i;
            pick_t = std::move(t);
        }
    }
    return a[*pick];
}

ExtensionTable::ExtensionTable(const SftSpec& y, const WordMetric& k, int bound) : y_(&y), k_(&k), bound_(bound)
{
    if (!(k.group() == y.group()))
        throw PreconditionError("extension table: metric and spec live on different groups");
}

std::size_t ExtensionTable::size() const
{
    std::lock_guard lock(mu_);
    return entries_;
}

std::size_t ExtensionTable::hits() const
{
    std::lock_guard lock(mu_);
    return hits_;
}

Pattern ExtensionTable::extend(const Shape& a, const Shape& f, const Pattern& v)
{
    const auto& g = y_->group();
    if (bound_ >= 0) {
        const int ra = k_->radius_of(a);
        const int rf = f.empty() ? 0 : k_->radius_of(f);
        if (ra > bound_ || rf > bound_)
            throw PreconditionError("extension tuple leaves K^" + std::to_string(bound_) + " (radius " +
                                    std::to_string(std::max(ra, rf)) + ")");
    }
    const Element anchor = canonical_anchor(g, a, f, v);
    const Element back = g.inv(anchor);
    Translated t = translate_tuple(g, back, a, v);
    Canon c{std::move(t.a), std::move(t.f), std::move(t.v)};
    std::uint64_t h = mix(c.a.size(), c.f.size());
    ElementHash eh;
    for (const auto& e : c.a)
        h = mix(h, eh(e));
    for (const auto& e : c.f)
        h = mix(h, eh(e));
    for (auto s : c.v)
        h = mix(h, s);
    {
        std::lock_guard lock(mu_);
        auto it = memo_.find(h);
        if (it != memo_.end())
            for (const auto& [key, val] : it->second)
                if (key == c) {
                    ++hits_;
                    return translate(g, anchor, val);
                }
    }
    Pattern p = compute(c);
    {
        std::lock_guard lock(mu_);
        auto& bucket = memo_[h];
        if (std::none_of(bucket.begin(), bucket.end(), [&](const auto& kv) { return kv.first == c; })) {
            bucket.emplace_back(c, p);
            ++entries_;
        }
    }
    return translate(g, anchor, p);
}

Pattern ExtensionTable::compute(const Canon& c) const
{
    const auto& g = y_->group();
    const Shape af = shape_union(c.a, c.f);
    const Shape dom_shape = product(g, af, y_->witness());
    require_cells(dom_shape.size(), "extension domain");
    const Region dom(g, dom_shape);
    const ConstraintSystem cs(*y_, dom);
    std::vector<int> values(dom.size(), -1);
    for (std::size_t i = 0; i < c.f.size(); ++i)
        values[dom.index_of(c.f[i])] = c.v[i];
    std::vector<std::uint32_t> order;
    std::vector<std::vector<Symbol>> cand;
    const auto syms = all_symbols(y_->alphabet_size());
    for (std::size_t i = 0; i < dom.size(); ++i)
        if (values[i] < 0) {
            order.push_back(static_cast<std::uint32_t>(i));
            cand.push_back(syms);
        }
    Backtracker bt(cs, std::move(order), std::move(cand));
    bt.set_forward_check(true);
    if (!bt.solve(values, true))
        throw FillFailure("no locally allowed extension of a " + std::to_string(c.f.size()) + "-cell pattern to " +
                          std::to_string(dom.size()) + " cells for " + y_->name());
    std::vector<Symbol> out;
    out.reserve(c.a.size());
    for (const auto& e : c.a)
        out.push_back(static_cast<Symbol>(values[dom.index_of(e)]));
    return Pattern(c.a, std::move(out));
}

Pattern extend_tuple(ExtensionTable& table, const Shape& a, const Shape& f, const Pattern& v)
{
    return table.extend(a, f, v);
}

bool HomRun::lemmas_ok() const
{
    if (all_of_g_violations)
        return false;
    return std::all_of(stages.begin(), stages.end(), [](const StageState& s) { return s.report.ok(); });
}

namespace {

Tri tri_or(Tri a, Tri b)
{
    if (a == Tri::Yes || b == Tri::Yes)
        return Tri::Yes;
    if (a == Tri::Maybe || b == Tri::Maybe)
        return Tri::Maybe;
    return Tri::No;
}

struct Near {
    std::uint32_t center;
    int dist;
};

// w_S on F_S and g⁻¹-translated tuple for one tile.
Pattern fill_tile(const Region& reg, const GroupModel& g, ExtensionTable& table, const StageTile& tile,
                  const std::vector<int>* prev_value, const Element& anchor)
{
    const Element back = g.inv(anchor);
    std::vector<Element> ae;
    ae.reserve(tile.cells.size());
    for (auto j : tile.cells)
        ae.push_back(g.mul(back, reg.at(j)));
    std::vector<std::pair<Element, Symbol>> fe;
    fe.reserve(tile.f_cells.size());
    for (auto j : tile.f_cells)
        fe.emplace_back(g.mul(back, reg.at(j)), static_cast<Symbol>((*prev_value)[j]));
    std::sort(fe.begin(), fe.end());
    std::vector<Element> fs;
    std::vector<Symbol> vs;
    for (auto& [e, s] : fe) {
        fs.push_back(e);
        vs.push_back(s);
    }
    Shape fshape = Shape::from_sorted(std::move(fs));
    Pattern v(fshape, std::move(vs));
    const Pattern p = table.extend(Shape::from_unsorted(std::move(ae)), fshape, v);
    return translate(g, anchor, p);
}

std::string lemma_message(const HomRun& run)
{
    for (const auto& s : run.stages) {
        const auto& r = s.report;
        auto at = [&](const char* what, std::size_t n) {
            return "stage " + std::to_string(r.m) + ": " + what + " fails at " + std::to_string(n) + " cells";
        };
        if (r.disjoint_violations)
            return at("lemma Disjoint", r.disjoint_violations);
        if (r.contains_u_violations)
            return at("lemma Contains (U)", r.contains_u_violations);
        if (r.contains_v_violations)
            return at("lemma Contains (V)", r.contains_v_violations);
        if (r.u_forbidden)
            return at("local allowedness of u_m", r.u_forbidden);
        if (r.overwrite_violations)
            return at("agreement with v_{m-1}", r.overwrite_violations);
    }
    return "lemma AllOfG fails at " + std::to_string(run.all_of_g_violations) + " cells of the safe region (m0=" +
           std::to_string(run.params.m0.value_or(0)) + ", n0=" + std::to_string(run.params.n0) + ")";
}

} // namespace

HomRun run_stages(const TilingWindow& t, const WordMetric& k, HomParams params, ExtensionTable* table,
                  const HomOptions& opt)
{
    const auto& g = t.group;
    if (!(k.group() == g))
        throw PreconditionError("metric and tiling live on different groups");
    const int n0 = params.n0;
    if (n0 < 1)
        throw PreconditionError("n0 must be positive");
    if (t.tile != k.ball(n0))
        throw PreconditionError("the tiling must use F = K^n0");
    const bool fill = table && !opt.shapes_only;
    if (fill) {
        if (!(table->spec().group() == g))
            throw PreconditionError("target spec lives on a different group");
        if (!k.generators().shape().includes(table->spec().witness()))
            throw PreconditionError("metric generators must contain the target's FEP witness");
    }
    const Region reg(g, t.window);
    const std::size_t n = reg.size();
    const Adjacency adj(reg, k.generators());
    std::vector<char> unknown(n);
    for (std::size_t i = 0; i < n; ++i)
        unknown[i] = t.status[i] == TileStatus::Unknown;
    // counts of centers within r of g are exact iff r < reach[g]
    const auto reach = adj.distance_to_sources(unknown);

    std::vector<std::uint32_t> centers;
    for (std::size_t i = 0; i < n; ++i)
        if (t.status[i] == TileStatus::Center)
            centers.push_back(static_cast<std::uint32_t>(i));

    if (!params.m0) {
        if (params.mode == HomMode::Theorem)
            throw PreconditionError("theorem mode needs m0");
        const int r = 3 * n0;
        std::vector<int> deg(n, 0);
        for (auto c : centers)
            for (const auto& s : k.ball(r)) {
                const auto j = reg.neighbor(c, s);
                if (j != Region::npos)
                    ++deg[j];
            }
        int m0 = 0;
        bool any = false;
        for (std::size_t i = 0; i < n; ++i)
            if (r < reach[i]) {
                any = true;
                m0 = std::max(m0, deg[i]);
            }
        if (!any)
            throw SafeRegionError("no cell of the window has a final deg_n0; enlarge the window");
        params.m0 = std::max(m0, 1);
    }
    const int m0 = *params.m0;
    if (m0 < 1)
        throw PreconditionError("m0 must be positive");
    if (params.mode == HomMode::Theorem) {
        if (n0 != 3 * m0)
            throw PreconditionError("theorem mode needs n0 = 3m0");
        if (m0 + 1e-9 < params.c0 * params.c0)
            throw PreconditionError("theorem mode needs m0 >= C0^2");
    }

    const int rmax = 2 * n0 + 3 * m0;
    std::vector<std::vector<Near>> near(n);
    for (auto c : centers)
        for (int d = 0; d <= rmax; ++d)
            for (const auto& s : k.sphere(d)) {
                const auto j = reg.neighbor(c, s);
                if (j != Region::npos)
                    near[j].push_back({c, d});
            }
    auto within = [&](std::uint32_t j, std::uint32_t c, int r) {
        const auto& l = near[j];
        auto it = std::lower_bound(l.begin(), l.end(), c, [](const Near& a, std::uint32_t v) { return a.center < v; });
        return it != l.end() && it->center == c && it->dist <= r;
    };
    auto count = [&](std::uint32_t j, int r) {
        int c = 0;
        for (const auto& e : near[j])
            c += e.dist <= r;
        return c;
    };

    const auto& kk = k.ball(2);
    const auto& wit = fill ? table->spec().witness() : Shape{};

    HomRun run;
    run.params = params;
    run.tiling = t;
    std::vector<Tri> v_prev(n, Tri::No);
    std::vector<int> val_prev(n, -1);

    for (int m = 1; m <= m0; ++m) {
        check_clock("hom stages");
        StageState st;
        st.m = m;
        st.report.m = m;
        const int rr = 2 * n0 + 3 * m - 3, dd = 2 * n0 + 3 * m - 1;
        st.t.assign(n, Tri::No);
        std::vector<int> tile_of(n, -1);
        std::map<std::vector<std::uint32_t>, int> ids;
        // g ∈ T_S ⇔ N_R(g) = S, |S| = m = deg_{3m-1}(g)
        for (std::uint32_t j = 0; j < n; ++j) {
            const int cr = count(j, rr), cd = count(j, dd);
            Tri v;
            if (cd > m)
                v = Tri::No;
            else if (dd < reach[j])
                v = cr == m && cd == m ? Tri::Yes : Tri::No;
            else if (rr < reach[j] && cr < m)
                v = Tri::No;
            else
                v = Tri::Maybe;
            st.t[j] = v;
            if (v != Tri::Yes)
                continue;
            std::vector<std::uint32_t> s;
            for (const auto& e : near[j])
                if (e.dist <= rr)
                    s.push_back(e.center);
            auto [it, fresh] = ids.try_emplace(std::move(s), static_cast<int>(st.tiles.size()));
            if (fresh) {
                st.tiles.emplace_back();
                st.tiles.back().centers = it->first;
            }
            tile_of[j] = it->second;
            st.tiles[it->second].cells.push_back(j);
        }

        parallel_for(st.tiles.size(), [&](std::size_t ti) {
            auto& tile = st.tiles[ti];
            bool complete = true;
            for (const auto& s : k.ball(rr)) {
                const auto j = reg.neighbor(tile.centers[0], s);
                if (j == Region::npos) {
                    complete = false;
                    break;
                }
                bool inside = true;
                for (std::size_t q = 1; q < tile.centers.size() && inside; ++q)
                    inside = within(j, tile.centers[q], rr);
                if (inside && st.t[j] == Tri::Maybe) {
                    complete = false;
                    break;
                }
            }
            tile.complete = complete;
            bool known = complete;
            std::vector<std::uint32_t> fc;
            for (std::size_t q = 0; q < tile.centers.size() && known; ++q)
                for (const auto& s : k.ball(rr)) {
                    const auto j = reg.neighbor(tile.centers[q], s);
                    if (j == Region::npos || v_prev[j] == Tri::Maybe || (v_prev[j] == Tri::Yes && val_prev[j] < 0)) {
                        known = false;
                        break;
                    }
                    if (v_prev[j] == Tri::Yes)
                        fc.push_back(j);
                }
            std::sort(fc.begin(), fc.end());
            fc.erase(std::unique(fc.begin(), fc.end()), fc.end());
            tile.f_cells = std::move(fc);
            tile.anchor = reg.at(tile.cells.front());
            if (known && fill) {
                tile.p = fill_tile(reg, g, *table, tile, &val_prev, tile.anchor);
                tile.filled = true;
            }
        });

        st.u.assign(n, Tri::No);
        st.value.assign(n, -1);
        for (std::uint32_t j = 0; j < n; ++j) {
            st.u[j] = tri_or(st.t[j], v_prev[j]);
            int pv = -1;
            if (st.t[j] == Tri::Yes) {
                const auto& tile = st.tiles[tile_of[j]];
                if (tile.filled)
                    pv = tile.p.at(reg.at(j));
            }
            if (v_prev[j] == Tri::Yes) {
                st.value[j] = val_prev[j];
                if (pv >= 0 && val_prev[j] >= 0 && pv != val_prev[j])
                    ++st.report.overwrite_violations;
            } else if (st.t[j] == Tri::Yes) {
                st.value[j] = pv;
            }
        }
        st.v.assign(n, Tri::No);
        for (std::uint32_t j = 0; j < n; ++j) {
            Tri v = Tri::Yes;
            for (std::size_t q = 0; q < adj.degree() && v != Tri::No; ++q) {
                const auto h = adj.next(j, q);
                const Tri u = h == Region::npos ? Tri::Maybe : st.u[h];
                if (u == Tri::No)
                    v = Tri::No;
                else if (u == Tri::Maybe)
                    v = Tri::Maybe;
            }
            st.v[j] = v;
        }

        auto& rep = st.report;
        rep.tiles = st.tiles.size();
        for (const auto& tile : st.tiles)
            rep.tiles_filled += tile.filled;
        for (std::uint32_t j = 0; j < n; ++j) {
            rep.u_yes += st.u[j] == Tri::Yes;
            rep.u_maybe += st.u[j] == Tri::Maybe;
            rep.v_yes += st.v[j] == Tri::Yes;
            rep.v_maybe += st.v[j] == Tri::Maybe;
            if (st.t[j] == Tri::Yes) {
                ++rep.disjoint_checked;
                for (const auto& e : kk) {
                    const auto h = reg.neighbor(j, e);
                    if (h != Region::npos && st.t[h] == Tri::Yes && tile_of[h] != tile_of[j]) {
                        ++rep.disjoint_violations;
                        break;
                    }
                }
            }
            // E_{m,3m-1} ⊆ U_m and E_{m,3m} ⊆ V_m where both sides are final
            if (dd < reach[j] && count(j, dd) <= m && st.u[j] != Tri::Maybe) {
                ++rep.contains_u_checked;
                rep.contains_u_violations += st.u[j] == Tri::No;
            }
            if (dd + 1 < reach[j] && count(j, dd + 1) <= m && st.v[j] != Tri::Maybe) {
                ++rep.contains_v_checked;
                rep.contains_v_violations += st.v[j] == Tri::No;
            }
        }
        if (fill) {
            std::vector<Symbol> w(wit.size());
            for (std::uint32_t j = 0; j < n; ++j) {
                bool full = true;
                for (std::size_t q = 0; q < wit.size() && full; ++q) {
                    const auto h = reg.neighbor(j, wit[q]);
                    full = h != Region::npos && st.u[h] == Tri::Yes && st.value[h] >= 0;
                    if (full)
                        w[q] = static_cast<Symbol>(st.value[h]);
                }
                if (full && table->spec().is_forbidden(w))
                    ++rep.u_forbidden;
            }
        }

        v_prev = st.v;
        for (std::uint32_t j = 0; j < n; ++j)
            val_prev[j] = st.v[j] == Tri::Yes ? st.value[j] : -1;
        run.stages.push_back(std::move(st));
    }

    run.safety_radius = 0;
    for (std::size_t j = 0; j < n; ++j) {
        const bool open = v_prev[j] == Tri::Maybe || (fill && v_prev[j] == Tri::Yes && val_prev[j] < 0);
        if (open)
            run.safety_radius = std::max(run.safety_radius, t.border_distance[j]);
    }
    std::vector<Element> oe;
    std::vector<Symbol> os;
    for (std::size_t j = 0; j < n; ++j) {
        if (!run.safe(j))
            continue;
        ++run.safe_cells;
        if (v_prev[j] == Tri::No) {
            ++run.all_of_g_violations;
        } else if (fill) {
            oe.push_back(reg.at(j));
            os.push_back(static_cast<Symbol>(val_prev[j]));
        }
    }
    run.output = Pattern(Shape::from_sorted(std::move(oe)), std::move(os));
    if (opt.abort_on_violation && !run.lemmas_ok())
        throw StageLemmaViolation(lemma_message(run));
    return run;
}

HomRun build_stages(const TilingWindow& t, const WordMetric& k, const HomParams& params)
{
    HomOptions opt;
    opt.shapes_only = true;
    opt.abort_on_violation = params.mode == HomMode::Demo;
    return run_stages(t, k, params, nullptr, opt);
}

HomRun construct_hom(const PointWindow& x, const SeparationCover& cover, const SftSpec& y, const WordMetric& k,
                     const HomParams& params, const HomOptions& opt, ExtensionTable* table)
{
    if (!(y.group() == x.group) || !(k.group() == x.group))
        throw PreconditionError("sample, target and metric must share one group");
    const TilingWindow t = quasi_tile(x, cover, k.ball(params.n0));
    std::optional<ExtensionTable> own;
    if (!table) {
        own.emplace(y, k, 10 * params.n0);
        table = &*own;
    }
    return run_stages(t, k, params, table, opt);
}

Pattern recompute_tile(const HomRun& run, ExtensionTable& table, const WordMetric& k, int m, std::size_t tile,
                       const Element& g)
{
    if (m < 1 || m > static_cast<int>(run.stages.size()))
        throw PreconditionError("no stage " + std::to_string(m));
    const auto& st = run.stages[m - 1];
    if (tile >= st.tiles.size() || !st.tiles[tile].filled)
        throw PreconditionError("tile is not filled");
    const auto& ts = st.tiles[tile];
    const Region reg(run.tiling.group, run.tiling.window);
    const auto gi = reg.index_of(g);
    if (gi == Region::npos || !std::binary_search(ts.cells.begin(), ts.cells.end(), gi))
        throw PreconditionError("anchor is not in T_S");
    (void)k;
    std::vector<int> prev(reg.size(), -1);
    if (m >= 2) {
        const auto& ps = run.stages[m - 2];
        for (std::size_t j = 0; j < reg.size(); ++j)
            if (ps.v[j] == Tri::Yes)
                prev[j] = ps.value[j];
    }
    return fill_tile(reg, run.tiling.group, table, ts, &prev, g);
}

Shape HomRun::yes_cells(const std::vector<Tri>& set) const
{
    std::vector<Element> v;
    for (std::size_t i = 0; i < set.size(); ++i)
        if (set[i] == Tri::Yes)
            v.push_back(tiling.window[i]);
    return Shape::from_sorted(std::move(v));
}

Pattern HomRun::v_pattern(int m) const
{
    if (m < 1 || m > static_cast<int>(stages.size()))
        throw PreconditionError("no stage " + std::to_string(m));
    const auto& st = stages[m - 1];
    std::vector<Element> es;
    std::vector<Symbol> ss;
    for (std::size_t i = 0; i < st.v.size(); ++i)
        if (st.v[i] == Tri::Yes && st.value[i] >= 0) {
            es.push_back(tiling.window[i]);
            ss.push_back(static_cast<Symbol>(st.value[i]));
        }
    return Pattern(Shape::from_sorted(std::move(es)), std::move(ss));
}

std::vector<StageTiles> stagem_tiles(const TilingWindow& t, const WordMetric& k, int n0, int m)
{
    if (m < 1)
        throw PreconditionError("stages start at m = 1");
    HomOptions opt;
    opt.shapes_only = true;
    opt.abort_on_violation = false;
    const HomRun run = run_stages(t, k, HomParams::demo(n0, m), nullptr, opt);
    std::vector<StageTiles> out;
    for (const auto& tile : run.stages.back().tiles) {
        StageTiles s;
        std::vector<Element> c, x;
        for (auto i : tile.centers)
            c.push_back(t.window[i]);
        for (auto i : tile.cells)
            x.push_back(t.window[i]);
        s.centers = Shape::from_sorted(std::move(c));
        s.cells = Shape::from_sorted(std::move(x));
        s.complete = tile.complete;
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<StageTiles> stage1_tiles(const TilingWindow& t, const WordMetric& k, int n0)
{
    return stagem_tiles(t, k, n0, 1);
}

BlockCodeRadius block_code_radius(const HomParams& params, const TilingWindow& t)
{
    BlockCodeRadius r;
    r.phi1 = 10LL * params.n0;
    r.phi0 = t.conservative_radius;
    r.total = r.phi1 + r.phi0;
    return r;
}

} // namespace gshift
