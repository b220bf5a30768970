#include <doctest.h>

#include "gshift/error.hpp"
#include "gshift/hom.hpp"
#include "gshift/runtime.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <random>
#include <set>

using namespace gshift;

namespace {

const GroupModel Z2 = GroupModel::zd(2);

long long l1(const Element& a, const Element& b) { return std::llabs(a[0] - b[0]) + std::llabs(a[1] - b[1]); }

// Tiling with the given centers, every other cell of the box final.
TilingWindow synthetic(const WordMetric& m, int side, const std::vector<Element>& centers, int n0)
{
    TilingWindow t;
    t.group = Z2;
    t.window = box_shape(Z2, {0, 0}, {side, side});
    t.tile = m.ball(n0);
    t.separation = product(Z2, t.tile, inverse(Z2, t.tile));
    const Region reg(Z2, t.window);
    t.status.assign(reg.size(), TileStatus::Never);
    t.stage.assign(reg.size(), 0);
    for (const auto& c : centers)
        t.status[reg.index_of(c)] = TileStatus::Center;
    t.border_distance = distance_to_sources(reg, m.generators(), std::vector<char>(reg.size(), 0));
    return t;
}

// Greedy maximal packing in random order: centers pairwise farther than
// 2n₀ apart (B_{n₀}-disjoint) and every cell within 2n₀ of one (covering).
std::vector<Element> random_packing(int side, int n0, std::uint64_t seed)
{
    std::vector<Element> cells;
    for (int i = 0; i < side; ++i)
        for (int j = 0; j < side; ++j)
            cells.push_back(make_element({i, j}));
    std::mt19937_64 rng(seed);
    std::shuffle(cells.begin(), cells.end(), rng);
    std::vector<Element> out;
    for (const auto& c : cells)
        if (std::none_of(out.begin(), out.end(), [&](const Element& d) { return l1(c, d) <= 2 * n0; }))
            out.push_back(c);
    return out;
}

// g ∈ T_S ⇔ S = {c : ρ(g,c) ≤ 2n₀+3m−3}, |S| = m = |{c : ρ(g,c) ≤ 2n₀+3m−1}|
std::optional<std::vector<Element>> oracle_tile(const std::vector<Element>& centers, const Element& g, int n0, int m)
{
    std::vector<Element> s;
    int d = 0;
    for (const auto& c : centers) {
        if (l1(g, c) <= 2 * n0 + 3 * m - 3)
            s.push_back(c);
        d += l1(g, c) <= 2 * n0 + 3 * m - 1;
    }
    if (static_cast<int>(s.size()) != m || d != m)
        return std::nullopt;
    std::sort(s.begin(), s.end());
    return s;
}

int oracle_deg(const std::vector<Element>& centers, const Element& g, int n0, int n)
{
    int d = 0;
    for (const auto& c : centers)
        d += l1(g, c) <= 2 * n0 + n;
    return d;
}

Pattern random_independent(const Shape& s, const SftSpec& y, std::mt19937_64& rng)
{
    for (;;) {
        std::vector<Symbol> v(s.size());
        for (auto& x : v)
            x = rng() % 4 == 0;
        Pattern p(s, std::move(v));
        if (allowed_with_margin(y, p, 1))
            return p;
    }
}

struct TorusDemo {
    GroupModel g = GroupModel::torus({96, 96});
    WordMetric m{g, GenSet::standard(g)};
    PointWindow x = PointWindow::random(g, box_shape(g, {0, 0}, {96, 96}), 2, 7);
    SeparationCover cover = build_cover(x, m, m.ball(24), default_separation_radius(m, m.ball(24)));
    SftSpec y = builtin_spec(g, "hardsquare-safe");
    ExtensionTable table{y, m, 240};
    HomRun run = construct_hom(x, cover, y, m, HomParams::demo(24), {}, &table);
};

TorusDemo& torus_demo()
{
    static TorusDemo d;
    return d;
}

} // namespace

TEST_CASE("extend_tuple examples")
{
    WordMetric m(Z2, GenSet::standard(Z2));
    const Shape e = Shape::from_sorted({Z2.identity()});

    const auto full = builtin_spec(Z2, "full:2");
    ExtensionTable tf(full, m, 60);
    CHECK(extend_tuple(tf, e, Shape{}, Pattern{}) == Pattern::constant(e, 0));

    const auto hs = builtin_spec(Z2, "hardsquare-safe");
    ExtensionTable th(hs, m, 60);
    const Shape f = Shape::from_sorted({make_element({2, 0})});
    const Pattern v = Pattern::constant(f, 1);
    const Pattern p = extend_tuple(th, m.ball(1), f, v);
    CHECK(p.shape() == m.ball(1));
    CHECK(p.at(make_element({1, 0})) == 0);
    CHECK(allowed_with_margin(hs, union_patterns(p, v), 2));

    CHECK_THROWS_AS(extend_tuple(th, Shape{}, Shape{}, Pattern{}), PreconditionError);
    ExtensionTable tight(hs, m, 1);
    CHECK_THROWS_AS(extend_tuple(tight, m.ball(2), Shape{}, Pattern{}), PreconditionError);
    // v itself forbidden: no extension
    const Shape two = Shape::from_sorted({make_element({1, 0}), make_element({2, 0})});
    CHECK_THROWS_AS(extend_tuple(th, e, two, Pattern::constant(two, 1)), FillFailure);
}

TEST_CASE("canonical_anchor matches exhaustive translation")
{
    std::mt19937_64 rng(11);
    const std::vector<GroupModel> groups{Z2, GroupModel::torus({9, 7}), GroupModel::torus({13}),
                                         GroupModel::heisenberg3()};
    for (const auto& g : groups) {
        WordMetric m(g, GenSet::standard(g));
        const auto& ball = m.ball(3);
        for (int trial = 0; trial < 60; ++trial) {
            std::vector<Element> a{g.identity()}, f;
            for (const auto& x : ball) {
                if (rng() % 3 == 0)
                    a.push_back(x);
                else if (rng() % 5 == 0)
                    f.push_back(x);
            }
            const Shape as = Shape::from_unsorted(a);
            Shape fs = shape_difference(Shape::from_unsorted(f), as);
            std::vector<Symbol> vs(fs.size());
            for (auto& s : vs)
                s = rng() % 2;
            const Pattern v(fs, vs);
            // oracle: least (a⁻¹A, a⁻¹F, a⁻¹v) over all a, by full translation
            std::optional<std::tuple<Shape, Shape, std::vector<Symbol>>> best;
            for (const auto& x : as) {
                const auto inv = g.inv(x);
                const Pattern tv = translate(g, inv, v);
                auto t = std::make_tuple(translate(g, inv, as), tv.shape(), tv.symbols());
                if (!best || t < *best)
                    best = t;
            }
            const auto inv = g.inv(canonical_anchor(g, as, fs, v));
            const Pattern tv = translate(g, inv, v);
            CHECK(std::make_tuple(translate(g, inv, as), tv.shape(), tv.symbols()) == *best);
        }
    }
    // periodic A on a torus: the F-part breaks the tie
    const auto t4 = GroupModel::torus({4});
    const Shape all = Shape::from_unsorted(t4.all_elements());
    const Pattern none;
    const auto a = canonical_anchor(t4, all, Shape{}, none);
    CHECK(all.contains(a));
}

TEST_CASE("extend_tuple is translation equivariant")
{
    std::mt19937_64 rng(5);
    const std::vector<GroupModel> groups{Z2, GroupModel::torus({11, 9}), GroupModel::heisenberg3()};
    for (const auto& g : groups) {
        WordMetric m(g, GenSet::standard(g));
        const auto y = builtin_spec(g, "hardsquare-safe");
        ExtensionTable table(y, m, -1);
        const auto& ball = m.ball(3);
        std::vector<Element> a{g.identity()}, f;
        for (const auto& x : ball) {
            if (rng() % 3 == 0)
                a.push_back(x);
            else if (rng() % 3 == 0)
                f.push_back(x);
        }
        const Shape as = Shape::from_unsorted(a);
        const Shape fs = shape_difference(Shape::from_unsorted(f), as);
        const Pattern v = random_independent(fs, y, rng);
        const Pattern base = extend_tuple(table, as, fs, v);
        CHECK(allowed_with_margin(y, union_patterns(base, v), 2));
        const auto& far = m.ball(8);
        for (int k = 0; k < 100; ++k) {
            const Element h = far[rng() % far.size()];
            const Pattern p = extend_tuple(table, translate(g, h, as), translate(g, h, fs), translate(g, h, v));
            CHECK(p == translate(g, h, base));
        }
        CHECK(table.size() == 1);
        CHECK(table.hits() == 100);
    }
}

TEST_CASE("stage 1 tiles")
{
    WordMetric m(Z2, GenSet::standard(Z2));
    const int n0 = 3;
    SUBCASE("isolated center")
    {
        const Element c = make_element({30, 30});
        const auto t = synthetic(m, 61, {c}, n0);
        const auto tiles = stage1_tiles(t, m, n0);
        REQUIRE(tiles.size() == 1);
        CHECK(tiles[0].complete);
        CHECK(tiles[0].centers == Shape::from_sorted({c}));
        CHECK(tiles[0].cells == translate(Z2, c, m.ball(2 * n0)));
    }
    SUBCASE("tangent tiles")
    {
        const Element c1 = make_element({30, 30}), c2 = make_element({30 + 2 * n0, 30});
        const auto t = synthetic(m, 61, {c1, c2}, n0);
        const auto tiles = stage1_tiles(t, m, n0);
        REQUIRE(tiles.size() == 2);
        std::set<Element> in;
        for (const auto& s : tiles)
            for (const auto& x : s.cells) {
                CHECK(oracle_deg({c1, c2}, x, n0, 2) <= 1);
                in.insert(x);
            }
        // the midline is within 2n₀+2 of both centers
        CHECK(!in.count(make_element({30 + n0, 30})));
        for (const auto& x : t.window)
            if ((l1(x, c1) <= 2 * n0 || l1(x, c2) <= 2 * n0) && oracle_deg({c1, c2}, x, n0, 2) <= 1)
                CHECK(in.count(x));
    }
}

TEST_CASE("stage sets against a distance oracle")
{
    WordMetric m(Z2, GenSet::standard(Z2));
    const int n0 = 3, side = 90, m0 = 4;
    for (std::uint64_t seed : {1, 2, 3}) {
        const auto centers = random_packing(side, n0, seed);
        const auto t = synthetic(m, side, centers, n0);
        HomOptions opt;
        opt.shapes_only = true;
        opt.abort_on_violation = false;
        const HomRun run = run_stages(t, m, HomParams::demo(n0, m0), nullptr, opt);
        REQUIRE(run.stages.size() == m0);
        for (int mm = 1; mm <= m0; ++mm) {
            const auto& st = run.stages[mm - 1];
            const int margin = 2 * n0 + 3 * mm;
            std::size_t checked = 0;
            for (std::size_t i = 0; i < t.window.size(); ++i) {
                if (t.border_distance[i] <= margin)
                    continue;
                ++checked;
                const auto want = oracle_tile(centers, t.window[i], n0, mm);
                CHECK((st.t[i] == Tri::Yes) == want.has_value());
                CHECK(st.t[i] != Tri::Maybe);
            }
            CHECK(checked > 0);
            for (const auto& tile : st.tiles) {
                std::vector<Element> s;
                for (auto c : tile.centers)
                    s.push_back(t.window[c]);
                for (auto c : tile.cells)
                    if (t.border_distance[c] > margin)
                        CHECK(*oracle_tile(centers, t.window[c], n0, mm) == s);
            }
            // nested growth: V_{m-1} ⊆ U_m
            if (mm > 1)
                for (std::size_t i = 0; i < t.window.size(); ++i)
                    if (run.stages[mm - 2].v[i] == Tri::Yes)
                        CHECK(st.u[i] == Tri::Yes);
            // U_1 = E_{1,2} where final
            if (mm == 1)
                for (std::size_t i = 0; i < t.window.size(); ++i)
                    if (t.border_distance[i] > margin)
                        CHECK((st.u[i] == Tri::Yes) == (oracle_deg(centers, t.window[i], n0, 2) <= 1));
            const auto& r = st.report;
            CHECK(r.disjoint_violations == 0);
            CHECK(r.contains_u_violations == 0);
            CHECK(r.contains_v_violations == 0);
            if (mm == 1)
                CHECK(r.contains_u_checked > 0);
        }
    }
    // m above every degree: no S qualifies
    const auto lone = synthetic(m, 61, {make_element({30, 30})}, n0);
    CHECK(stagem_tiles(lone, m, n0, 1).size() == 1);
    CHECK(stagem_tiles(lone, m, n0, 2).empty());
}

TEST_CASE("single isolated center, m0 = 1")
{
    WordMetric m(Z2, GenSet::standard(Z2));
    const int n0 = 3;
    const Element c = make_element({30, 30});
    const auto t = synthetic(m, 61, {c}, n0);
    HomOptions opt;
    opt.shapes_only = true;
    opt.abort_on_violation = false;
    const HomRun run = run_stages(t, m, HomParams::demo(n0, 1), nullptr, opt);
    const Shape tc = translate(Z2, c, m.ball(2 * n0));
    CHECK(run.yes_cells(run.stages[0].v) == interior(Z2, m.generators().shape(), tc));
}

TEST_CASE("theorem parameters")
{
    WordMetric m(Z2, GenSet::standard(Z2));
    const auto p = HomParams::theorem(m);
    CHECK(p.mode == HomMode::Theorem);
    CHECK(p.c0 == doctest::Approx(33025.0 / 8321.0));
    CHECK(*p.m0 == 16);
    CHECK(p.n0 == 48);
    const auto t = synthetic(m, 20, {make_element({10, 10})}, 3);
    HomParams bad = p;
    bad.n0 = 3;
    CHECK_THROWS_AS(build_stages(t, m, bad), PreconditionError);
    HomParams small = HomParams::demo(3, 4);
    small.mode = HomMode::Theorem;
    small.n0 = 12;
    small.c0 = p.c0;
    CHECK_THROWS_AS(build_stages(synthetic(m, 20, {make_element({10, 10})}, 12), m, small), PreconditionError);
    CHECK(block_code_radius(HomParams::demo(6), t).phi1 == 60);
}

TEST_CASE("Z2 rotation demo at n0 = 6")
{
    WordMetric m(Z2, GenSet::standard(Z2));
    const auto x = PointWindow::rotation2d(Z2, box_shape(Z2, {0, 0}, {200, 200}), 0.41421356, 0.73205081);
    const auto cover = build_cover(x, m, m.ball(6), default_separation_radius(m, m.ball(6)));
    const auto t = quasi_tile(x, cover, m.ball(6));
    HomOptions opt;
    opt.shapes_only = true;
    opt.abort_on_violation = false;
    const HomRun run = run_stages(t, m, HomParams::demo(6), nullptr, opt);
    for (const auto& s : run.stages) {
        CHECK(s.report.disjoint_violations == 0);
        CHECK(s.report.contains_u_violations == 0);
        CHECK(s.report.contains_v_violations == 0);
    }
    // n₀ < 3m₀ here, and V_{m₀} falls short of the safe region
    CHECK(3 * *run.params.m0 > 6);
    CHECK(run.all_of_g_violations > 0);
    CHECK_THROWS_AS(build_stages(t, m, HomParams::demo(6)), StageLemmaViolation);

    // stage sets are local: final values agree on a translated window
    const auto x2 = PointWindow::rotation2d(Z2, box_shape(Z2, {37, -21}, {200, 200}), 0.41421356, 0.73205081);
    const auto t2 = quasi_tile(x2, cover, m.ball(6));
    const HomRun run2 = run_stages(t2, m, HomParams::demo(6, *run.params.m0), nullptr, opt);
    const Region r2(Z2, t2.window);
    std::size_t compared = 0;
    for (std::size_t s = 0; s < run.stages.size(); ++s)
        for (std::size_t i = 0; i < t.window.size(); ++i) {
            const auto j = r2.index_of(t.window[i]);
            if (j == Region::npos)
                continue;
            for (auto [a, b] : {std::pair{run.stages[s].t[i], run2.stages[s].t[j]},
                                std::pair{run.stages[s].v[i], run2.stages[s].v[j]}})
                if (a != Tri::Maybe && b != Tri::Maybe) {
                    ++compared;
                    CHECK(a == b);
                }
        }
    CHECK(compared > 0);
}

TEST_CASE("construct_hom on a torus")
{
    auto& d = torus_demo();
    const auto& run = d.run;
    CHECK(run.lemmas_ok());
    CHECK(run.safe_cells == 96u * 96u);
    CHECK(run.output.shape() == d.x.window());
    CHECK(locally_allowed(d.y, run.output));

    SUBCASE("deterministic across thread counts")
    {
        const unsigned before = thread_count();
        set_thread_count(before == 1 ? 3 : 1);
        ExtensionTable fresh(d.y, d.m, 240);
        const HomRun again = construct_hom(d.x, d.cover, d.y, d.m, HomParams::demo(24), {}, &fresh);
        set_thread_count(before);
        CHECK(again.output == run.output);
    }
    SUBCASE("equivariant under translation")
    {
        const Element h = make_element({17, 58});
        const PointWindow xh = PointWindow::explicit_pattern(d.g, translate(d.g, h, d.x.x));
        const HomRun moved = construct_hom(xh, d.cover, d.y, d.m, HomParams::demo(24, *run.params.m0), {}, &d.table);
        CHECK(moved.output == translate(d.g, h, run.output));
    }
    SUBCASE("property (iii) on other anchors")
    {
        int checked = 0;
        std::mt19937_64 rng(3);
        for (int m = 1; m <= static_cast<int>(run.stages.size()); ++m) {
            const auto& st = run.stages[m - 1];
            for (std::size_t k = 0; k < st.tiles.size() && checked < 100; ++k) {
                const auto& tile = st.tiles[k];
                if (!tile.filled || tile.cells.size() < 2)
                    continue;
                const auto g = d.x.window()[tile.cells[1 + rng() % (tile.cells.size() - 1)]];
                CHECK(recompute_tile(run, d.table, d.m, m, k, g) == tile.p);
                ++checked;
            }
        }
        CHECK(checked > 0);
    }
}

TEST_CASE("construct_hom into the full shift")
{
    auto& d = torus_demo();
    const auto full = builtin_spec(d.g, "full:2");
    const HomRun run = construct_hom(d.x, d.cover, full, d.m, HomParams::demo(24, *d.run.params.m0));
    CHECK(run.output.shape() == d.x.window());
    CHECK(locally_allowed(full, run.output));
}
