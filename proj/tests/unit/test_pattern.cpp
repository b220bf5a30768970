#include <doctest.h>

#include "gshift/error.hpp"
#include "gshift/pattern.hpp"

#include <random>

using namespace gshift;

namespace {

Element z2(long long x, long long y) { return make_element({x, y}); }

Pattern random_pattern(std::mt19937_64& rng, const GroupModel& g, int cells, int spread, int q)
{
    std::uniform_int_distribution<long long> d(-spread, spread);
    std::vector<Element> v;
    for (int i = 0; i < cells; ++i) {
        std::vector<std::int64_t> c(g.rank());
        for (auto& x : c)
            x = d(rng);
        v.push_back(g.element(c));
    }
    Shape s = Shape::from_unsorted(v);
    std::vector<Symbol> sym(s.size());
    for (auto& x : sym)
        x = static_cast<Symbol>(rng() % q);
    return Pattern(s, sym);
}

} // namespace

TEST_CASE("alphabets")
{
    CHECK_THROWS_AS(Alphabet({}), PreconditionError);
    CHECK_THROWS_AS(Alphabet({"a", "a"}), PreconditionError);
    const Alphabet a({"a", "b"});
    CHECK(a.find("b") == Symbol{1});
    CHECK(!a.find("c"));
}

TEST_CASE("translate")
{
    const auto g = GroupModel::zd(2);
    const Pattern w(Shape::from_sorted({z2(0, 0)}), {0});
    const Pattern t = translate(g, z2(1, 0), w);
    CHECK(t.shape() == Shape::from_sorted({z2(1, 0)}));
    CHECK(t.at(z2(1, 0)) == 0);
    CHECK(translate(g, g.identity(), w) == w);

    std::mt19937_64 rng(5);
    for (const auto& grp : {GroupModel::zd(2), GroupModel::heisenberg3()}) {
        for (int i = 0; i < 200; ++i) {
            const Pattern p = random_pattern(rng, grp, 6, 4, 3);
            const Pattern a = random_pattern(rng, grp, 1, 5, 1), b = random_pattern(rng, grp, 1, 5, 1);
            const Element x = a.shape()[0], y = b.shape()[0];
            CHECK(translate(grp, x, translate(grp, y, p)) == translate(grp, grp.mul(x, y), p));
            CHECK(translate(grp, grp.inv(x), translate(grp, x, p)) == p);
            const Pattern q = translate(grp, x, p);
            for (std::size_t k = 0; k < p.size(); ++k)
                CHECK(q.at(grp.mul(x, p.shape()[k])) == p.symbols()[k]);
        }
    }
}

TEST_CASE("union and restrict")
{
    const Pattern a(Shape::from_sorted({z2(0, 0)}), {0});
    const Pattern b(Shape::from_sorted({z2(1, 0)}), {1});
    CHECK(union_patterns(a, Pattern{}) == a);
    const Pattern ab = union_patterns(a, b);
    CHECK(ab.size() == 2);
    CHECK(ab.at(z2(1, 0)) == 1);
    CHECK(restrict(ab, a.shape()) == a);
    CHECK(restrict(ab, ab.shape()) == ab);
    CHECK(restrict(ab, Shape{}).empty());
    CHECK_THROWS_AS(restrict(a, b.shape()), OutOfShapeError);
    CHECK_THROWS_AS(union_patterns(a, Pattern(a.shape(), {1})), ConflictError);
    try {
        union_patterns(a, Pattern(a.shape(), {1}));
    } catch (const ConflictError& e) {
        CHECK(std::string(e.what()).find("(0,0") != std::string::npos);
    }
}

TEST_CASE("union is associative and commutative on all small patterns")
{
    // every pattern on every subset of a 3-cell universe, 2 symbols
    const std::vector<Element> uni{z2(0, 0), z2(1, 0), z2(0, 1)};
    std::vector<Pattern> all;
    for (int mask = 0; mask < 8; ++mask) {
        std::vector<Element> cells;
        for (int i = 0; i < 3; ++i)
            if (mask >> i & 1)
                cells.push_back(uni[i]);
        const Shape s = Shape::from_unsorted(cells);
        for (int v = 0; v < (1 << s.size()); ++v) {
            std::vector<Symbol> sym;
            for (std::size_t i = 0; i < s.size(); ++i)
                sym.push_back(static_cast<Symbol>(v >> i & 1));
            all.emplace_back(s, sym);
        }
    }
    auto try_union = [](const Pattern& x, const Pattern& y) -> std::optional<Pattern> {
        try {
            return union_patterns(x, y);
        } catch (const ConflictError&) {
            return std::nullopt;
        }
    };
    for (const auto& x : all)
        for (const auto& y : all) {
            const auto xy = try_union(x, y), yx = try_union(y, x);
            CHECK(xy.has_value() == yx.has_value());
            if (xy)
                CHECK(*xy == *yx);
            for (const auto& z : all) {
                std::optional<Pattern> l, r;
                if (xy)
                    l = try_union(*xy, z);
                if (auto yz = try_union(y, z))
                    r = try_union(x, *yz);
                CHECK(l.has_value() == r.has_value());
                if (l && r)
                    CHECK(*l == *r);
            }
        }
}

TEST_CASE("restrict of a disjoint union recovers the parts")
{
    std::mt19937_64 rng(9);
    const auto g = GroupModel::zd(2);
    for (int i = 0; i < 100; ++i) {
        const Pattern u = random_pattern(rng, g, 5, 3, 2);
        Pattern v = random_pattern(rng, g, 5, 3, 2);
        v = restrict(v, shape_difference(v.shape(), u.shape()));
        const Pattern uv = union_patterns(u, v);
        CHECK(restrict(uv, u.shape()) == u);
        CHECK(restrict(uv, v.shape()) == v);
    }
}
