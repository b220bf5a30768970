#include <doctest.h>

#include "gshift/error.hpp"
#include "gshift/metric.hpp"
#include "gshift/runtime.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace gshift;

namespace {

Element z2(long long x, long long y) { return make_element({x, y}); }

} // namespace

TEST_CASE("Z2 balls match the BFS oracle and the closed form")
{
    WordMetric m(GroupModel::zd(2), GenSet::standard(GroupModel::zd(2)));
    const auto oracle_sizes = oracle::zd_ball_sizes(2, 30);
    CHECK(m.ball(0).size() == 1);
    CHECK(m.ball(0)[0] == z2(0, 0));
    CHECK(m.ball_size(3) == 25);
    for (int n = 0; n <= 30; ++n) {
        CHECK(m.ball_size(n) == oracle_sizes[n]);
        CHECK(m.ball_size(n) == static_cast<std::size_t>(2 * n * n + 2 * n + 1));
    }
}

TEST_CASE("balls are nested and equal K^n by set multiplication")
{
    for (const auto& g : {GroupModel::zd(2), GroupModel::heisenberg3(), GroupModel::torus({5, 7})}) {
        WordMetric m(g, GenSet::standard(g));
        const Shape& k = m.generators().shape();
        for (int n = 0; n <= 5; ++n) {
            CHECK(m.ball(n) == power(g, k, n));
            if (n > 0) {
                CHECK(m.ball(n).includes(m.ball(n - 1)));
                CHECK(m.ball(n) == shape_union(product(g, k, m.ball(n - 1)), m.ball(n - 1)));
            }
        }
    }
}

TEST_CASE("Heisenberg multiplication and balls")
{
    const auto h = GroupModel::heisenberg3();
    const Element a = make_element({1, 0, 0}), b = make_element({0, 1, 0});
    CHECK(h.mul(a, b) == make_element({1, 1, 1}));
    CHECK(h.mul(b, a) == make_element({1, 1, 0}));
    CHECK(!h.is_abelian());
    WordMetric m(h, GenSet::standard(h));
    const auto sizes = oracle::heisenberg_ball_sizes(12);
    CHECK(m.ball_size(1) == 5);
    CHECK(m.ball_size(2) > m.ball_size(1));
    for (int n = 0; n <= 12; ++n)
        CHECK(m.ball_size(n) == sizes[n]);
    // frozen from the BFS oracle
    CHECK(sizes[2] == 17);
    CHECK(sizes[12] == 8871);
}

TEST_CASE("group axioms hold on random elements")
{
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> d(-20, 20);
    for (const auto& g : {GroupModel::zd(3), GroupModel::heisenberg3(), GroupModel::torus({4, 9})}) {
        for (int t = 0; t < 200; ++t) {
            auto rnd = [&] {
                std::vector<std::int64_t> c(g.rank());
                for (auto& x : c)
                    x = d(rng);
                return g.element(c);
            };
            const Element x = rnd(), y = rnd(), z = rnd();
            CHECK(g.mul(x, g.identity()) == x);
            CHECK(g.mul(x, g.inv(x)) == g.identity());
            CHECK(g.mul(g.mul(x, y), z) == g.mul(x, g.mul(y, z)));
        }
    }
}

TEST_CASE("finite table groups are validated")
{
    // Z/3
    const auto g = GroupModel::finite_table({{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    CHECK(g.order() == 3);
    WordMetric m(g, GenSet::standard(g));
    CHECK(m.ball_size(1) == 3);
    CHECK_THROWS_AS(GroupModel::finite_table({{0, 1}, {0, 1}}), PreconditionError);
    CHECK_THROWS_AS(GroupModel::finite_table({{0, 1, 2}, {1, 0, 2}, {2, 2, 0}}), PreconditionError);
}

TEST_CASE("word distance")
{
    const auto g = GroupModel::zd(2);
    WordMetric m(g, GenSet::standard(g));
    CHECK(m.dist(z2(0, 0), z2(0, 0)) == WordDistance(0));
    CHECK(m.dist(z2(1, 0), z2(3, 2)) == WordDistance(4));
    CHECK(m.dist_to_set(z2(5, 0), Shape::from_unsorted({z2(0, 0), z2(3, 0)})) == WordDistance(2));
    CHECK(m.dist_to_set(z2(0, 0), Shape::from_unsorted({z2(2, 2)})) == WordDistance(4));
    CHECK(m.dist_to_set(z2(3, 0), Shape::from_unsorted({z2(0, 0), z2(3, 0)})) == WordDistance(0));
    CHECK_THROWS_AS(m.dist_to_set(z2(0, 0), Shape{}), PreconditionError);

    // Z² inside Z³: the third axis is unreachable
    const auto g3 = GroupModel::zd(3);
    const auto k = GenSet::make(g3, {make_element({0, 0, 0}), make_element({1, 0, 0}), make_element({-1, 0, 0}),
                                     make_element({0, 1, 0}), make_element({0, -1, 0})});
    WordMetric m3(g3, k);
    const auto d = m3.dist(make_element({0, 0, 0}), make_element({0, 0, 1}));
    CHECK(!d.finite());
    CHECK(d == WordDistance(kInfinite));
    CHECK(WordDistance(1000000) < d);
    CHECK_THROWS_AS(d.value(), PreconditionError);

    // finite subgroup: BFS saturates
    const auto t = GroupModel::torus({6});
    WordMetric mt(t, GenSet::make(t, {make_element({0}), make_element({3})}));
    CHECK(!mt.norm(make_element({1})).finite());
    CHECK(mt.norm(make_element({3})) == WordDistance(1));
}

TEST_CASE("word metric is left invariant")
{
    for (const auto& g : {GroupModel::zd(2), GroupModel::heisenberg3()}) {
        WordMetric m(g, GenSet::standard(g));
        std::mt19937_64 rng(11);
        std::uniform_int_distribution<long long> d(-3, 3);
        for (int t = 0; t < 1000; ++t) {
            auto rnd = [&] {
                std::vector<std::int64_t> c(g.rank());
                for (auto& x : c)
                    x = d(rng);
                return g.element(c);
            };
            const Element a = rnd(), x = rnd(), y = rnd();
            CHECK(m.dist(x, y) == m.dist(g.mul(a, x), g.mul(a, y)));
        }
    }
}

TEST_CASE("generating sets must be symmetric and contain e")
{
    const auto g = GroupModel::zd(2);
    CHECK_THROWS_AS(GenSet::make(g, {z2(0, 0), z2(1, 0)}), PreconditionError);
    CHECK_THROWS_AS(GenSet::make(g, {z2(1, 0), z2(-1, 0)}), PreconditionError);
}

TEST_CASE("interior")
{
    const auto g = GroupModel::zd(2);
    WordMetric m(g, GenSet::standard(g));
    const Shape& b1 = m.ball(1);
    CHECK(interior(g, b1, b1) == Shape::from_sorted({z2(0, 0)}));
    const Shape e = Shape::from_unsorted({z2(0, 0), z2(4, 1), z2(2, -3)});
    CHECK(interior(g, Shape::from_sorted({z2(0, 0)}), e) == e);
    CHECK(interior(g, b1, Shape{}).empty());
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long long> d(-6, 6);
    for (int t = 0; t < 50; ++t) {
        std::vector<Element> v;
        for (int i = 0; i < 8; ++i)
            v.push_back(z2(d(rng), d(rng)));
        const Shape s = Shape::from_unsorted(v);
        for (int r = 1; r <= 2; ++r) {
            const Shape& k = m.ball(r);
            CHECK(interior(g, k, product(g, s, k)).includes(s));
        }
    }
}

TEST_CASE("doubling constants")
{
    const auto z1 = GroupModel::zd(1);
    WordMetric m1(z1, GenSet::standard(z1));
    CHECK(doubling_constant(m1, 10) == doctest::Approx(41.0 / 21.0));
    const auto z2g = GroupModel::zd(2);
    WordMetric m2(z2g, GenSet::standard(z2g));
    CHECK(doubling_constant(m2, 1) == doctest::Approx(2.6));
    double prev = 0;
    for (int n = 1; n <= 20; ++n) {
        const double c = doubling_constant(m2, n);
        CHECK(c >= prev);
        prev = c;
    }
    const auto triv = GroupModel::trivial();
    WordMetric mt(triv, GenSet::standard(triv));
    CHECK(doubling_constant(mt, 5) == 1.0);
}

TEST_CASE("growth order estimates")
{
    const auto z1 = GroupModel::zd(1);
    const auto z2g = GroupModel::zd(2);
    const auto h = GroupModel::heisenberg3();
    WordMetric m1(z1, GenSet::standard(z1)), m2(z2g, GenSet::standard(z2g)), mh(h, GenSet::standard(h));
    CHECK(std::abs(growth_order_estimate(m1, 40) - 1.0) <= 0.05);
    CHECK(std::abs(growth_order_estimate(m2, 40) - 2.0) <= 0.1);
    // slope over n in [6, 12] is 3.906 by the BFS oracle
    const auto sizes = oracle::heisenberg_ball_sizes(12);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (int n = 6; n <= 12; ++n) {
        const double x = std::log(n), y = std::log(static_cast<double>(sizes[n]));
        sx += x, sy += y, sxx += x * x, sxy += x * y;
    }
    const double oracle_slope = (7 * sxy - sx * sy) / (7 * sxx - sx * sx);
    CHECK(growth_order_estimate(mh, 12) == doctest::Approx(oracle_slope));
    CHECK(std::abs(growth_order_estimate(mh, 12) - 4.0) <= 0.4);
}

TEST_CASE("ball cap raises a resource error")
{
    const auto old = caps();
    auto c = old;
    c.max_ball = 100;
    set_caps(c);
    const auto g = GroupModel::zd(2);
    WordMetric m(g, GenSet::standard(g));
    CHECK_THROWS_AS(m.ball(20), ResourceError);
    set_caps(old);
}

TEST_CASE("ball memo is thread safe and thread-count independent")
{
    const auto g = GroupModel::heisenberg3();
    WordMetric m(g, GenSet::standard(g));
    set_thread_count(4);
    std::vector<std::size_t> sizes(40);
    parallel_for(sizes.size(), [&](std::size_t i) { sizes[i] = m.ball(static_cast<int>(i % 10)).size(); });
    set_thread_count(1);
    const auto expect = oracle::heisenberg_ball_sizes(10);
    for (std::size_t i = 0; i < sizes.size(); ++i)
        CHECK(sizes[i] == expect[i % 10]);
}
