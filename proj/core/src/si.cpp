#include "gshift/error.hpp"
#include "gshift/region.hpp"
#include "gshift/runtime.hpp"
#include "gshift/sft.hpp"
#include "gshift/solver.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

namespace gshift {

namespace {

std::vector<Shape> default_sub_shapes(const GroupModel& g, const WordMetric& m)
{
    std::vector<Shape> out{Shape::from_sorted({g.identity()})};
    for (const auto& k : m.generators().shape())
        if (k != g.identity())
            out.push_back(Shape::from_unsorted({g.identity(), k}));
    if ((g.kind() == GroupKind::Zd || g.kind() == GroupKind::Torus) && g.rank() >= 2) {
        Element a = g.identity(), b = g.identity();
        a.c[0] = 1;
        b.c[1] = 1;
        a = g.element(std::vector<std::int64_t>(a.c.begin(), a.c.begin() + g.rank()));
        b = g.element(std::vector<std::int64_t>(b.c.begin(), b.c.begin() + g.rank()));
        out.push_back(Shape::from_unsorted({g.identity(), a, b, g.mul(a, b)}));
    }
    return out;
}

// All patterns on E that pass the margin surrogate, in lexicographic order.
std::vector<Pattern> language(const SftSpec& spec, const Shape& e, int margin)
{
    const std::size_t a = spec.alphabet_size();
    std::size_t total = 1;
    for (std::size_t i = 0; i < e.size(); ++i) {
        total *= a;
        if (total > caps().max_enumeration)
            throw ResourceError("|A|^|E| exceeds the enumeration cap in check_si");
    }
    std::vector<Pattern> out;
    std::vector<Symbol> s(e.size(), 0);
    for (std::size_t k = 0; k < total; ++k) {
        std::size_t c = k;
        for (std::size_t i = e.size(); i-- > 0;) {
            s[i] = static_cast<Symbol>(c % a);
            c /= a;
        }
        Pattern p(e, s);
        if (allowed_with_margin(spec, p, margin))
            out.push_back(std::move(p));
    }
    return out;
}

struct Glue {
    const SftSpec& spec;
    Region dom;
    ConstraintSystem cs;
    std::vector<std::uint32_t> e_idx, f_idx;
    std::vector<std::uint32_t> comp; // union-find roots over all cells

    Glue(const SftSpec& s, const Shape& e, const Shape& f, int margin)
        : spec(s),
          dom(s.group(), product(s.group(), shape_union(e, f), power(s.group(), s.witness(), margin))),
          cs(s, dom)
    {
        for (const auto& x : e)
            e_idx.push_back(dom.index_of(x));
        for (const auto& x : f)
            f_idx.push_back(dom.index_of(x));
        comp.resize(dom.size());
        std::iota(comp.begin(), comp.end(), 0u);
        for (std::size_t w = 0; w < cs.window_count(); ++w) {
            const auto* c = cs.window(w);
            for (std::size_t j = 1; j < cs.k(); ++j)
                unite(c[0], c[j]);
        }
    }

    std::uint32_t find(std::uint32_t x)
    {
        while (comp[x] != x)
            x = comp[x] = comp[comp[x]];
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { comp[find(a)] = find(b); }

    bool coupled()
    {
        for (auto i : e_idx)
            for (auto j : f_idx)
                if (find(i) == find(j))
                    return true;
        return false;
    }

    // Solvability with the given fixed cells, restricted to cells whose
    // component is in `keep` (all cells when keep is empty).
    bool solve(const std::vector<std::pair<std::uint32_t, Symbol>>& fixed, const std::vector<std::uint32_t>& keep)
    {
        std::vector<int> vals(dom.size(), -1);
        std::vector<char> active(dom.size(), keep.empty() ? 1 : 0);
        if (!keep.empty())
            for (std::size_t i = 0; i < dom.size(); ++i)
                active[i] = std::find(keep.begin(), keep.end(), find(static_cast<std::uint32_t>(i))) != keep.end();
        for (auto [i, s] : fixed)
            vals[i] = s;
        std::vector<std::uint32_t> order;
        std::vector<std::vector<Symbol>> cand;
        const auto& f = spec.fill();
        for (std::size_t i = 0; i < dom.size(); ++i)
            if (vals[i] < 0 && active[i]) {
                order.push_back(static_cast<std::uint32_t>(i));
                cand.push_back(f.kind == FillKind::SafeSymbol ? symbols_preferring(spec.alphabet_size(), {f.safe})
                                                              : all_symbols(spec.alphabet_size()));
            }
        // inactive free cells stay at -1 and never complete a window
        Backtracker bt(cs, std::move(order), std::move(cand));
        return bt.solve(vals, true);
    }

    std::vector<std::pair<std::uint32_t, Symbol>> cells(const std::vector<std::uint32_t>& idx, const Pattern& p) const
    {
        std::vector<std::pair<std::uint32_t, Symbol>> out;
        for (std::size_t i = 0; i < idx.size(); ++i)
            out.emplace_back(idx[i], p.symbols()[i]);
        return out;
    }
};

struct PairOutcome {
    bool ok = true;
    std::size_t bad_u = 0, bad_v = 0;
};

PairOutcome check_pair(const SftSpec& spec, const Shape& e, const Shape& f, const std::vector<Pattern>& le,
                       const std::vector<Pattern>& lf, int margin)
{
    PairOutcome out;
    if (le.empty() || lf.empty())
        return out;
    Glue gl(spec, e, f, margin);
    if (gl.coupled()) {
        for (std::size_t i = 0; i < le.size(); ++i)
            for (std::size_t j = 0; j < lf.size(); ++j) {
                auto fx = gl.cells(gl.e_idx, le[i]);
                auto fy = gl.cells(gl.f_idx, lf[j]);
                fx.insert(fx.end(), fy.begin(), fy.end());
                if (!gl.solve(fx, {})) {
                    out = {false, i, j};
                    return out;
                }
            }
        return out;
    }
    // The problem splits into the E component, the F component and the
    // rest, so u ∪ v extends iff each part does.
    std::vector<std::uint32_t> ce, cf, rest;
    for (auto i : gl.e_idx)
        ce.push_back(gl.find(i));
    for (auto i : gl.f_idx)
        cf.push_back(gl.find(i));
    for (std::size_t i = 0; i < gl.dom.size(); ++i) {
        const auto r = gl.find(static_cast<std::uint32_t>(i));
        if (std::find(ce.begin(), ce.end(), r) == ce.end() && std::find(cf.begin(), cf.end(), r) == cf.end())
            rest.push_back(r);
    }
    std::sort(rest.begin(), rest.end());
    rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
    if (!rest.empty() && !gl.solve({}, rest))
        return {false, 0, 0};
    std::vector<char> okv(lf.size());
    for (std::size_t j = 0; j < lf.size(); ++j)
        okv[j] = gl.solve(gl.cells(gl.f_idx, lf[j]), cf);
    for (std::size_t j = 0; j < lf.size(); ++j)
        if (!okv[j])
            return {false, 0, j};
    for (std::size_t i = 0; i < le.size(); ++i)
        if (!gl.solve(gl.cells(gl.e_idx, le[i]), ce))
            return {false, i, 0};
    return out;
}

} // namespace

SiCheckResult check_si(const SftSpec& spec, const WordMetric& metric, const Shape& si_shape, int radius,
                       const SiCheckOptions& opt)
{
    const auto& g = spec.group();
    if (!(metric.group() == g))
        throw PreconditionError("metric and spec live on different groups");
    const Shape& ball = metric.ball(radius);
    const auto bases = opt.sub_shapes.empty() ? default_sub_shapes(g, metric) : opt.sub_shapes;

    std::vector<Shape> shapes;
    for (const auto& t : bases)
        for (const auto& x : ball) {
            Shape s = translate(g, x, t);
            if (ball.includes(s))
                shapes.push_back(std::move(s));
        }
    std::sort(shapes.begin(), shapes.end());
    shapes.erase(std::unique(shapes.begin(), shapes.end()), shapes.end());

    auto separated = [&](const Shape& e, const Shape& f) {
        return shape_intersection(product(g, e, si_shape), f).empty();
    };

    // Pairs up to left translation; the check is translation invariant.
    std::map<std::pair<Shape, Shape>, std::pair<Shape, Shape>> classes;
    for (std::size_t i = 0; i < shapes.size(); ++i)
        for (std::size_t j = 0; j < shapes.size(); ++j) {
            if (i == j || !separated(shapes[i], shapes[j]))
                continue;
            const Element shift = g.inv(shapes[i][0]);
            auto key = std::make_pair(translate(g, shift, shapes[i]), translate(g, shift, shapes[j]));
            classes.emplace(std::move(key), std::make_pair(shapes[i], shapes[j]));
        }

    std::vector<std::pair<Shape, Shape>> work;
    for (auto& [k, v] : classes)
        work.push_back(k);
    if (opt.trials && *opt.trials < work.size()) {
        std::mt19937_64 rng(opt.seed);
        std::shuffle(work.begin(), work.end(), rng);
        work.resize(*opt.trials);
        std::sort(work.begin(), work.end());
    }

    std::map<Shape, std::vector<Pattern>> langs;
    for (const auto& [e, f] : work) {
        if (!langs.count(e))
            langs.emplace(e, language(spec, e, opt.margin));
        if (!langs.count(f))
            langs.emplace(f, language(spec, f, opt.margin));
    }

    std::vector<PairOutcome> results(work.size());
    parallel_for(work.size(), [&](std::size_t k) {
        const auto& [e, f] = work[k];
        results[k] = check_pair(spec, e, f, langs.at(e), langs.at(f), opt.margin);
    });

    SiCheckResult res;
    res.shape_pairs = work.size();
    for (std::size_t k = 0; k < work.size(); ++k) {
        const auto& [e, f] = work[k];
        res.pattern_pairs += langs.at(e).size() * langs.at(f).size();
        if (!results[k].ok && res.ok) {
            res.ok = false;
            res.counterexample = std::make_pair(langs.at(e)[results[k].bad_u], langs.at(f)[results[k].bad_v]);
        }
    }
    return res;
}

} // namespace gshift
