#include "gshift/error.hpp"
#include "gshift/sft.hpp"

#include <functional>

namespace gshift {

namespace {

std::vector<Element> positive_generators(const GroupModel& g)
{
    std::vector<Element> v;
    switch (g.kind()) {
    case GroupKind::Zd:
    case GroupKind::Torus:
        for (int i = 0; i < g.rank(); ++i) {
            std::vector<std::int64_t> c(g.rank(), 0);
            c[i] = 1;
            v.push_back(g.element(c));
        }
        break;
    case GroupKind::Heisenberg3:
        v.push_back(make_element({1, 0, 0}));
        v.push_back(make_element({0, 1, 0}));
        break;
    case GroupKind::FiniteTable:
        throw PreconditionError("nearest-neighbour specs need a Zd, torus or Heisenberg3 group");
    }
    return v;
}

std::size_t parse_count(const std::string& name, const std::string& prefix)
{
    const std::string n = name.substr(prefix.size());
    if (n.empty() || n.size() > 3 || n.find_first_not_of("0123456789") != std::string::npos)
        throw PreconditionError("bad symbol count in spec name '" + name + "'");
    const auto k = static_cast<std::size_t>(std::stoul(n));
    if (k < 1 || k > 255)
        throw PreconditionError("symbol count out of range in spec name '" + name + "'");
    return k;
}

// Nearest-neighbour spec: forbid windows where bad(s(e), s(e_i)) for some i.
SftSpec neighbour_spec(const GroupModel& g, std::size_t q, const std::function<bool(Symbol, Symbol)>& bad,
                       FillStrategy fill, const std::string& name)
{
    std::vector<Element> kv{g.identity()};
    const auto gens = positive_generators(g);
    kv.insert(kv.end(), gens.begin(), gens.end());
    const Shape k = Shape::from_unsorted(kv);
    const auto e_at = *k.index_of(g.identity());
    std::vector<std::size_t> gen_at;
    for (const auto& x : gens)
        gen_at.push_back(*k.index_of(x));
    std::size_t total = 1;
    for (std::size_t i = 0; i < k.size(); ++i)
        total *= q;
    std::vector<Pattern> forb;
    std::vector<Symbol> s(k.size());
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (auto& x : s) {
            x = static_cast<Symbol>(c % q);
            c /= q;
        }
        bool f = false;
        for (auto j : gen_at)
            f = f || bad(s[e_at], s[j]);
        if (f)
            forb.emplace_back(k, s);
    }
    return SftSpec(g, Alphabet::numeric(q), k, forb, fill, name);
}

} // namespace

SftSpec builtin_spec(const GroupModel& g, const std::string& name)
{
    if (name.rfind("full:", 0) == 0) {
        const auto k = parse_count(name, "full:");
        return SftSpec(g, Alphabet::numeric(k), Shape::from_sorted({g.identity()}), {}, FillStrategy::safe_symbol(0),
                       name);
    }
    if (name == "hardsquare-safe" || name == "hardsquare") {
        const auto fill = name == "hardsquare-safe" ? FillStrategy::safe_symbol(0) : FillStrategy::brute_force();
        return neighbour_spec(g, 2, [](Symbol a, Symbol b) { return a == 1 && b == 1; }, fill, name);
    }
    if (name.rfind("checkerboard:", 0) == 0) {
        const auto q = parse_count(name, "checkerboard:");
        // 2d+1 colours always leave a free colour for a cell whose earlier
        // neighbours are fixed, so single-site filling cannot dead-end.
        const int d = g.kind() == GroupKind::Heisenberg3 ? 2 : g.rank();
        const auto fill = q >= static_cast<std::size_t>(2 * d + 1) ? FillStrategy::single_site()
                                                                    : FillStrategy::brute_force();
        return neighbour_spec(g, q, [](Symbol a, Symbol b) { return a == b; }, fill, name);
    }
    throw PreconditionError("unknown built-in spec '" + name +
                            "' (expected full:k, hardsquare-safe, hardsquare or checkerboard:q)");
}

} // namespace gshift
