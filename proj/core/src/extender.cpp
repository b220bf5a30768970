#include "gshift/error.hpp"
#include "gshift/region.hpp"
#include "gshift/runtime.hpp"
#include "gshift/sft.hpp"
#include "gshift/solver.hpp"

#include <cmath>

namespace gshift {

ExtenderWindow extender_set(const SftSpec& spec, const Pattern& u, const Shape& w)
{
    if (!w.includes(u.shape()))
        throw PreconditionError("extender window must contain shape(u)");
    const auto& g = spec.group();
    ExtenderWindow out;
    out.outer = w;
    out.inner = u.shape();
    out.u = u;
    out.complement = shape_difference(w, u.shape());
    const double combos = std::pow(static_cast<double>(spec.alphabet_size()), static_cast<double>(out.complement.size()));
    if (combos > static_cast<double>(caps().max_enumeration))
        throw ResourceError("|A|^|W \\ S| exceeds the enumeration cap in extender_set");

    Region dom(g, w);
    ConstraintSystem cs(spec, dom);
    std::vector<int> vals(dom.size(), -1);
    for (std::size_t i = 0; i < u.size(); ++i)
        vals[dom.index_of(u.shape()[i])] = u.symbols()[i];
    std::vector<std::uint32_t> order;
    for (const auto& x : out.complement)
        order.push_back(dom.index_of(x));
    std::vector<std::vector<Symbol>> cand(order.size(), all_symbols(spec.alphabet_size()));
    Backtracker bt(cs, order, std::move(cand));
    bt.enumerate(vals, [&](const std::vector<int>& v) {
        for (auto i : order)
            out.flat.push_back(static_cast<Symbol>(v[i]));
        ++out.count;
        return true;
    });
    return out;
}

bool extender_equal_by_boundary(const SftSpec& spec, const Shape& s, const Pattern& u, const Pattern& v, const Shape& w)
{
    const auto& g = spec.group();
    const Shape& k = spec.witness();
    const Shape hull = product(g, s, product(g, inverse(g, k), k));
    if (u.shape() != hull || v.shape() != hull)
        throw PreconditionError("u and v must both have shape S·K⁻¹·K");
    if (!locally_allowed(spec, u) || !locally_allowed(spec, v))
        throw PreconditionError("u and v must be locally allowed");
    const Shape boundary = shape_difference(hull, s);
    if (restrict(u, boundary) != restrict(v, boundary))
        throw PreconditionError("u and v disagree on the boundary SK⁻¹K \\ S");
    const auto eu = extender_set(spec, u, w);
    const auto ev = extender_set(spec, v, w);
    return eu.count == ev.count && eu.flat == ev.flat;
}

} // namespace gshift
