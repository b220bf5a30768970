#include "gshift/sft.hpp"

#include "gshift/error.hpp"
#include "gshift/region.hpp"
#include "gshift/runtime.hpp"
#include "gshift/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace gshift {

std::string to_string(const FillStrategy& f)
{
    switch (f.kind) {
    case FillKind::SafeSymbol:
        return "safe:" + std::to_string(f.safe);
    case FillKind::SingleSite:
        return "single-site";
    case FillKind::BruteForce:
        return "brute";
    }
    return "?";
}

FillStrategy parse_fill_strategy(const std::string& s)
{
    if (s == "single-site")
        return FillStrategy::single_site();
    if (s == "brute")
        return FillStrategy::brute_force();
    if (s.rfind("safe:", 0) == 0) {
        const std::string n = s.substr(5);
        if (n.empty() || n.find_first_not_of("0123456789") != std::string::npos || n.size() > 3)
            throw PreconditionError("bad safe symbol in fill strategy '" + s + "'");
        const int v = std::stoi(n);
        if (v > 254)
            throw PreconditionError("bad safe symbol in fill strategy '" + s + "'");
        return FillStrategy::safe_symbol(static_cast<Symbol>(v));
    }
    throw PreconditionError("unknown fill strategy '" + s + "' (expected safe:<n>, single-site or brute)");
}

SftSpec::SftSpec(GroupModel group, Alphabet alphabet, Shape witness, const std::vector<Pattern>& forbidden,
                 FillStrategy fill, std::string name)
    : group_(std::move(group)), alphabet_(std::move(alphabet)), witness_(std::move(witness)), fill_(fill),
      name_(std::move(name))
{
    if (!witness_.contains(group_.identity()))
        throw PreconditionError("witness shape K must contain the identity");
    for (const auto& e : witness_)
        if (!group_.is_valid(e))
            throw PreconditionError("witness shape has an element outside " + group_.name());
    if (fill_.kind == FillKind::SafeSymbol && fill_.safe >= alphabet_.size())
        throw PreconditionError("safe symbol is not in the alphabet");
    const double bits = static_cast<double>(witness_.size()) * std::log2(static_cast<double>(alphabet_.size()));
    if (bits > 63)
        throw ResourceError("|A|^|K| does not fit in 64-bit window codes");
    for (const auto& p : forbidden) {
        if (p.shape() != witness_)
            throw PreconditionError("every forbidden pattern must have shape exactly K");
        for (auto s : p.symbols())
            if (s >= alphabet_.size())
                throw PreconditionError("forbidden pattern uses a symbol outside the alphabet");
        forbidden_codes_.push_back(encode(p.symbols()));
    }
    std::sort(forbidden_codes_.begin(), forbidden_codes_.end());
    forbidden_codes_.erase(std::unique(forbidden_codes_.begin(), forbidden_codes_.end()), forbidden_codes_.end());
    if (bits <= 24) {
        std::size_t total = 1;
        for (std::size_t i = 0; i < witness_.size(); ++i)
            total *= alphabet_.size();
        dense_.assign(total, false);
        for (auto c : forbidden_codes_)
            dense_[c] = true;
    }
}

std::uint64_t SftSpec::encode(std::span<const Symbol> window) const
{
    std::uint64_t code = 0, mul = 1;
    for (auto s : window) {
        code += s * mul;
        mul *= alphabet_.size();
    }
    return code;
}

bool SftSpec::is_forbidden_code(std::uint64_t code) const
{
    if (!dense_.empty())
        return dense_[code];
    return std::binary_search(forbidden_codes_.begin(), forbidden_codes_.end(), code);
}

std::vector<Pattern> SftSpec::forbidden() const
{
    std::vector<Pattern> out;
    for (auto code : forbidden_codes_) {
        std::vector<Symbol> s(witness_.size());
        for (auto& x : s) {
            x = static_cast<Symbol>(code % alphabet_.size());
            code /= alphabet_.size();
        }
        out.emplace_back(witness_, std::move(s));
    }
    return out;
}

bool locally_allowed(const SftSpec& spec, const Pattern& w)
{
    if (spec.forbidden_count() == 0)
        return true;
    const auto& g = spec.group();
    std::vector<Symbol> win(spec.witness().size());
    for (const auto& a : w.shape()) {
        bool inside = true;
        for (std::size_t j = 0; j < win.size() && inside; ++j) {
            auto s = w.find(g.mul(a, spec.witness()[j]));
            if (s)
                win[j] = *s;
            else
                inside = false;
        }
        if (inside && spec.is_forbidden(win))
            return false;
    }
    return true;
}

namespace {

Pattern to_pattern(const Region& r, const std::vector<int>& values)
{
    std::vector<Symbol> s(values.size());
    for (std::size_t i = 0; i < values.size(); ++i)
        s[i] = static_cast<Symbol>(values[i]);
    return Pattern(r.shape(), std::move(s));
}

} // namespace

Pattern fep_fill(const SftSpec& spec, const Pattern& w, const Shape& target)
{
    if (!target.includes(w.shape()))
        throw PreconditionError("fep_fill target must contain shape(w)");
    if (!locally_allowed(spec, w))
        throw PreconditionError("fep_fill input is not locally allowed");
    const auto& g = spec.group();
    const std::size_t a = spec.alphabet_size();
    Region dom(g, target);
    ConstraintSystem cs(spec, dom);
    const Shape inner = interior(g, spec.witness(), w.shape());

    std::vector<int> values(dom.size(), -1);
    std::vector<char> in_w(dom.size(), 0), fixed(dom.size(), 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        const auto j = dom.index_of(w.shape()[i]);
        in_w[j] = 1;
        values[j] = w.symbols()[i];
    }
    for (const auto& e : inner)
        fixed[dom.index_of(e)] = 1;

    const FillStrategy& f = spec.fill();
    auto fail = [&](const std::string& why) {
        return FillFailure("fill strategy " + to_string(f) + " cannot extend the pattern (" + why +
                           "); the spec may not be FEP-fillable this way");
    };

    if (f.kind == FillKind::SingleSite) {
        // Greedy in canonical order over everything outside int_K(shape(w));
        // cells of w keep their symbol when they can.
        std::vector<std::uint32_t> order;
        std::vector<std::vector<Symbol>> cand;
        for (std::size_t i = 0; i < dom.size(); ++i) {
            if (fixed[i])
                continue;
            order.push_back(static_cast<std::uint32_t>(i));
            cand.push_back(in_w[i] ? symbols_preferring(a, {static_cast<Symbol>(values[i])}) : all_symbols(a));
        }
        Backtracker bt(cs, std::move(order), std::move(cand));
        bt.set_forward_check(true);
        if (!bt.solve(values, false))
            throw fail("single-site dead end");
        return to_pattern(dom, values);
    }

    if (f.kind == FillKind::SafeSymbol) {
        std::vector<int> quick = values;
        for (std::size_t i = 0; i < dom.size(); ++i)
            if (!in_w[i])
                quick[i] = f.safe;
        if (cs.first_violation(quick) < 0)
            return to_pattern(dom, quick);
    }

    // Attempt 1 keeps all of w; attempt 2 frees its non-interior cells.
    for (int attempt = 0; attempt < 2; ++attempt) {
        std::vector<std::uint32_t> order;
        std::vector<std::vector<Symbol>> cand;
        std::vector<int> vals = values;
        for (std::size_t i = 0; i < dom.size(); ++i) {
            if (fixed[i] || (attempt == 0 && in_w[i]))
                continue;
            order.push_back(static_cast<std::uint32_t>(i));
            if (in_w[i]) {
                const auto orig = static_cast<Symbol>(values[i]);
                cand.push_back(f.kind == FillKind::SafeSymbol ? symbols_preferring(a, {orig, f.safe})
                                                              : symbols_preferring(a, {orig}));
            } else {
                cand.push_back(f.kind == FillKind::SafeSymbol ? symbols_preferring(a, {f.safe}) : all_symbols(a));
            }
        }
        Backtracker bt(cs, std::move(order), std::move(cand));
        bt.set_forward_check(true);
        if (bt.solve(vals, true))
            return to_pattern(dom, vals);
    }
    throw fail("no locally allowed extension exists");
}

bool allowed_with_margin(const SftSpec& spec, const Pattern& w, int margin)
{
    if (!locally_allowed(spec, w))
        return false;
    const auto& g = spec.group();
    const Shape ext = product(g, w.shape(), power(g, spec.witness(), margin));
    Region dom(g, ext);
    ConstraintSystem cs(spec, dom);
    std::vector<int> values(dom.size(), -1);
    for (std::size_t i = 0; i < w.size(); ++i)
        values[dom.index_of(w.shape()[i])] = w.symbols()[i];
    std::vector<std::uint32_t> order;
    std::vector<std::vector<Symbol>> cand;
    for (std::size_t i = 0; i < dom.size(); ++i)
        if (values[i] < 0) {
            order.push_back(static_cast<std::uint32_t>(i));
            cand.push_back(spec.fill().kind == FillKind::SafeSymbol
                               ? symbols_preferring(spec.alphabet_size(), {spec.fill().safe})
                               : all_symbols(spec.alphabet_size()));
        }
    Backtracker bt(cs, std::move(order), std::move(cand));
    bt.set_forward_check(true);
    return bt.solve(values, true);
}

FepCheckResult check_fep_bruteforce(const SftSpec& spec, const WordMetric& metric, int radius)
{
    if (!(metric.group() == spec.group()))
        throw PreconditionError("metric and spec live on different groups");
    const auto& g = spec.group();
    const std::size_t a = spec.alphabet_size();
    const Shape d = product(g, metric.ball(radius), spec.witness());
    const Shape in = interior(g, spec.witness(), d);
    const Shape big = product(g, metric.ball(radius + 2), spec.witness());
    Region rd(g, d), rb(g, big);
    ConstraintSystem csd(spec, rd), csb(spec, rb);

    // Enumerate interior assignments first; each one that extends to all of
    // D is exactly one distinct restriction of a locally allowed w on D.
    std::vector<std::uint32_t> in_order, rest_order;
    for (std::size_t i = 0; i < rd.size(); ++i)
        (in.contains(rd.at(i)) ? in_order : rest_order).push_back(static_cast<std::uint32_t>(i));
    std::vector<std::vector<Symbol>> in_cand(in_order.size(), all_symbols(a));
    std::vector<std::vector<Symbol>> rest_cand(rest_order.size(), all_symbols(a));

    FepCheckResult res;
    std::vector<int> vals(rd.size(), -1);
    Backtracker outer(csd, in_order, in_cand);
    outer.enumerate(vals, [&](const std::vector<int>& v) {
        std::vector<int> full = v;
        Backtracker rest(csd, rest_order, rest_cand);
        if (!rest.solve(full, true))
            return true;
        ++res.checked;
        std::vector<int> bv(rb.size(), -1);
        for (auto i : in_order)
            bv[rb.index_of(rd.at(i))] = v[i];
        std::vector<std::uint32_t> border;
        for (std::size_t i = 0; i < rb.size(); ++i)
            if (bv[i] < 0)
                border.push_back(static_cast<std::uint32_t>(i));
        std::vector<std::vector<Symbol>> bc(border.size(), all_symbols(a));
        Backtracker ext(csb, std::move(border), std::move(bc));
        if (!ext.solve(bv, true)) {
            std::vector<Symbol> s(rd.size());
            for (std::size_t i = 0; i < rd.size(); ++i)
                s[i] = static_cast<Symbol>(full[i]);
            res.ok = false;
            res.counterexample = Pattern(d, std::move(s));
            return false;
        }
        return true;
    });
    return res;
}

} // namespace gshift
