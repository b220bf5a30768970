#include "gshift/solver.hpp"

#include "gshift/error.hpp"
#include "gshift/runtime.hpp"

#include <algorithm>

namespace gshift {

ConstraintSystem::ConstraintSystem(const SftSpec& spec, const Region& domain)
    : spec_(&spec), domain_(&domain), k_(spec.witness().size())
{
    by_cell_.resize(domain.size());
    std::vector<std::uint32_t> idx(k_);
    for (std::size_t i = 0; i < domain.size(); ++i) {
        bool inside = true;
        for (std::size_t j = 0; j < k_ && inside; ++j) {
            idx[j] = domain.neighbor(i, spec.witness()[j]);
            inside = idx[j] != Region::npos;
        }
        if (!inside)
            continue;
        const auto w = static_cast<std::uint32_t>(anchors_.size());
        anchors_.push_back(static_cast<std::uint32_t>(i));
        for (auto c : idx) {
            cells_.push_back(c);
            by_cell_[c].push_back(w);
        }
    }
}

bool ConstraintSystem::window_ok(std::size_t w, const std::vector<int>& values) const
{
    const std::uint32_t* c = window(w);
    std::uint64_t code = 0, mul = 1;
    const std::uint64_t a = spec_->alphabet_size();
    for (std::size_t j = 0; j < k_; ++j) {
        const int v = values[c[j]];
        if (v < 0)
            return true;
        code += static_cast<std::uint64_t>(v) * mul;
        mul *= a;
    }
    return !spec_->is_forbidden_code(code);
}

bool ConstraintSystem::cell_ok(std::size_t cell, const std::vector<int>& values) const
{
    for (auto w : by_cell_[cell])
        if (!window_ok(w, values))
            return false;
    return true;
}

bool ConstraintSystem::window_completable(std::size_t w, const std::vector<int>& values) const
{
    const std::uint32_t* c = window(w);
    const std::uint64_t a = spec_->alphabet_size();
    std::uint64_t base = 0, mul = 1;
    std::vector<std::uint64_t> free_mul;
    for (std::size_t j = 0; j < k_; ++j) {
        const int v = values[c[j]];
        if (v < 0)
            free_mul.push_back(mul);
        else
            base += static_cast<std::uint64_t>(v) * mul;
        mul *= a;
    }
    if (free_mul.empty())
        return !spec_->is_forbidden_code(base);
    if (spec_->forbidden_count() == 0)
        return true;
    std::vector<std::uint64_t> digit(free_mul.size(), 0);
    for (;;) {
        std::uint64_t code = base;
        for (std::size_t i = 0; i < digit.size(); ++i)
            code += digit[i] * free_mul[i];
        if (!spec_->is_forbidden_code(code))
            return true;
        std::size_t i = 0;
        while (i < digit.size() && ++digit[i] == a)
            digit[i++] = 0;
        if (i == digit.size())
            return false;
    }
}

bool ConstraintSystem::cell_completable(std::size_t cell, const std::vector<int>& values) const
{
    for (auto w : by_cell_[cell])
        if (!window_completable(w, values))
            return false;
    return true;
}

long ConstraintSystem::first_violation(const std::vector<int>& values) const
{
    for (std::size_t w = 0; w < anchors_.size(); ++w)
        if (!window_ok(w, values))
            return static_cast<long>(w);
    return -1;
}

Backtracker::Backtracker(const ConstraintSystem& cs, std::vector<std::uint32_t> order,
                         std::vector<std::vector<Symbol>> candidates)
    : cs_(cs), order_(std::move(order)), cand_(std::move(candidates))
{
    if (cand_.size() != order_.size())
        throw PreconditionError("one candidate list per free cell is required");
}

template <class Visit>
bool Backtracker::run(std::vector<int>& values, bool backtrack, Visit&& visit)
{
    const std::size_t n = order_.size();
    for (auto c : order_)
        values[c] = -1;
    if (cs_.first_violation(values) >= 0)
        return false;
    if (forward_)
        for (std::size_t w = 0; w < cs_.window_count(); ++w)
            if (!cs_.window_completable(w, values))
                return false;
    std::vector<std::size_t> next(n, 0);
    std::size_t depth = 0;
    const std::uint64_t cap = caps().max_enumeration;
    for (;;) {
        if (depth == n) {
            if (!visit(values))
                return true;
            if (n == 0)
                return false;
            --depth;
            values[order_[depth]] = -1;
            continue;
        }
        const auto cell = order_[depth];
        const auto& cand = cand_[depth];
        bool placed = false;
        while (next[depth] < cand.size()) {
            values[cell] = cand[next[depth]++];
            if (++nodes_ > cap)
                throw ResourceError("search exceeded the enumeration cap of " + std::to_string(cap) + " nodes");
            if ((nodes_ & 0xffff) == 0)
                check_clock("backtracking search");
            if (forward_ ? cs_.cell_completable(cell, values) : cs_.cell_ok(cell, values)) {
                placed = true;
                break;
            }
        }
        if (placed) {
            ++depth;
            if (depth < n)
                next[depth] = 0;
            continue;
        }
        values[cell] = -1;
        if (!backtrack || depth == 0)
            return false;
        --depth;
        values[order_[depth]] = -1;
    }
}

bool Backtracker::solve(std::vector<int>& values, bool backtrack)
{
    std::vector<int> found;
    const bool ok = run(values, backtrack, [&](const std::vector<int>& v) {
        found = v;
        return false;
    });
    if (ok)
        values = std::move(found);
    return ok;
}

void Backtracker::enumerate(std::vector<int>& values, const std::function<bool(const std::vector<int>&)>& visit)
{
    run(values, true, visit);
}

std::vector<Symbol> all_symbols(std::size_t k)
{
    std::vector<Symbol> v(k);
    for (std::size_t i = 0; i < k; ++i)
        v[i] = static_cast<Symbol>(i);
    return v;
}

std::vector<Symbol> symbols_preferring(std::size_t k, std::initializer_list<Symbol> first)
{
    std::vector<Symbol> v;
    for (auto s : first)
        if (s < k && std::find(v.begin(), v.end(), s) == v.end())
            v.push_back(s);
    for (std::size_t i = 0; i < k; ++i)
        if (std::find(v.begin(), v.end(), static_cast<Symbol>(i)) == v.end())
            v.push_back(static_cast<Symbol>(i));
    return v;
}

} // namespace gshift
