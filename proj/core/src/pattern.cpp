#include "gshift/pattern.hpp"

#include "gshift/error.hpp"

#include <algorithm>
#include <set>

namespace gshift {

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names))
{
    if (names_.empty())
        throw PreconditionError("alphabet must be nonempty");
    if (names_.size() > 255)
        throw PreconditionError("alphabet has more than 255 symbols");
    std::set<std::string> seen(names_.begin(), names_.end());
    if (seen.size() != names_.size())
        throw PreconditionError("alphabet symbol names must be unique");
}

Alphabet Alphabet::numeric(std::size_t k)
{
    std::vector<std::string> v;
    for (std::size_t i = 0; i < k; ++i)
        v.push_back(std::to_string(i));
    return Alphabet(std::move(v));
}

std::optional<Symbol> Alphabet::find(const std::string& name) const
{
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name)
            return static_cast<Symbol>(i);
    return std::nullopt;
}

Pattern::Pattern(Shape shape, std::vector<Symbol> symbols) : shape_(std::move(shape)), symbols_(std::move(symbols))
{
    if (shape_.size() != symbols_.size())
        throw PreconditionError("pattern shape has " + std::to_string(shape_.size()) + " cells but " +
                                std::to_string(symbols_.size()) + " symbols were given");
}

Pattern Pattern::constant(Shape shape, Symbol s)
{
    std::vector<Symbol> v(shape.size(), s);
    return Pattern(std::move(shape), std::move(v));
}

Symbol Pattern::at(const Element& e) const
{
    auto i = shape_.index_of(e);
    if (!i)
        throw OutOfShapeError("element " + describe(e, 4) + " is outside the pattern shape");
    return symbols_[*i];
}

std::optional<Symbol> Pattern::find(const Element& e) const
{
    auto i = shape_.index_of(e);
    if (!i)
        return std::nullopt;
    return symbols_[*i];
}

Pattern translate(const GroupModel& g, const Element& by, const Pattern& w)
{
    std::vector<std::pair<Element, Symbol>> cells;
    cells.reserve(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        cells.emplace_back(g.mul(by, w.shape()[i]), w.symbols()[i]);
    std::sort(cells.begin(), cells.end());
    std::vector<Element> es;
    std::vector<Symbol> ss;
    es.reserve(cells.size());
    ss.reserve(cells.size());
    for (auto& [e, s] : cells) {
        es.push_back(e);
        ss.push_back(s);
    }
    return Pattern(Shape::from_sorted(std::move(es)), std::move(ss));
}

Pattern union_patterns(const Pattern& u, const Pattern& v)
{
    std::vector<Element> es;
    std::vector<Symbol> ss;
    es.reserve(u.size() + v.size());
    ss.reserve(u.size() + v.size());
    std::size_t i = 0, j = 0;
    while (i < u.size() || j < v.size()) {
        if (j == v.size() || (i < u.size() && u.shape()[i] < v.shape()[j])) {
            es.push_back(u.shape()[i]);
            ss.push_back(u.symbols()[i++]);
        } else if (i == u.size() || v.shape()[j] < u.shape()[i]) {
            es.push_back(v.shape()[j]);
            ss.push_back(v.symbols()[j++]);
        } else {
            if (u.symbols()[i] != v.symbols()[j])
                throw ConflictError("patterns disagree at " + describe(u.shape()[i], 4));
            es.push_back(u.shape()[i]);
            ss.push_back(u.symbols()[i]);
            ++i;
            ++j;
        }
    }
    return Pattern(Shape::from_sorted(std::move(es)), std::move(ss));
}

Pattern restrict(const Pattern& w, const Shape& s)
{
    std::vector<Symbol> ss;
    ss.reserve(s.size());
    std::size_t i = 0;
    for (const auto& e : s) {
        while (i < w.size() && w.shape()[i] < e)
            ++i;
        if (i == w.size() || w.shape()[i] != e)
            throw OutOfShapeError("restriction target " + describe(e, 4) + " is outside the pattern shape");
        ss.push_back(w.symbols()[i]);
    }
    return Pattern(s, std::move(ss));
}

std::string describe(const Element& e, int rank)
{
    std::string s = "(";
    for (int i = 0; i < rank; ++i)
        s += (i ? "," : "") + std::to_string(e.c[i]);
    return s + ")";
}

std::string describe(const Pattern& w, int rank)
{
    std::string s = "{";
    for (std::size_t i = 0; i < w.size(); ++i)
        s += (i ? ", " : "") + describe(w.shape()[i], rank) + "=" + std::to_string(w.symbols()[i]);
    return s + "}";
}

} // namespace gshift
