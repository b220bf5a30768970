#pragma once

#include "gshift/group.hpp"
#include "gshift/shape.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gshift {

using Symbol = std::uint8_t;

class Alphabet {
public:
    // Nonempty, unique names, at most 255 symbols.
    explicit Alphabet(std::vector<std::string> names);
    static Alphabet numeric(std::size_t k);

    std::size_t size() const { return names_.size(); }
    const std::string& name(Symbol s) const { return names_.at(s); }
    std::optional<Symbol> find(const std::string& name) const;
    const std::vector<std::string>& names() const { return names_; }
    bool operator==(const Alphabet&) const = default;

private:
    std::vector<std::string> names_;
};

// Assignment of symbol indices to a shape; symbols()[i] belongs to shape()[i].
class Pattern {
public:
    Pattern() = default;
    Pattern(Shape shape, std::vector<Symbol> symbols);
    static Pattern constant(Shape shape, Symbol s);

    const Shape& shape() const { return shape_; }
    const std::vector<Symbol>& symbols() const { return symbols_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }

    // OutOfShapeError when e is not in the shape.
    Symbol at(const Element& e) const;
    std::optional<Symbol> find(const Element& e) const;

    bool operator==(const Pattern&) const = default;
    auto operator<=>(const Pattern&) const = default;

private:
    Shape shape_;
    std::vector<Symbol> symbols_;
};

// (g·w)(gs) = w(s)
Pattern translate(const GroupModel& g, const Element& by, const Pattern& w);
// ConflictError naming the first disagreeing element.
Pattern union_patterns(const Pattern& u, const Pattern& v);
// OutOfShapeError unless s ⊆ shape(w).
Pattern restrict(const Pattern& w, const Shape& s);

std::string describe(const Element& e, int rank);
// "{(x,y)=a, ...}" in canonical order
std::string describe(const Pattern& w, int rank);

} // namespace gshift
