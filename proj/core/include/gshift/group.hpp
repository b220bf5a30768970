#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gshift {

// Normal form of a group element. Unused coordinates are zero, so bitwise
// equality is element equality. FiniteTable elements keep their index in c[0].
struct Element {
    std::array<std::int64_t, 4> c{};

    constexpr auto operator<=>(const Element&) const = default;
    constexpr bool operator==(const Element&) const = default;
    std::int64_t operator[](std::size_t i) const { return c[i]; }
};

Element make_element(std::initializer_list<std::int64_t> coords);

struct ElementHash {
    std::size_t operator()(const Element& e) const noexcept
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (auto v : e.c) {
            h ^= static_cast<std::uint64_t>(v) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h ^ (h >> 33));
    }
};

enum class GroupKind { Zd, Torus, Heisenberg3, FiniteTable };

class GroupModel {
public:
    static GroupModel zd(int d);
    // Z/m_1 x ... x Z/m_d with coordinates normalized into [0, m_i).
    static GroupModel torus(std::vector<std::int64_t> moduli);
    static GroupModel heisenberg3();
    // table[i][j] = index of i*j. Group axioms are checked exhaustively.
    static GroupModel finite_table(std::vector<std::vector<int>> table);
    static GroupModel trivial();

    GroupKind kind() const { return kind_; }
    // Number of meaningful coordinates.
    int rank() const { return rank_; }
    const std::vector<std::int64_t>& moduli() const { return moduli_; }

    Element identity() const;
    Element mul(const Element& a, const Element& b) const;
    Element inv(const Element& a) const;
    // Validates and normalizes a coordinate tuple.
    Element element(std::span<const std::int64_t> coords) const;
    bool is_valid(const Element& e) const;
    bool is_abelian() const { return kind_ != GroupKind::Heisenberg3 && abelian_table_; }

    std::optional<std::size_t> order() const;
    std::vector<Element> all_elements() const;

    std::string name() const;
    bool operator==(const GroupModel& o) const;

private:
    GroupKind kind_ = GroupKind::Zd;
    int rank_ = 0;
    std::vector<std::int64_t> moduli_;
    std::shared_ptr<const std::vector<std::vector<int>>> table_;
    std::shared_ptr<const std::vector<int>> inverse_;
    int identity_index_ = 0;
    bool abelian_table_ = true;
};

} // namespace gshift
