#include "gshift/group.hpp"

#include "gshift/error.hpp"

#include <algorithm>

namespace gshift {

Element make_element(std::initializer_list<std::int64_t> coords)
{
    if (coords.size() > 4)
        throw PreconditionError("element has more than 4 coordinates");
    Element e;
    std::copy(coords.begin(), coords.end(), e.c.begin());
    return e;
}

GroupModel GroupModel::zd(int d)
{
    if (d < 0 || d > 4)
        throw PreconditionError("Zd supports 0 <= d <= 4, got d = " + std::to_string(d));
    GroupModel g;
    g.kind_ = GroupKind::Zd;
    g.rank_ = d;
    return g;
}

GroupModel GroupModel::torus(std::vector<std::int64_t> moduli)
{
    if (moduli.empty() || moduli.size() > 4)
        throw PreconditionError("torus needs 1..4 moduli");
    for (auto m : moduli)
        if (m < 1)
            throw PreconditionError("torus moduli must be positive");
    GroupModel g;
    g.kind_ = GroupKind::Torus;
    g.rank_ = static_cast<int>(moduli.size());
    g.moduli_ = std::move(moduli);
    return g;
}

GroupModel GroupModel::heisenberg3()
{
    GroupModel g;
    g.kind_ = GroupKind::Heisenberg3;
    g.rank_ = 3;
    return g;
}

GroupModel GroupModel::trivial() { return zd(0); }

GroupModel GroupModel::finite_table(std::vector<std::vector<int>> table)
{
    const int n = static_cast<int>(table.size());
    if (n == 0)
        throw PreconditionError("multiplication table is empty");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != n)
            throw PreconditionError("multiplication table is not square");
        for (int v : row)
            if (v < 0 || v >= n)
                throw PreconditionError("multiplication table entry out of range");
    }
    int id = -1;
    for (int e = 0; e < n && id < 0; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = table[e][x] == x && table[x][e] == x;
        if (ok)
            id = e;
    }
    if (id < 0)
        throw PreconditionError("multiplication table has no identity");
    std::vector<int> inv(n, -1);
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (table[x][y] == id && table[y][x] == id)
                inv[x] = y;
    for (int x = 0; x < n; ++x)
        if (inv[x] < 0)
            throw PreconditionError("element " + std::to_string(x) + " has no inverse");
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw PreconditionError("multiplication table is not associative");
    bool ab = true;
    for (int a = 0; a < n && ab; ++a)
        for (int b = 0; b < n && ab; ++b)
            ab = table[a][b] == table[b][a];
    GroupModel g;
    g.kind_ = GroupKind::FiniteTable;
    g.rank_ = 1;
    g.identity_index_ = id;
    g.abelian_table_ = ab;
    g.table_ = std::make_shared<const std::vector<std::vector<int>>>(std::move(table));
    g.inverse_ = std::make_shared<const std::vector<int>>(std::move(inv));
    return g;
}

Element GroupModel::identity() const
{
    Element e;
    if (kind_ == GroupKind::FiniteTable)
        e.c[0] = identity_index_;
    return e;
}

namespace {

std::int64_t mod(std::int64_t a, std::int64_t m)
{
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

} // namespace

Element GroupModel::mul(const Element& a, const Element& b) const
{
    Element r;
    switch (kind_) {
    case GroupKind::Zd:
        for (int i = 0; i < rank_; ++i)
            r.c[i] = a.c[i] + b.c[i];
        break;
    case GroupKind::Torus:
        for (int i = 0; i < rank_; ++i)
            r.c[i] = mod(a.c[i] + b.c[i], moduli_[i]);
        break;
    case GroupKind::Heisenberg3:
        r.c[0] = a.c[0] + b.c[0];
        r.c[1] = a.c[1] + b.c[1];
        r.c[2] = a.c[2] + b.c[2] + a.c[0] * b.c[1];
        break;
    case GroupKind::FiniteTable:
        r.c[0] = (*table_)[a.c[0]][b.c[0]];
        break;
    }
    return r;
}

Element GroupModel::inv(const Element& a) const
{
    Element r;
    switch (kind_) {
    case GroupKind::Zd:
        for (int i = 0; i < rank_; ++i)
            r.c[i] = -a.c[i];
        break;
    case GroupKind::Torus:
        for (int i = 0; i < rank_; ++i)
            r.c[i] = mod(-a.c[i], moduli_[i]);
        break;
    case GroupKind::Heisenberg3:
        r.c[0] = -a.c[0];
        r.c[1] = -a.c[1];
        r.c[2] = -a.c[2] + a.c[0] * a.c[1];
        break;
    case GroupKind::FiniteTable:
        r.c[0] = (*inverse_)[a.c[0]];
        break;
    }
    return r;
}

Element GroupModel::element(std::span<const std::int64_t> coords) const
{
    if (static_cast<int>(coords.size()) != rank_)
        throw PreconditionError(name() + " elements have " + std::to_string(rank_) +
                                " coordinates, got " + std::to_string(coords.size()));
    Element e;
    for (int i = 0; i < rank_; ++i)
        e.c[i] = coords[i];
    if (kind_ == GroupKind::Torus)
        for (int i = 0; i < rank_; ++i)
            e.c[i] = mod(e.c[i], moduli_[i]);
    if (!is_valid(e))
        throw PreconditionError("invalid element for " + name());
    return e;
}

bool GroupModel::is_valid(const Element& e) const
{
    for (int i = rank_; i < 4; ++i)
        if (e.c[i] != 0)
            return false;
    if (kind_ == GroupKind::Torus)
        for (int i = 0; i < rank_; ++i)
            if (e.c[i] < 0 || e.c[i] >= moduli_[i])
                return false;
    if (kind_ == GroupKind::FiniteTable)
        return e.c[0] >= 0 && e.c[0] < static_cast<std::int64_t>(table_->size());
    return true;
}

std::optional<std::size_t> GroupModel::order() const
{
    switch (kind_) {
    case GroupKind::Zd:
        if (rank_ == 0)
            return 1;
        return std::nullopt;
    case GroupKind::Torus: {
        std::size_t n = 1;
        for (auto m : moduli_)
            n *= static_cast<std::size_t>(m);
        return n;
    }
    case GroupKind::Heisenberg3:
        return std::nullopt;
    case GroupKind::FiniteTable:
        return table_->size();
    }
    return std::nullopt;
}

std::vector<Element> GroupModel::all_elements() const
{
    const auto n = order();
    if (!n)
        throw PreconditionError(name() + " is infinite");
    std::vector<Element> out;
    out.reserve(*n);
    if (kind_ == GroupKind::Zd) {
        out.push_back(identity());
    } else if (kind_ == GroupKind::FiniteTable) {
        for (std::size_t i = 0; i < *n; ++i) {
            Element e;
            e.c[0] = static_cast<std::int64_t>(i);
            out.push_back(e);
        }
    } else {
        Element e;
        for (std::size_t k = 0; k < *n; ++k) {
            out.push_back(e);
            for (int i = rank_ - 1; i >= 0; --i) {
                if (++e.c[i] < moduli_[i])
                    break;
                e.c[i] = 0;
            }
        }
    }
    return out;
}

std::string GroupModel::name() const
{
    switch (kind_) {
    case GroupKind::Zd:
        return "zd:" + std::to_string(rank_);
    case GroupKind::Torus: {
        std::string s = "torus:";
        for (std::size_t i = 0; i < moduli_.size(); ++i)
            s += (i ? "x" : "") + std::to_string(moduli_[i]);
        return s;
    }
    case GroupKind::Heisenberg3:
        return "heisenberg3";
    case GroupKind::FiniteTable:
        return "finite:" + std::to_string(table_->size());
    }
    return "?";
}

bool GroupModel::operator==(const GroupModel& o) const
{
    if (kind_ != o.kind_ || rank_ != o.rank_ || moduli_ != o.moduli_)
        return false;
    if (kind_ == GroupKind::FiniteTable)
        return *table_ == *o.table_;
    return true;
}

} // namespace gshift
