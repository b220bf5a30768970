#include "gshift/error.hpp"
#include "gshift/runtime.hpp"
#include "gshift/sft.hpp"

namespace gshift {

FepWitness transport_fep_witness(const GroupModel& g, const Shape& k, const std::vector<Pattern>& forbidden,
                                 std::size_t alphabet_x, const BlockMap& phi0, const BlockMap& phi1,
                                 const TransportOptions& opt)
{
    const Element e = g.identity();
    if (!phi0.shape.contains(e) || !phi1.shape.contains(e))
        throw PreconditionError("block map shapes must contain the identity");
    if (phi0.source_alphabet != alphabet_x || phi1.target_alphabet != alphabet_x)
        throw PreconditionError("block map alphabets do not match X");
    if (phi0.target_alphabet != phi1.source_alphabet)
        throw PreconditionError("block map alphabets do not match Y");
    const std::size_t ay = phi1.source_alphabet;
    const SftSpec x(g, Alphabet::numeric(alphabet_x), k, forbidden, FillStrategy::brute_force());

    const Shape kp = product(g, product(g, phi0.shape, k), phi1.shape);
    const Shape r0k = product(g, phi0.shape, k);
    double combos = 1;
    for (std::size_t i = 0; i < kp.size(); ++i)
        combos *= static_cast<double>(ay);
    if (combos > static_cast<double>(caps().max_enumeration))
        throw ResourceError("|A_Y|^|K'| = " + std::to_string(combos) + " exceeds the enumeration cap");

    // Index tables: for h ∈ R₀K the cells h·r (r ∈ R₁) inside K'; for g ∈ R₀
    // the cells g·k (k ∈ K) inside R₀K.
    std::vector<std::vector<std::size_t>> phi1_cells(r0k.size());
    for (std::size_t i = 0; i < r0k.size(); ++i)
        for (const auto& r : phi1.shape)
            phi1_cells[i].push_back(*kp.index_of(g.mul(r0k[i], r)));
    std::vector<std::vector<std::size_t>> window_cells;
    for (const auto& a : phi0.shape) {
        std::vector<std::size_t> w;
        for (const auto& kk : k)
            w.push_back(*r0k.index_of(g.mul(a, kk)));
        window_cells.push_back(std::move(w));
    }
    std::vector<std::size_t> r0_cells;
    for (const auto& a : phi0.shape)
        r0_cells.push_back(*r0k.index_of(a));
    const std::size_t e_cell = *kp.index_of(e);

    const auto total = static_cast<std::uint64_t>(combos);
    std::vector<Symbol> u(kp.size(), 0), xs(r0k.size()), buf;
    FepWitness out{kp, {}};
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (auto& s : u) {
            s = static_cast<Symbol>(c % ay);
            c /= ay;
        }
        for (std::size_t i = 0; i < r0k.size(); ++i) {
            buf.clear();
            for (auto j : phi1_cells[i])
                buf.push_back(u[j]);
            xs[i] = phi1.rule(buf);
        }
        bool bad = false;
        for (const auto& w : window_cells) {
            buf.clear();
            for (auto j : w)
                buf.push_back(xs[j]);
            if (x.is_forbidden(buf)) {
                bad = true;
                break;
            }
        }
        if (!bad && opt.enforce_inverse) {
            buf.clear();
            for (auto j : r0_cells)
                buf.push_back(xs[j]);
            bad = phi0.rule(buf) != u[e_cell];
        }
        if (bad)
            out.forbidden.emplace_back(kp, u);
    }
    return out;
}

} // namespace gshift
