#include "fluxlogic/kernels/compiled.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace fluxlogic::kernels {

CompiledNetwork compile(const Network& net) {
    CompiledNetwork cn;
    cn.phi0 = net.constants().phi0;
    cn.free_cells = net.free_cells_sorted();
    cn.n_free = cn.free_cells.size();
    if (cn.n_free >= 64)
        throw std::runtime_error("compile: " + std::to_string(cn.n_free) +
                                 " free cells exceed the 63-cell state-index limit");

    std::unordered_map<std::string, std::uint32_t> rank_of;
    rank_of.reserve(cn.n_free);
    for (std::uint32_t r = 0; r < cn.n_free; ++r) rank_of.emplace(cn.free_cells[r], r);

    const std::size_t rows = net.cell_count();
    cn.row_base.resize(rows);
    cn.row_inv2l.resize(rows);
    cn.row_own_rank.resize(rows);
    cn.row_own_fixed.resize(rows);
    cn.row_p0.resize(rows);
    cn.row_p1.resize(rows);
    cn.term_begin.assign(rows + 1, 0);
    cn.rows_touching.resize(cn.n_free);

    for (std::size_t i = 0; i < rows; ++i) {
        const Cell& c = net.cell_at(i);
        double base = cn.phi0 / 2.0 + c.bias;
        for (std::size_t ci : net.incoming(i)) {
            const Coupling& cpl = net.couplings()[ci];
            const Cell& src = net.cell_at(cpl.source);
            if (src.clamp) {
                base += cpl.strength * spin_of(*src.clamp);
            } else {
                cn.term_rank.push_back(rank_of.at(src.id));
                cn.term_strength.push_back(cpl.strength);
                ++cn.term_begin[i + 1];
            }
        }
        cn.row_base[i] = base;
        cn.row_inv2l[i] = 1.0 / (2.0 * c.inductance);
        if (c.clamp) {
            cn.row_own_rank[i] = -1;
            cn.row_own_fixed[i] = bit_of(*c.clamp);
        } else {
            cn.row_own_rank[i] = static_cast<std::int32_t>(rank_of.at(c.id));
            cn.row_own_fixed[i] = 0;
        }
        cn.row_p0[i] = c.mismatch_penalty[0];
        cn.row_p1[i] = c.mismatch_penalty[1];
    }
    for (std::size_t i = 0; i < rows; ++i) cn.term_begin[i + 1] += cn.term_begin[i];

    // Invert: which rows must be re-evaluated when a free cell flips. A row is
    // touched through its own state or through an incoming coupling; the two
    // cases never coincide because cells do not couple to themselves.
    for (std::size_t i = 0; i < rows; ++i) {
        if (cn.row_own_rank[i] >= 0)
            cn.rows_touching[static_cast<std::uint32_t>(cn.row_own_rank[i])].push_back(
                static_cast<std::uint32_t>(i));
        for (std::uint32_t t = cn.term_begin[i]; t < cn.term_begin[i + 1]; ++t)
            cn.rows_touching[cn.term_rank[t]].push_back(static_cast<std::uint32_t>(i));
    }
    for (auto& v : cn.rows_touching) std::sort(v.begin(), v.end());
    return cn;
}

Assignment materialize(const CompiledNetwork& cn, std::uint64_t state) {
    Assignment a;
    for (std::uint32_t r = 0; r < cn.n_free; ++r)
        a.set(cn.free_cells[r], state_value(cn, state, r));
    return a;
}

}  // namespace fluxlogic::kernels
