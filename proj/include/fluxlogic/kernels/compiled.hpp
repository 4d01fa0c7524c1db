#pragma once

// Flattened, index-addressed view of a network for the energy kernels.
//
// Free cells are id-sorted. Free cell of rank i reads bit (n_free-1-i) of an
// assignment index, so ascending indices enumerate assignments in
// lexicographic order of the id-sorted value vector. Clamped cells and
// clamped sources are folded into per-row constants at compile time.

#include <cstdint>

#include "fluxlogic/energy.hpp"
#include "fluxlogic/model.hpp"

namespace fluxlogic::kernels {

struct CompiledNetwork {
    std::size_t n_free = 0;
    std::vector<CellId> free_cells;  // id-sorted; rank == position
    double phi0 = 1.0;

    // One row per network cell, in network cell order.
    std::vector<double> row_base;    // phi0/2 + bias + clamped-source flux
    std::vector<double> row_inv2l;   // 1 / (2 L)
    std::vector<std::int32_t> row_own_rank;  // free rank of the cell, or -1 if clamped
    std::vector<std::uint8_t> row_own_fixed; // clamp value when own_rank < 0
    std::vector<double> row_p0, row_p1;      // mismatch penalties by held value

    // CSR of free-source flux contributions per row.
    std::vector<std::uint32_t> term_begin;   // size rows + 1
    std::vector<std::uint32_t> term_rank;    // free rank of the source
    std::vector<double> term_strength;

    // Rows whose energy changes when the given free rank flips.
    std::vector<std::vector<std::uint32_t>> rows_touching;

    [[nodiscard]] std::size_t rows() const { return row_base.size(); }
    [[nodiscard]] std::uint64_t state_count() const { return std::uint64_t{1} << n_free; }
    [[nodiscard]] std::uint32_t bit_of_rank(std::uint32_t rank) const {
        return static_cast<std::uint32_t>(n_free - 1) - rank;
    }
};

/// Flattens a network. Requires fewer than 64 free cells.
[[nodiscard]] CompiledNetwork compile(const Network& net);

/// Assignment over the free cells encoded by a state index.
[[nodiscard]] Assignment materialize(const CompiledNetwork& cn, std::uint64_t state);

/// Value of the free cell with the given rank in a state index.
[[nodiscard]] inline Logic state_value(const CompiledNetwork& cn, std::uint64_t state,
                                       std::uint32_t rank) {
    return logic_from_bit(static_cast<unsigned>((state >> cn.bit_of_rank(rank)) & 1u));
}

}  // namespace fluxlogic::kernels
