#include "fluxlogic/kernels/dispatch.hpp"

// Reference kernels. The AVX2 variants mirror the exact operation order used
// here (no fused multiply-add, same per-row accumulation sequence), which is
// what makes the backends bit-identical. Change the arithmetic in one place
// and the other must follow.

namespace fluxlogic::kernels {
namespace {

constexpr std::uint32_t kNoFlip = 0xffffffffu;

double row_energy_from_flux(const CompiledNetwork& cn, EnergyModel model, double tol,
                            std::size_t row, double flux, unsigned own) {
    const double inv2l = cn.row_inv2l[row];
    if (model == EnergyModel::quadratic) {
        const double target = own ? cn.phi0 : 0.0;
        const double resid = flux - target;
        return (resid * resid) * inv2l;
    }
    const double d0 = flux;
    const double d1 = flux - cn.phi0;
    const double e0 = (d0 * d0) * inv2l;
    const double e1 = (d1 * d1) * inv2l;
    const double own_e = own ? e1 : e0;
    const double other_e = own ? e0 : e1;
    const double mm = own_e > other_e + tol ? 1.0 : 0.0;
    const double pen = own ? cn.row_p1[row] : cn.row_p0[row];
    return mm + pen;
}

double row_energy_state(const CompiledNetwork& cn, EnergyModel model, double tol,
                        const std::uint8_t* state, std::size_t row, std::uint32_t flip_rank) {
    double flux = cn.row_base[row];
    for (std::uint32_t t = cn.term_begin[row]; t < cn.term_begin[row + 1]; ++t) {
        const std::uint32_t rank = cn.term_rank[t];
        const unsigned bit = state[rank] ^ (rank == flip_rank ? 1u : 0u);
        const double sigma = bit ? -1.0 : 1.0;
        flux = flux + cn.term_strength[t] * sigma;
    }
    unsigned own;
    if (cn.row_own_rank[row] >= 0) {
        const auto rank = static_cast<std::uint32_t>(cn.row_own_rank[row]);
        own = state[rank] ^ (rank == flip_rank ? 1u : 0u);
    } else {
        own = cn.row_own_fixed[row];
    }
    return row_energy_from_flux(cn, model, tol, row, flux, own);
}

}  // namespace

void block_energies_scalar(const CompiledNetwork& cn, EnergyModel model, double tol,
                           std::uint64_t first, std::uint32_t count, double* out) {
    const std::size_t rows = cn.rows();
    for (std::uint32_t k = 0; k < count; ++k) {
        const std::uint64_t idx = first + k;
        double acc = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            double flux = cn.row_base[i];
            for (std::uint32_t t = cn.term_begin[i]; t < cn.term_begin[i + 1]; ++t) {
                const auto bit =
                    static_cast<unsigned>((idx >> cn.bit_of_rank(cn.term_rank[t])) & 1u);
                const double sigma = bit ? -1.0 : 1.0;
                flux = flux + cn.term_strength[t] * sigma;
            }
            unsigned own;
            if (cn.row_own_rank[i] >= 0) {
                const auto rank = static_cast<std::uint32_t>(cn.row_own_rank[i]);
                own = static_cast<unsigned>((idx >> cn.bit_of_rank(rank)) & 1u);
            } else {
                own = cn.row_own_fixed[i];
            }
            acc += row_energy_from_flux(cn, model, tol, i, flux, own);
        }
        out[k] = acc;
    }
}

double row_energy(const CompiledNetwork& cn, EnergyModel model, double tol,
                  const std::uint8_t* state, std::size_t row) {
    return row_energy_state(cn, model, tol, state, row, kNoFlip);
}

double state_energy(const CompiledNetwork& cn, EnergyModel model, double tol,
                    const std::uint8_t* state) {
    double acc = 0.0;
    for (std::size_t i = 0; i < cn.rows(); ++i)
        acc += row_energy_state(cn, model, tol, state, i, kNoFlip);
    return acc;
}

double flip_delta(const CompiledNetwork& cn, EnergyModel model, double tol,
                  const std::uint8_t* state, std::uint32_t rank) {
    double delta = 0.0;
    for (std::uint32_t row : cn.rows_touching[rank]) {
        delta += row_energy_state(cn, model, tol, state, row, rank);
        delta -= row_energy_state(cn, model, tol, state, row, kNoFlip);
    }
    return delta;
}

}  // namespace fluxlogic::kernels
