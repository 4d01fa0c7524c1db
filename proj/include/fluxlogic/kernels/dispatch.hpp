#pragma once

// Runtime-dispatched energy kernels.
//
// block_energies() evaluates total network energy for a contiguous range of
// assignment indices. The scalar and AVX2 variants use the same per-row
// accumulation order and never contract multiply-add, so their results are
// bit-identical; either backend may serve any call.

#include <cstdint>

#include "fluxlogic/kernels/compiled.hpp"

namespace fluxlogic::kernels {

enum class Backend { scalar, avx2 };

[[nodiscard]] const char* to_string(Backend b);

/// Best backend the current CPU supports.
[[nodiscard]] Backend preferred_backend();

/// True when the named backend can run on this CPU.
[[nodiscard]] bool backend_available(Backend b);

/// Process-wide backend selection; defaults to preferred_backend().
[[nodiscard]] Backend active_backend();
void set_active_backend(Backend b);  // throws std::runtime_error if unavailable

/// out[i] = total energy of assignment index (first + i), for i in [0, count).
void block_energies(const CompiledNetwork& cn, EnergyModel model, double tol,
                    std::uint64_t first, std::uint32_t count, double* out);

/// Forced-backend variants (used by the equivalence tests).
void block_energies_scalar(const CompiledNetwork& cn, EnergyModel model, double tol,
                           std::uint64_t first, std::uint32_t count, double* out);
void block_energies_avx2(const CompiledNetwork& cn, EnergyModel model, double tol,
                         std::uint64_t first, std::uint32_t count, double* out);

/// Energy of one row under a per-rank state array (one byte per free cell).
[[nodiscard]] double row_energy(const CompiledNetwork& cn, EnergyModel model, double tol,
                                const std::uint8_t* state, std::size_t row);

/// Total energy under a per-rank state array.
[[nodiscard]] double state_energy(const CompiledNetwork& cn, EnergyModel model, double tol,
                                  const std::uint8_t* state);

/// Energy change from flipping the free cell with the given rank.
[[nodiscard]] double flip_delta(const CompiledNetwork& cn, EnergyModel model, double tol,
                                const std::uint8_t* state, std::uint32_t rank);

}  // namespace fluxlogic::kernels
