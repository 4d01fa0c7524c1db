#pragma once

// The two energy semantics of a ring network.
//
// Quadratic model: each cell pays the inductive screening energy
// (applied_flux - s * phi0)^2 / (2 L) for driving its total flux to the
// nearest multiple of the flux quantum selected by its state s.
//
// Mismatch model: each cell pays 1 when its state is not a minimizer of its
// own quadratic branch given everyone else, 0 otherwise (ties are free), plus
// any EDL penalty installed on the held value. This idealization makes
// ground-state degeneracy counts exact where the quadratic model spreads
// residual energies across input rows.

#include "fluxlogic/model.hpp"

namespace fluxlogic {

enum class EnergyModel : std::uint8_t { quadratic, mismatch };

[[nodiscard]] const char* to_string(EnergyModel model);

/// Absolute tolerance for degeneracy / tie detection on normalized energies.
inline constexpr double kDefaultTol = 1e-9;

/// Applied flux threading a cell before its own screening response:
/// phi0/2 + bias + sum over incoming couplings of strength * spin(source).
[[nodiscard]] double cell_applied_flux(const Network& net, const Assignment& a, const CellId& id);

/// Screening energy (applied_flux - s*phi0)^2 / (2 L) of one cell.
[[nodiscard]] double cell_energy_quadratic(const Network& net, const Assignment& a,
                                           const CellId& id);

/// 1 if the cell's state fails to minimize its quadratic branch given the
/// others, else 0. Ties (applied flux exactly phi0/2) cost 0 either way.
/// EDL penalties are accounted separately by network_energy.
[[nodiscard]] double cell_energy_mismatch(const Network& net, const Assignment& a,
                                          const CellId& id, double tol = kDefaultTol);

/// Total energy over all cells (plus EDL penalties under the mismatch model).
[[nodiscard]] double network_energy(const Network& net, const Assignment& a, EnergyModel model,
                                    double tol = kDefaultTol);

}  // namespace fluxlogic
