#pragma once

// Exact reduction of the quadratic flux energy to an Ising spin model.
//
// With spin sigma = +1 for logic 0 and -1 for logic 1, each cell's residual
// is bias + (phi0/2) sigma_self + sum of strength * sigma_source. Squaring
// and collecting terms yields constant + fields h + symmetric pair couplings
// J; the reduction reproduces the network energy exactly on every
// assignment.

#include "fluxlogic/energy.hpp"
#include "fluxlogic/model.hpp"

namespace fluxlogic {

struct IsingModel {
    std::vector<CellId> cells;                        // spin universe
    std::map<CellId, double> h;                       // field coefficients
    std::map<std::pair<CellId, CellId>, double> J;    // unordered pairs, first < second
    double constant = 0.0;
};

/// Expands the quadratic model of the network into an Ising model. Clamps
/// are ignored here; they constrain assignments, not the energy function.
[[nodiscard]] IsingModel to_ising(const Network& net);

/// constant + sum h_i sigma_i + sum_{i<j} J_ij sigma_i sigma_j for a total
/// assignment over the model's cells. Throws if a cell is missing.
[[nodiscard]] double ising_energy(const IsingModel& model,
                                  const std::map<CellId, Logic>& values);

/// Resolves every cell of the network (clamps included) into a total value
/// map, ready for ising_energy.
[[nodiscard]] std::map<CellId, Logic> resolve_all(const Network& net, const Assignment& a);

}  // namespace fluxlogic
