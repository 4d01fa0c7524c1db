#pragma once

// Logic verification on top of the exact solver: truth-table extraction from
// ground-state manifolds, gate checks against expected Boolean functions,
// degeneracy-conservation checks, and flux-vs-Ising equivalence.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fluxlogic/model.hpp"
#include "fluxlogic/solver.hpp"

namespace fluxlogic {

struct TruthTableRow {
    std::vector<Logic> inputs;
    /// One entry per declared output; nullopt when degenerate ground states
    /// disagree on that output (reported as AMBIGUOUS).
    std::vector<std::optional<Logic>> outputs;
    double min_energy = 0.0;
    std::uint64_t degeneracy = 0;
};

struct TruthTableReport {
    std::vector<CellId> inputs;
    std::vector<CellId> outputs;
    std::vector<TruthTableRow> rows;  // row index = input bits, first input is
                                      // the most significant
};

/// Clamps every combination of the input cells, solves exactly, and projects
/// all ground states onto the output cells.
[[nodiscard]] TruthTableReport truth_table(const Network& net,
                                           const std::vector<CellId>& inputs,
                                           const std::vector<CellId>& outputs,
                                           const SolveOptions& opts = {});

/// expected(row inputs) -> expected output values, one per output cell.
using BoolFunction = std::function<std::vector<Logic>(const std::vector<Logic>&)>;

struct GateCheckReport {
    TruthTableReport table;
    bool pass = false;
    /// Rows whose outputs are ambiguous or differ from the expected function.
    std::vector<std::size_t> failing_rows;
};

/// Truth-tables the gate recorded in `handle` and compares with `expected`.
[[nodiscard]] GateCheckReport check_gate(const Network& net, const GateHandle& handle,
                                         const BoolFunction& expected,
                                         const SolveOptions& opts = {});

struct EdcCheckReport {
    bool pass = false;
    std::uint64_t degeneracy = 0;
    std::uint64_t expected = 0;  // 2^free_inputs
    double gap = 0.0;
};

/// Degeneracy conservation: passes when the ground manifold holds exactly
/// 2^free_inputs states and the next level sits strictly above it. Refuses
/// networks containing degeneracy-lifting units (their job is to break this).
[[nodiscard]] EdcCheckReport check_edc(const Network& net, std::size_t free_inputs,
                                       const SolveOptions& opts = {});

struct IsingEquivalenceReport {
    double max_abs_diff = 0.0;   // over the random-assignment trials
    bool argmin_sets_equal = false;
    std::size_t trials = 0;
};

/// Checks the spin-model reduction: the quadratic flux energy and the reduced
/// h/J/constant form agree on random total assignments, and full enumeration
/// finds identical ground-state sets through both representations.
[[nodiscard]] IsingEquivalenceReport check_ising_equivalence(const Network& net,
                                                             std::size_t trials,
                                                             std::uint64_t seed = 12345,
                                                             const SolveOptions& opts = {});

}  // namespace fluxlogic
