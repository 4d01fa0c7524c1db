#pragma once

// 3SAT on ring networks: one free cell per variable, one clause evaluator per
// clause. Satisfiability is read off the mismatch-model ground energy: with
// gate mismatches costing 1 and each violated clause costing dedlu_strength
// (< 1), the minimum energy is exactly dedlu_strength times the minimum
// violated-clause count, so a formula is satisfiable iff the minimum energy
// falls below dedlu_strength.

#include <cstdint>
#include <string>
#include <vector>

#include "fluxlogic/cnf.hpp"
#include "fluxlogic/gates.hpp"
#include "fluxlogic/model.hpp"
#include "fluxlogic/solver.hpp"

namespace fluxlogic {

struct CompiledSat {
    Network net;
    std::vector<CellId> variable_cells;   // index i holds variable i+1
    std::vector<CellId> violation_cells;  // one per clause, in clause order
    std::vector<GateHandle> clause_gates;
    GateParams params;
};

/// Builds the decision machine: variable cells x1..xN, then one clause
/// evaluator v1..vM wired to them with the stated polarities.
[[nodiscard]] CompiledSat compile_cnf(const CnfFormula& cnf, const GateParams& p = {});

enum class SatStatus { sat, unsat, unknown };

[[nodiscard]] const char* to_string(SatStatus status);

struct SatOutcome {
    SatStatus status = SatStatus::unknown;
    /// Variable values (index i = variable i+1); verified against the formula
    /// whenever status == sat.
    std::vector<bool> assignment;
    double min_energy = 0.0;
    bool certified = false;          // exact search; unsat requires this
    std::string method;              // "exact", "structured", or "anneal"
    std::uint64_t min_violated = 0;  // meaningful when certified
};

struct SatOptions {
    /// Exact-search budget; the model field is ignored (decisions always use
    /// the mismatch model).
    SolveOptions solve;
    /// Fallback when the machine is too large for exact search.
    AnnealSchedule schedule;
    bool allow_anneal = true;
};

/// Decides satisfiability from the machine's ground energy. Exact paths
/// (certified): flat enumeration when the whole network fits the solver
/// limit, else variable-space enumeration with per-assignment relaxation of
/// the clause subnetworks. Past both limits, annealing yields SAT (with a
/// verified assignment) or UNKNOWN, never UNSAT.
[[nodiscard]] SatOutcome decide_sat(const CnfFormula& cnf, const GateParams& p = {},
                                    const SatOptions& opts = {});

/// Projects a solved state onto the variable cells.
[[nodiscard]] std::vector<bool> extract_assignment(const Network& net, const Assignment& state,
                                                   const std::vector<CellId>& variable_cells);

}  // namespace fluxlogic
