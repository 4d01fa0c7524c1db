#pragma once

// Ground-state search: exact exhaustive enumeration with degeneracy and gap
// reporting, and seeded Metropolis annealing for networks past the
// enumeration limit. Both are deterministic; exact results are additionally
// independent of the worker count and the kernel backend.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fluxlogic/energy.hpp"
#include "fluxlogic/model.hpp"

namespace fluxlogic {

struct SolveOptions {
    EnergyModel model = EnergyModel::mismatch;
    std::size_t max_free_cells = 24;  // exact enumeration refusal threshold
    double tol = kDefaultTol;         // degeneracy tolerance, absolute
    std::uint64_t max_states = std::uint64_t{1} << 20;  // stored ground states cap
    unsigned workers = 1;
};

struct SolveResult {
    double min_energy = 0.0;
    /// Free cells in lexicographic id order; rank i of a packed state is bit
    /// (n-1-i), so ascending packed states are lexicographic assignments.
    std::vector<CellId> free_cells;
    /// Packed ground states, ascending. Exact mode lists the full ground
    /// manifold up to `max_states` (then `truncated` is set); annealing lists
    /// the single best state found.
    std::vector<std::uint64_t> states;
    std::uint64_t degeneracy = 0;  // full count, independent of truncation
    bool truncated = false;
    /// Energy from min_energy up to the first level above min_energy + tol;
    /// 0 when no such level exists (and in annealing results).
    double gap = 0.0;
    std::string method;  // "exact" or "anneal"
    bool certified = false;

    [[nodiscard]] Assignment assignment_at(std::size_t i) const;
    [[nodiscard]] std::vector<Assignment> assignments() const;
};

/// Enumerates all 2^n free-cell assignments. Throws SolveLimitError when the
/// free-cell count exceeds opts.max_free_cells.
[[nodiscard]] SolveResult solve_exact(const Network& net, const SolveOptions& opts = {});

struct AnnealSchedule {
    double t_initial = 2.0;
    double t_final = 0.05;
    std::uint32_t sweeps = 500;    // full passes over the free cells per restart
    std::uint32_t restarts = 8;    // independent seeded restarts
    std::uint64_t seed = 1;
    unsigned workers = 1;          // restarts may run in parallel; result is
                                   // identical for any worker count

    void validate() const;  // throws std::invalid_argument
};

/// Metropolis single-flip annealing with a geometric temperature ramp.
/// Restart r draws its RNG stream from (seed, r), so results are bit-stable
/// across runs and workers. The all-zeros assignment is always a candidate,
/// so the result never exceeds its energy.
[[nodiscard]] SolveResult anneal(const Network& net, const AnnealSchedule& schedule,
                                 const SolveOptions& opts = {});

/// Energy change of flipping free cell c: recomputes only c and the cells it
/// couples into. Throws std::invalid_argument if c is clamped.
[[nodiscard]] double single_flip_delta(const Network& net, EnergyModel model,
                                       const Assignment& a, const CellId& c,
                                       double tol = kDefaultTol);

}  // namespace fluxlogic
