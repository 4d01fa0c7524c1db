#include "fluxlogic/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "fluxlogic/energy.hpp"
#include "fluxlogic/ising.hpp"

namespace fluxlogic {
namespace {

/// Value of `cell` in packed ground state `state`, or the clamp if any.
Logic state_value_of(const Network& net, const SolveResult& res, std::uint64_t state,
                     const CellId& cell) {
    if (const auto& clamp = net.cell(cell).clamp) return *clamp;
    const auto it = std::find(res.free_cells.begin(), res.free_cells.end(), cell);
    if (it == res.free_cells.end())
        throw std::logic_error("state_value_of: cell '" + cell + "' not in solve result");
    const std::size_t rank = static_cast<std::size_t>(it - res.free_cells.begin());
    const std::size_t bit = res.free_cells.size() - 1 - rank;
    return logic_from_bit(static_cast<unsigned>((state >> bit) & 1u));
}

}  // namespace

TruthTableReport truth_table(const Network& net, const std::vector<CellId>& inputs,
                             const std::vector<CellId>& outputs, const SolveOptions& opts) {
    for (const CellId& id : inputs) (void)net.cell_index(id);
    for (const CellId& id : outputs) (void)net.cell_index(id);

    TruthTableReport report;
    report.inputs = inputs;
    report.outputs = outputs;
    const std::size_t k = inputs.size();
    const std::uint64_t row_count = std::uint64_t{1} << k;
    for (std::uint64_t row = 0; row < row_count; ++row) {
        std::vector<std::pair<CellId, Logic>> clamps;
        TruthTableRow out_row;
        for (std::size_t i = 0; i < k; ++i) {
            const auto v = logic_from_bit(static_cast<unsigned>((row >> (k - 1 - i)) & 1u));
            clamps.emplace_back(inputs[i], v);
            out_row.inputs.push_back(v);
        }
        const Network clamped = net.with_clamps(clamps);
        const SolveResult res = solve_exact(clamped, opts);
        out_row.min_energy = res.min_energy;
        out_row.degeneracy = res.degeneracy;
        for (const CellId& o : outputs) {
            const Logic first = state_value_of(clamped, res, res.states.front(), o);
            bool agree = true;
            for (std::size_t s = 1; s < res.states.size() && agree; ++s)
                agree = state_value_of(clamped, res, res.states[s], o) == first;
            out_row.outputs.push_back(agree ? std::optional<Logic>{first} : std::nullopt);
        }
        report.rows.push_back(std::move(out_row));
    }
    return report;
}

GateCheckReport check_gate(const Network& net, const GateHandle& handle,
                           const BoolFunction& expected, const SolveOptions& opts) {
    GateCheckReport report;
    report.table = truth_table(net, handle.inputs, handle.outputs, opts);
    for (std::size_t r = 0; r < report.table.rows.size(); ++r) {
        const TruthTableRow& row = report.table.rows[r];
        const std::vector<Logic> want = expected(row.inputs);
        if (want.size() != row.outputs.size())
            throw std::invalid_argument("check_gate: expected function returned " +
                                        std::to_string(want.size()) + " values for " +
                                        std::to_string(row.outputs.size()) + " outputs");
        bool ok = true;
        for (std::size_t o = 0; o < want.size(); ++o)
            ok = ok && row.outputs[o].has_value() && *row.outputs[o] == want[o];
        if (!ok) report.failing_rows.push_back(r);
    }
    report.pass = report.failing_rows.empty();
    return report;
}

EdcCheckReport check_edc(const Network& net, std::size_t free_inputs,
                         const SolveOptions& opts) {
    for (const GateHandle& g : net.gate_annotations())
        if (g.kind == GateKind::Edl || g.kind == GateKind::Dedlu)
            throw std::invalid_argument(
                "check_edc: network contains degeneracy-lifting units; the check is "
                "only meaningful without them");

    const SolveResult res = solve_exact(net, opts);
    EdcCheckReport report;
    report.degeneracy = res.degeneracy;
    report.expected = std::uint64_t{1} << free_inputs;
    report.gap = res.gap;
    report.pass = report.degeneracy == report.expected && report.gap > 0.0;
    return report;
}

IsingEquivalenceReport check_ising_equivalence(const Network& net, std::size_t trials,
                                               std::uint64_t seed, const SolveOptions& opts) {
    const IsingModel im = to_ising(net);
    IsingEquivalenceReport report;
    report.trials = trials;

    std::mt19937_64 rng(seed);
    const std::vector<CellId> free = net.free_cells_sorted();
    for (std::size_t t = 0; t < trials; ++t) {
        Assignment a;
        for (const CellId& id : free)
            a.set(id, logic_from_bit(static_cast<unsigned>(rng() & 1u)));
        const double e_flux = network_energy(net, a, EnergyModel::quadratic, opts.tol);
        const double e_ising = ising_energy(im, resolve_all(net, a));
        report.max_abs_diff = std::max(report.max_abs_diff, std::fabs(e_flux - e_ising));
    }

    // Ground sets through both representations, as packed free-cell states.
    SolveOptions qopts = opts;
    qopts.model = EnergyModel::quadratic;
    const SolveResult flux_res = solve_exact(net, qopts);

    const std::size_t n = free.size();
    const std::uint64_t total = std::uint64_t{1} << n;
    double ising_min = std::numeric_limits<double>::infinity();
    std::vector<double> energies(total);
    for (std::uint64_t s = 0; s < total; ++s) {
        Assignment a;
        for (std::size_t i = 0; i < n; ++i)
            a.set(free[i], logic_from_bit(static_cast<unsigned>((s >> (n - 1 - i)) & 1u)));
        energies[s] = ising_energy(im, resolve_all(net, a));
        ising_min = std::min(ising_min, energies[s]);
    }
    std::vector<std::uint64_t> ising_states;
    for (std::uint64_t s = 0; s < total; ++s)
        if (energies[s] <= ising_min + qopts.tol) ising_states.push_back(s);

    report.argmin_sets_equal = ising_states == flux_res.states;
    return report;
}

}  // namespace fluxlogic
