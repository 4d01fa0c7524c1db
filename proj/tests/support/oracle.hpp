#pragma once

// Independent reference implementations used to cross-check the library.
//
// Everything here is recomputed from first principles rather than reusing the
// library's evaluation paths: the energies walk the raw coupling list of the
// network, the ground-state enumerator resolves values by hand, and the CNF
// oracle enumerates assignments directly. A disagreement between these and
// the library is a real bug on one side, never a shared one.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fluxlogic/energy.hpp"
#include "fluxlogic/model.hpp"

namespace oracle {

/// Dense per-cell values for a network: clamps win, the assignment covers the
/// rest. Throws if a free cell is missing from the assignment.
inline std::vector<fluxlogic::Logic> densify(const fluxlogic::Network& net,
                                             const fluxlogic::Assignment& a) {
    std::vector<fluxlogic::Logic> values;
    values.reserve(net.cell_count());
    for (const fluxlogic::Cell& c : net.cells()) {
        if (c.clamp) {
            values.push_back(*c.clamp);
        } else {
            const std::optional<fluxlogic::Logic> v = a.get(c.id);
            if (!v) throw std::runtime_error("densify: no value for " + c.id);
            values.push_back(*v);
        }
    }
    return values;
}

/// Applied flux seen by cell i: half a flux quantum, plus its bias, plus the
/// contribution of every coupling that targets it (+strength per source at
/// logic 0, -strength per source at logic 1).
inline double applied_flux(const fluxlogic::Network& net,
                           const std::vector<fluxlogic::Logic>& values, std::size_t i) {
    double flux = net.constants().phi0 / 2.0 + net.cells()[i].bias;
    for (const fluxlogic::Coupling& c : net.couplings()) {
        if (c.target != i) continue;
        flux += c.strength * (values[c.source] == fluxlogic::Logic::one ? -1.0 : 1.0);
    }
    return flux;
}

inline double quadratic_energy(const fluxlogic::Network& net,
                               const std::vector<fluxlogic::Logic>& values) {
    const double phi0 = net.constants().phi0;
    double total = 0.0;
    for (std::size_t i = 0; i < net.cell_count(); ++i) {
        const double flux = applied_flux(net, values, i);
        const double trapped = values[i] == fluxlogic::Logic::one ? phi0 : 0.0;
        const double resid = flux - trapped;
        total += resid * resid / (2.0 * net.cells()[i].inductance);
    }
    return total;
}

inline double mismatch_energy(const fluxlogic::Network& net,
                              const std::vector<fluxlogic::Logic>& values, double tol) {
    const double phi0 = net.constants().phi0;
    double total = 0.0;
    for (std::size_t i = 0; i < net.cell_count(); ++i) {
        const fluxlogic::Cell& cell = net.cells()[i];
        const double flux = applied_flux(net, values, i);
        const double e0 = flux * flux / (2.0 * cell.inductance);
        const double e1 = (flux - phi0) * (flux - phi0) / (2.0 * cell.inductance);
        const bool one = values[i] == fluxlogic::Logic::one;
        const double own = one ? e1 : e0;
        const double other = one ? e0 : e1;
        if (own > other + tol) total += 1.0;
        total += cell.mismatch_penalty[one ? 1 : 0];
    }
    return total;
}

inline double energy(const fluxlogic::Network& net,
                     const std::vector<fluxlogic::Logic>& values, fluxlogic::EnergyModel model,
                     double tol = fluxlogic::kDefaultTol) {
    return model == fluxlogic::EnergyModel::quadratic ? quadratic_energy(net, values)
                                                      : mismatch_energy(net, values, tol);
}

inline double energy(const fluxlogic::Network& net, const fluxlogic::Assignment& a,
                     fluxlogic::EnergyModel model, double tol = fluxlogic::kDefaultTol) {
    return energy(net, densify(net, a), model, tol);
}

/// Brute-force ground-state scan over the free cells. States are packed the
/// same way the solver documents them: free cells sorted by id, rank r stored
/// at bit (n_free - 1 - r), so state integers ascend in lexicographic order.
struct BruteGround {
    double min_energy = std::numeric_limits<double>::infinity();
    std::vector<std::uint64_t> states;
    double gap = 0.0;  // 0 when every state is a ground state
};

inline BruteGround brute_ground(const fluxlogic::Network& net, fluxlogic::EnergyModel model,
                                double tol = fluxlogic::kDefaultTol) {
    const std::vector<fluxlogic::CellId> free_cells = net.free_cells_sorted();
    const std::size_t n = free_cells.size();
    if (n >= 26) throw std::runtime_error("brute_ground: too many free cells");

    std::vector<std::size_t> free_index;
    free_index.reserve(n);
    for (const fluxlogic::CellId& id : free_cells) free_index.push_back(net.cell_index(id));

    std::vector<fluxlogic::Logic> values(net.cell_count(), fluxlogic::Logic::zero);
    for (const fluxlogic::Cell& c : net.cells())
        if (c.clamp) values[net.cell_index(c.id)] = *c.clamp;

    BruteGround result;
    double excited = std::numeric_limits<double>::infinity();
    std::vector<double> energies;
    energies.reserve(std::size_t{1} << n);
    for (std::uint64_t state = 0; state < (std::uint64_t{1} << n); ++state) {
        for (std::size_t r = 0; r < n; ++r) {
            const bool bit = (state >> (n - 1 - r)) & 1u;
            values[free_index[r]] = bit ? fluxlogic::Logic::one : fluxlogic::Logic::zero;
        }
        energies.push_back(energy(net, values, model, tol));
        result.min_energy = std::min(result.min_energy, energies.back());
    }
    for (std::uint64_t state = 0; state < energies.size(); ++state) {
        if (energies[state] <= result.min_energy + tol)
            result.states.push_back(state);
        else
            excited = std::min(excited, energies[state]);
    }
    if (std::isfinite(excited)) result.gap = excited - result.min_energy;
    return result;
}

/// Value of one cell inside a packed free-cell state (clamps resolve first).
inline fluxlogic::Logic state_value(const fluxlogic::Network& net, std::uint64_t state,
                                    const fluxlogic::CellId& id) {
    const fluxlogic::Cell& c = net.cell(id);
    if (c.clamp) return *c.clamp;
    const std::vector<fluxlogic::CellId> free_cells = net.free_cells_sorted();
    for (std::size_t r = 0; r < free_cells.size(); ++r) {
        if (free_cells[r] == id)
            return fluxlogic::logic_from_bit(
                static_cast<unsigned>((state >> (free_cells.size() - 1 - r)) & 1u));
    }
    throw std::runtime_error("state_value: " + id + " is neither free nor clamped");
}

/// Satisfaction of one DIMACS-style literal (positive = true value).
inline bool literal_satisfied(int lit, const std::vector<bool>& values) {
    const std::size_t v = static_cast<std::size_t>(lit > 0 ? lit : -lit) - 1;
    return lit > 0 ? values[v] : !values[v];
}

inline int violated_clauses(const std::vector<std::array<int, 3>>& clauses,
                            const std::vector<bool>& values) {
    int count = 0;
    for (const auto& cl : clauses) {
        bool sat = false;
        for (int lit : cl) sat = sat || literal_satisfied(lit, values);
        if (!sat) ++count;
    }
    return count;
}

struct CnfBrute {
    int min_violated = 0;
    std::vector<bool> best;  // an assignment attaining min_violated
};

inline CnfBrute brute_min_violated(int num_vars, const std::vector<std::array<int, 3>>& clauses) {
    if (num_vars > 24) throw std::runtime_error("brute_min_violated: too many variables");
    CnfBrute result;
    result.min_violated = std::numeric_limits<int>::max();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << num_vars); ++m) {
        std::vector<bool> values(static_cast<std::size_t>(num_vars));
        for (int v = 0; v < num_vars; ++v) values[static_cast<std::size_t>(v)] = (m >> v) & 1u;
        const int violated = violated_clauses(clauses, values);
        if (violated < result.min_violated) {
            result.min_violated = violated;
            result.best = values;
        }
    }
    return result;
}

/// Random network in the shape the Ising-equivalence checks expect: modest
/// cell count, biases and coupling strengths in bounded ranges, a bounded
/// number of incoming couplings per cell.
inline fluxlogic::Network random_network(std::mt19937_64& rng, std::size_t max_cells,
                                         double bias_lo, double bias_hi, double coup_lo,
                                         double coup_hi, std::size_t max_incoming) {
    std::uniform_int_distribution<std::size_t> cell_count_dist(2, max_cells);
    std::uniform_real_distribution<double> bias_dist(bias_lo, bias_hi);
    std::uniform_real_distribution<double> coup_dist(coup_lo, coup_hi);

    fluxlogic::Network net;
    const std::size_t n = cell_count_dist(rng);
    std::vector<fluxlogic::CellId> ids;
    ids.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        ids.push_back(net.add_cell("c" + std::to_string(i), bias_dist(rng)));

    std::uniform_int_distribution<std::size_t> incoming_dist(0, max_incoming);
    std::uniform_int_distribution<std::size_t> source_dist(0, n - 1);
    for (std::size_t target = 0; target < n; ++target) {
        // Never ask for more distinct sources than exist besides the target.
        const std::size_t incoming = std::min(incoming_dist(rng), n - 1);
        std::vector<std::size_t> sources;
        while (sources.size() < incoming) {
            const std::size_t s = source_dist(rng);
            if (s == target) continue;
            bool seen = false;
            for (std::size_t prev : sources) seen = seen || prev == s;
            if (seen) continue;
            sources.push_back(s);
            net.add_coupling(ids[s], ids[target], coup_dist(rng));
        }
    }
    return net;
}

/// Random clamp pattern over a subset of cells (possibly empty).
inline void clamp_random_cells(std::mt19937_64& rng, fluxlogic::Network& net,
                               double clamp_probability) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<fluxlogic::CellId> ids;
    for (const fluxlogic::Cell& c : net.cells()) ids.push_back(c.id);
    for (const fluxlogic::CellId& id : ids) {
        if (u(rng) < clamp_probability)
            net.set_clamp(id, u(rng) < 0.5 ? fluxlogic::Logic::zero : fluxlogic::Logic::one);
    }
}

/// Uniformly random total assignment over the free cells.
inline fluxlogic::Assignment random_assignment(std::mt19937_64& rng,
                                               const fluxlogic::Network& net) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    fluxlogic::Assignment a;
    for (const fluxlogic::CellId& id : net.free_cells_sorted())
        a.set(id, u(rng) < 0.5 ? fluxlogic::Logic::zero : fluxlogic::Logic::one);
    return a;
}

}  // namespace oracle
