#include "fluxlogic/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <thread>
#include <utility>

#include "fluxlogic/errors.hpp"
#include "fluxlogic/kernels/compiled.hpp"
#include "fluxlogic/kernels/dispatch.hpp"

namespace fluxlogic {
namespace {

constexpr std::uint32_t kBlock = 4096;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Chunk {
    std::uint64_t begin = 0;
    std::uint64_t end = 0;
    double min = kInf;
    double excited = kInf;  // least energy above min + tol, pass 2
    std::uint64_t count = 0;
    std::vector<std::uint64_t> states;  // ascending, capped per chunk
};

std::vector<Chunk> partition(std::uint64_t total, unsigned workers) {
    const std::uint64_t w = std::max<std::uint64_t>(1, std::min<std::uint64_t>(workers, 64));
    std::vector<Chunk> chunks;
    const std::uint64_t base = total / w;
    const std::uint64_t rem = total % w;
    std::uint64_t at = 0;
    for (std::uint64_t i = 0; i < w; ++i) {
        Chunk c;
        c.begin = at;
        c.end = at + base + (i < rem ? 1 : 0);
        at = c.end;
        if (c.end > c.begin) chunks.push_back(c);
    }
    return chunks;
}

void run_chunked(std::vector<Chunk>& chunks, const auto& body) {
    if (chunks.size() == 1) {
        body(chunks[0]);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(chunks.size());
    for (Chunk& c : chunks) threads.emplace_back([&body, &c] { body(c); });
    for (std::thread& t : threads) t.join();
}

void scan_min(const kernels::CompiledNetwork& cn, EnergyModel model, double tol, Chunk& c) {
    double buf[kBlock];
    for (std::uint64_t at = c.begin; at < c.end; at += kBlock) {
        const auto n = static_cast<std::uint32_t>(std::min<std::uint64_t>(kBlock, c.end - at));
        kernels::block_energies(cn, model, tol, at, n, buf);
        for (std::uint32_t i = 0; i < n; ++i)
            if (buf[i] < c.min) c.min = buf[i];
    }
}

void scan_collect(const kernels::CompiledNetwork& cn, EnergyModel model, double tol,
                  double threshold, std::uint64_t cap, Chunk& c) {
    double buf[kBlock];
    for (std::uint64_t at = c.begin; at < c.end; at += kBlock) {
        const auto n = static_cast<std::uint32_t>(std::min<std::uint64_t>(kBlock, c.end - at));
        kernels::block_energies(cn, model, tol, at, n, buf);
        for (std::uint32_t i = 0; i < n; ++i) {
            if (buf[i] <= threshold) {
                ++c.count;
                if (c.states.size() < cap) c.states.push_back(at + i);
            } else if (buf[i] < c.excited) {
                c.excited = buf[i];
            }
        }
    }
}

/// Deterministic per-restart RNG seed: distinct additive streams pushed
/// through the splitmix64 finalizer so adjacent restarts decorrelate.
std::uint64_t derived_seed(std::uint64_t master, std::uint64_t restart) {
    std::uint64_t s = master + (restart + 1) * 0x9e3779b97f4a7c15ULL;
    s = (s ^ (s >> 30)) * 0xbf58476d1ce4e5b9ULL;
    s = (s ^ (s >> 27)) * 0x94d049bb133111ebULL;
    return s ^ (s >> 31);
}

std::uint64_t pack_state(const kernels::CompiledNetwork& cn,
                         const std::vector<std::uint8_t>& state) {
    std::uint64_t packed = 0;
    for (std::uint32_t r = 0; r < cn.n_free; ++r)
        if (state[r]) packed |= std::uint64_t{1} << cn.bit_of_rank(r);
    return packed;
}

struct RestartOutcome {
    double energy = kInf;
    std::vector<std::uint8_t> state;
};

RestartOutcome run_restart(const kernels::CompiledNetwork& cn, const AnnealSchedule& sched,
                           EnergyModel model, double tol, std::uint32_t restart) {
    std::mt19937_64 rng(derived_seed(sched.seed, restart));
    const auto u01 = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::vector<std::uint8_t> state(cn.n_free);
    for (auto& s : state) s = static_cast<std::uint8_t>(rng() & 1u);
    double energy = kernels::state_energy(cn, model, tol, state.data());
    RestartOutcome best{energy, state};

    const double ratio = sched.t_final / sched.t_initial;
    for (std::uint32_t sweep = 0; sweep < sched.sweeps; ++sweep) {
        const double frac =
            sched.sweeps > 1 ? static_cast<double>(sweep) / (sched.sweeps - 1) : 1.0;
        const double t = sched.t_initial * std::pow(ratio, frac);
        for (std::uint32_t rank = 0; rank < cn.n_free; ++rank) {
            const double d = kernels::flip_delta(cn, model, tol, state.data(), rank);
            if (d <= 0.0 || u01() < std::exp(-d / t)) {
                state[rank] ^= 1u;
                energy += d;
                if (energy < best.energy) {
                    best.energy = energy;
                    best.state = state;
                }
            }
        }
    }
    // Incremental deltas accumulate rounding; re-anchor the reported energy.
    best.energy = kernels::state_energy(cn, model, tol, best.state.data());
    return best;
}

}  // namespace

Assignment SolveResult::assignment_at(std::size_t i) const {
    const std::uint64_t packed = states.at(i);
    const std::size_t n = free_cells.size();
    Assignment a;
    for (std::size_t r = 0; r < n; ++r)
        a.set(free_cells[r], logic_from_bit(static_cast<unsigned>(
                                 (packed >> (n - 1 - r)) & 1u)));
    return a;
}

std::vector<Assignment> SolveResult::assignments() const {
    std::vector<Assignment> out;
    out.reserve(states.size());
    for (std::size_t i = 0; i < states.size(); ++i) out.push_back(assignment_at(i));
    return out;
}

SolveResult solve_exact(const Network& net, const SolveOptions& opts) {
    const std::size_t n_free = net.free_cell_count();
    if (n_free > opts.max_free_cells) throw SolveLimitError(n_free, opts.max_free_cells);

    const kernels::CompiledNetwork cn = kernels::compile(net);
    const std::uint64_t total = cn.state_count();
    std::vector<Chunk> chunks = partition(total, opts.workers);

    run_chunked(chunks, [&](Chunk& c) { scan_min(cn, opts.model, opts.tol, c); });
    double min_energy = kInf;
    for (const Chunk& c : chunks) min_energy = std::min(min_energy, c.min);

    const double threshold = min_energy + opts.tol;
    run_chunked(chunks, [&](Chunk& c) {
        scan_collect(cn, opts.model, opts.tol, threshold, opts.max_states, c);
    });

    SolveResult r;
    r.free_cells = cn.free_cells;
    r.min_energy = min_energy;
    r.method = "exact";
    r.certified = true;
    double excited = kInf;
    for (const Chunk& c : chunks) {
        r.degeneracy += c.count;
        excited = std::min(excited, c.excited);
        for (std::uint64_t s : c.states) {
            if (r.states.size() >= opts.max_states) break;
            r.states.push_back(s);
        }
    }
    r.truncated = r.states.size() < r.degeneracy;
    r.gap = std::isfinite(excited) ? excited - min_energy : 0.0;
    return r;
}

void AnnealSchedule::validate() const {
    if (!(t_initial > 0.0) || !(t_final > 0.0))
        throw std::invalid_argument("AnnealSchedule: temperatures must be > 0");
    if (t_final > t_initial)
        throw std::invalid_argument(
            "AnnealSchedule: t_final must not exceed t_initial (non-increasing ramp)");
    if (sweeps < 1) throw std::invalid_argument("AnnealSchedule: sweeps must be >= 1");
    if (restarts < 1) throw std::invalid_argument("AnnealSchedule: restarts must be >= 1");
}

SolveResult anneal(const Network& net, const AnnealSchedule& schedule,
                   const SolveOptions& opts) {
    schedule.validate();
    const kernels::CompiledNetwork cn = kernels::compile(net);

    std::vector<RestartOutcome> outcomes(schedule.restarts);
    const unsigned workers =
        std::max(1u, std::min({schedule.workers, schedule.restarts, 64u}));
    const auto worker_body = [&](unsigned w) {
        for (std::uint32_t r = w; r < schedule.restarts; r += workers)
            outcomes[r] = run_restart(cn, schedule, opts.model, opts.tol, r);
    };
    if (workers == 1) {
        worker_body(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker_body, w);
        for (std::thread& t : threads) t.join();
    }

    // Merge in restart order: lowest energy wins, earliest restart on ties.
    std::size_t winner = 0;
    for (std::size_t r = 1; r < outcomes.size(); ++r)
        if (outcomes[r].energy < outcomes[winner].energy) winner = r;

    // The relaxed-from-rest state is always a candidate, so annealing never
    // reports worse than the all-zeros assignment.
    std::vector<std::uint8_t> zeros(cn.n_free, 0);
    const double zeros_energy = kernels::state_energy(cn, opts.model, opts.tol, zeros.data());
    const bool take_zeros = zeros_energy < outcomes[winner].energy;

    SolveResult r;
    r.free_cells = cn.free_cells;
    r.min_energy = take_zeros ? zeros_energy : outcomes[winner].energy;
    r.states = {pack_state(cn, take_zeros ? zeros : outcomes[winner].state)};
    r.degeneracy = 1;
    r.method = "anneal";
    r.certified = false;
    return r;
}

double single_flip_delta(const Network& net, EnergyModel model, const Assignment& a,
                         const CellId& c, double tol) {
    const std::size_t idx = net.cell_index(c);
    if (net.cell_at(idx).clamp)
        throw std::invalid_argument("single_flip_delta: cell '" + c + "' is clamped");

    Assignment flipped = a;
    const Logic old_value = resolved_value(net, a, c);
    flipped.set(c, negated(old_value));

    // Only c itself and the cells it couples into see a changed energy.
    std::vector<std::size_t> affected{idx};
    for (std::size_t ci : net.outgoing(idx))
        affected.push_back(net.couplings()[ci].target);

    double delta = 0.0;
    for (std::size_t cell : affected) {
        const CellId& id = net.cell_at(cell).id;
        if (model == EnergyModel::quadratic)
            delta += cell_energy_quadratic(net, flipped, id) - cell_energy_quadratic(net, a, id);
        else
            delta += cell_energy_mismatch(net, flipped, id, tol) -
                     cell_energy_mismatch(net, a, id, tol);
    }
    if (model == EnergyModel::mismatch) {
        const auto& pen = net.cell_at(idx).mismatch_penalty;
        delta += pen[bit_of(negated(old_value))] - pen[bit_of(old_value)];
    }
    return delta;
}

}  // namespace fluxlogic
