#pragma once

// Cells, couplings and networks for flux-biased superconducting ring logic.
//
// A cell is a double-ring flux element biased near half a flux quantum; its
// two supercurrent directions (0 or 1 trapped quanta) store one bit. Cells
// perturb each other magnetically through directed couplings. A Network is
// the immutable-after-construction container that every solver and verifier
// consumes.

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace fluxlogic {

using CellId = std::string;

/// Logic value of a cell: equal to the number of trapped flux quanta.
/// Convention: clockwise supercurrent is logic 0, spin +1.
enum class Logic : std::uint8_t { zero = 0, one = 1 };

[[nodiscard]] constexpr Logic logic_from_bit(unsigned bit) {
    return bit & 1u ? Logic::one : Logic::zero;
}
[[nodiscard]] constexpr unsigned bit_of(Logic v) { return v == Logic::one ? 1u : 0u; }
[[nodiscard]] constexpr int spin_of(Logic v) { return v == Logic::one ? -1 : +1; }
[[nodiscard]] constexpr Logic logic_from_spin(int spin) {
    return spin < 0 ? Logic::one : Logic::zero;
}
[[nodiscard]] constexpr Logic negated(Logic v) {
    return v == Logic::one ? Logic::zero : Logic::one;
}

/// Normalized physical constants. The flux quantum and the ring inductance
/// set the flux and energy scales; all thresholds scale with them.
struct FluxConstants {
    double phi0 = 1.0;
    double default_inductance = 1.0;

    void validate() const {
        if (!(phi0 > 0.0)) throw std::invalid_argument("FluxConstants: phi0 must be > 0");
        if (!(default_inductance > 0.0))
            throw std::invalid_argument("FluxConstants: default_inductance must be > 0");
    }
};

enum class CellRole : std::uint8_t { input, output, internal };

[[nodiscard]] const char* to_string(CellRole role);

/// One double-ring element. `bias` is the signed offset of the externally
/// applied flux from phi0/2, so the applied flux before neighbor
/// perturbations is phi0/2 + bias. `mismatch_penalty[v]` is extra energy
/// charged under the mismatch model when the cell holds logic v (installed
/// by EDL/DEDLU units; zero otherwise).
struct Cell {
    CellId id;
    double bias = 0.0;
    double inductance = 1.0;
    std::optional<Logic> clamp;
    CellRole role = CellRole::internal;
    std::array<double, 2> mismatch_penalty{0.0, 0.0};
};

/// Directed magnetic perturbation: the source contributes
/// strength * spin(source) to the target's applied flux. Directedness models
/// the cancellation of output back-action onto inputs.
struct Coupling {
    std::size_t source = 0;  // cell index
    std::size_t target = 0;
    double strength = 0.0;
};

/// Gate membership metadata kept for reporting and verification.
enum class GateKind : std::uint8_t { Inv, Fanout, NandNor, Sand, Or, Wire, Edl, Dedlu, Ce3 };

[[nodiscard]] const char* to_string(GateKind kind);

struct GateHandle {
    GateKind kind;
    std::vector<CellId> inputs;
    std::vector<CellId> outputs;
    std::vector<CellId> internals;
};

class Network {
  public:
    explicit Network(FluxConstants constants = {}) : constants_(constants) {
        constants_.validate();
    }

    [[nodiscard]] const FluxConstants& constants() const { return constants_; }

    /// Adds a cell. Throws on duplicate id, non-positive inductance, or a
    /// bias outside (-phi0/2, phi0/2). An empty id draws a generated one.
    CellId add_cell(std::string id = {}, double bias = 0.0,
                    CellRole role = CellRole::internal, double inductance = -1.0);

    [[nodiscard]] bool has_cell(const CellId& id) const { return index_.count(id) > 0; }
    [[nodiscard]] std::size_t cell_index(const CellId& id) const;
    [[nodiscard]] const Cell& cell(const CellId& id) const { return cells_[cell_index(id)]; }
    [[nodiscard]] const Cell& cell_at(std::size_t index) const { return cells_.at(index); }
    [[nodiscard]] std::span<const Cell> cells() const { return cells_; }
    [[nodiscard]] std::size_t cell_count() const { return cells_.size(); }

    /// Adds a directed coupling; parallel couplings on the same ordered pair
    /// merge by summation. Self-couplings are rejected.
    void add_coupling(const CellId& source, const CellId& target, double strength);

    [[nodiscard]] std::span<const Coupling> couplings() const { return couplings_; }
    /// Indices into couplings() that target / originate from the given cell.
    [[nodiscard]] const std::vector<std::size_t>& incoming(std::size_t cell_index) const;
    [[nodiscard]] const std::vector<std::size_t>& outgoing(std::size_t cell_index) const;

    void set_clamp(const CellId& id, Logic value);
    void clear_clamp(const CellId& id);
    void set_role(const CellId& id, CellRole role);

    /// Shifts a cell's bias, keeping it strictly inside (-phi0/2, phi0/2).
    void shift_bias(const CellId& id, double delta);
    /// Adds a mismatch-model energy penalty on the given logic value.
    void add_mismatch_penalty(const CellId& id, Logic on_value, double amount);

    void annotate_gate(GateHandle handle);
    [[nodiscard]] const std::vector<GateHandle>& gate_annotations() const { return gates_; }

    [[nodiscard]] std::size_t free_cell_count() const;
    /// Free (unclamped) cell ids in lexicographic order; this is the state
    /// ordering used by solvers.
    [[nodiscard]] std::vector<CellId> free_cells_sorted() const;

    /// Copy of the network with extra clamps applied.
    [[nodiscard]] Network with_clamps(
        std::span<const std::pair<CellId, Logic>> clamps) const;

    /// Field-by-field equality of cells, couplings, and constants.
    /// Gate annotations are reporting metadata and are not compared.
    [[nodiscard]] bool structurally_equal(const Network& other) const;

  private:
    Cell& mutable_cell(const CellId& id) { return cells_[cell_index(id)]; }

    FluxConstants constants_;
    std::vector<Cell> cells_;
    std::unordered_map<CellId, std::size_t> index_;
    std::vector<Coupling> couplings_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> coupling_index_;
    std::vector<std::vector<std::size_t>> incoming_;
    std::vector<std::vector<std::size_t>> outgoing_;
    std::vector<GateHandle> gates_;
    std::uint64_t auto_name_counter_ = 0;
};

/// Total map from free cells to logic values; clamped cells resolve to their
/// clamp regardless of entries here.
class Assignment {
  public:
    Assignment() = default;
    Assignment(std::initializer_list<std::pair<const CellId, Logic>> init) : values_(init) {}

    void set(const CellId& id, Logic value) { values_[id] = value; }
    [[nodiscard]] std::optional<Logic> get(const CellId& id) const {
        auto it = values_.find(id);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }
    [[nodiscard]] const std::map<CellId, Logic>& values() const { return values_; }
    [[nodiscard]] bool operator==(const Assignment&) const = default;

  private:
    std::map<CellId, Logic> values_;
};

/// Resolves a cell's logic value: clamp first, then the assignment.
/// Throws if the cell is unknown or the assignment does not cover it.
[[nodiscard]] Logic resolved_value(const Network& net, const Assignment& a, const CellId& id);

/// True when every cell of the network resolves to a value.
[[nodiscard]] bool is_total(const Network& net, const Assignment& a);

}  // namespace fluxlogic
