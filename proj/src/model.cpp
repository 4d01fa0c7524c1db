#include "fluxlogic/model.hpp"

#include <algorithm>
#include <cmath>

namespace fluxlogic {

const char* to_string(CellRole role) {
    switch (role) {
        case CellRole::input: return "input";
        case CellRole::output: return "output";
        case CellRole::internal: return "internal";
    }
    return "internal";
}

const char* to_string(GateKind kind) {
    switch (kind) {
        case GateKind::Inv: return "inv";
        case GateKind::Fanout: return "fanout";
        case GateKind::NandNor: return "nandnor";
        case GateKind::Sand: return "sand";
        case GateKind::Or: return "or";
        case GateKind::Wire: return "wire";
        case GateKind::Edl: return "edl";
        case GateKind::Dedlu: return "dedlu";
        case GateKind::Ce3: return "3ce";
    }
    return "?";
}

CellId Network::add_cell(std::string id, double bias, CellRole role, double inductance) {
    if (id.empty()) {
        char buf[24];
        std::snprintf(buf, sizeof(buf), "_c%06llu",
                      static_cast<unsigned long long>(auto_name_counter_++));
        id = buf;
    }
    if (index_.count(id))
        throw std::invalid_argument("duplicate cell id: " + id);
    if (inductance < 0.0) inductance = constants_.default_inductance;
    if (!(inductance > 0.0))
        throw std::invalid_argument("cell " + id + ": inductance must be > 0");
    if (!(std::abs(bias) < constants_.phi0 / 2.0))
        throw std::invalid_argument("cell " + id +
                                    ": |bias| must be < phi0/2 (applied flux must stay inside (0, phi0))");
    Cell c;
    c.id = id;
    c.bias = bias;
    c.inductance = inductance;
    c.role = role;
    index_.emplace(id, cells_.size());
    cells_.push_back(std::move(c));
    incoming_.emplace_back();
    outgoing_.emplace_back();
    return cells_.back().id;
}

std::size_t Network::cell_index(const CellId& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw std::invalid_argument("unknown cell id: " + id);
    return it->second;
}

void Network::add_coupling(const CellId& source, const CellId& target, double strength) {
    const std::size_t s = cell_index(source);
    const std::size_t t = cell_index(target);
    if (s == t) throw std::invalid_argument("self-coupling on cell: " + source);
    auto key = std::make_pair(s, t);
    auto it = coupling_index_.find(key);
    if (it != coupling_index_.end()) {
        couplings_[it->second].strength += strength;
        return;
    }
    coupling_index_.emplace(key, couplings_.size());
    couplings_.push_back(Coupling{s, t, strength});
    incoming_[t].push_back(couplings_.size() - 1);
    outgoing_[s].push_back(couplings_.size() - 1);
}

const std::vector<std::size_t>& Network::incoming(std::size_t cell_index) const {
    return incoming_.at(cell_index);
}

const std::vector<std::size_t>& Network::outgoing(std::size_t cell_index) const {
    return outgoing_.at(cell_index);
}

void Network::set_clamp(const CellId& id, Logic value) { mutable_cell(id).clamp = value; }

void Network::clear_clamp(const CellId& id) { mutable_cell(id).clamp.reset(); }

void Network::set_role(const CellId& id, CellRole role) { mutable_cell(id).role = role; }

void Network::shift_bias(const CellId& id, double delta) {
    Cell& c = mutable_cell(id);
    const double next = c.bias + delta;
    if (!(std::abs(next) < constants_.phi0 / 2.0))
        throw std::invalid_argument("cell " + id + ": bias shift leaves (-phi0/2, phi0/2)");
    c.bias = next;
}

void Network::add_mismatch_penalty(const CellId& id, Logic on_value, double amount) {
    mutable_cell(id).mismatch_penalty[bit_of(on_value)] += amount;
}

void Network::annotate_gate(GateHandle handle) {
    for (const auto* list : {&handle.inputs, &handle.outputs, &handle.internals})
        for (const auto& id : *list) (void)cell_index(id);
    gates_.push_back(std::move(handle));
}

std::size_t Network::free_cell_count() const {
    std::size_t n = 0;
    for (const Cell& c : cells_)
        if (!c.clamp) ++n;
    return n;
}

std::vector<CellId> Network::free_cells_sorted() const {
    std::vector<CellId> out;
    for (const Cell& c : cells_)
        if (!c.clamp) out.push_back(c.id);
    std::sort(out.begin(), out.end());
    return out;
}

Network Network::with_clamps(std::span<const std::pair<CellId, Logic>> clamps) const {
    Network copy = *this;
    for (const auto& [id, value] : clamps) copy.set_clamp(id, value);
    return copy;
}

bool Network::structurally_equal(const Network& other) const {
    if (constants_.phi0 != other.constants_.phi0 ||
        constants_.default_inductance != other.constants_.default_inductance)
        return false;
    if (cells_.size() != other.cells_.size()) return false;
    for (const Cell& c : cells_) {
        if (!other.has_cell(c.id)) return false;
        const Cell& o = other.cell(c.id);
        if (c.bias != o.bias || c.inductance != o.inductance || c.clamp != o.clamp ||
            c.role != o.role || c.mismatch_penalty != o.mismatch_penalty)
            return false;
    }
    if (couplings_.size() != other.couplings_.size()) return false;
    for (const Coupling& cp : couplings_) {
        const CellId& src = cells_[cp.source].id;
        const CellId& dst = cells_[cp.target].id;
        auto it = other.coupling_index_.find(
            std::make_pair(other.cell_index(src), other.cell_index(dst)));
        if (it == other.coupling_index_.end()) return false;
        if (other.couplings_[it->second].strength != cp.strength) return false;
    }
    return true;
}

Logic resolved_value(const Network& net, const Assignment& a, const CellId& id) {
    const Cell& c = net.cell(id);
    if (c.clamp) return *c.clamp;
    auto v = a.get(id);
    if (!v) throw std::invalid_argument("assignment does not cover cell: " + id);
    return *v;
}

bool is_total(const Network& net, const Assignment& a) {
    for (const Cell& c : net.cells())
        if (!c.clamp && !a.get(c.id)) return false;
    return true;
}

}  // namespace fluxlogic
