#include "fluxlogic/ising.hpp"

#include <algorithm>

namespace fluxlogic {

namespace {

std::pair<CellId, CellId> ordered_pair(const CellId& a, const CellId& b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
}

}  // namespace

IsingModel to_ising(const Network& net) {
    IsingModel m;
    const double phi0 = net.constants().phi0;
    for (const Cell& c : net.cells()) m.cells.push_back(c.id);

    for (const Cell& c : net.cells()) {
        const std::size_t idx = net.cell_index(c.id);
        const double inv2l = 1.0 / (2.0 * c.inductance);
        const auto& in = net.incoming(idx);

        // (bias + (phi0/2) sigma_c + sum_j d_j sigma_j)^2 * inv2l
        double delta_sq = 0.0;
        for (std::size_t k : in) delta_sq += net.couplings()[k].strength * net.couplings()[k].strength;
        m.constant += (c.bias * c.bias + phi0 * phi0 / 4.0 + delta_sq) * inv2l;

        m.h[c.id] += c.bias * phi0 * inv2l;
        for (std::size_t k : in) {
            const Coupling& cp = net.couplings()[k];
            const CellId& src = net.cell_at(cp.source).id;
            m.h[src] += c.bias * cp.strength * 2.0 * inv2l;
            m.J[ordered_pair(c.id, src)] += phi0 * cp.strength * inv2l;
        }
        for (std::size_t a = 0; a < in.size(); ++a) {
            for (std::size_t b = a + 1; b < in.size(); ++b) {
                const Coupling& ca = net.couplings()[in[a]];
                const Coupling& cb = net.couplings()[in[b]];
                m.J[ordered_pair(net.cell_at(ca.source).id, net.cell_at(cb.source).id)] +=
                    ca.strength * cb.strength * 2.0 * inv2l;
            }
        }
    }
    return m;
}

double ising_energy(const IsingModel& model, const std::map<CellId, Logic>& values) {
    auto spin = [&](const CellId& id) {
        auto it = values.find(id);
        if (it == values.end())
            throw std::invalid_argument("ising_energy: assignment missing cell: " + id);
        return static_cast<double>(spin_of(it->second));
    };
    double e = model.constant;
    for (const auto& [id, coeff] : model.h) e += coeff * spin(id);
    for (const auto& [pair, coeff] : model.J) e += coeff * spin(pair.first) * spin(pair.second);
    return e;
}

std::map<CellId, Logic> resolve_all(const Network& net, const Assignment& a) {
    std::map<CellId, Logic> out;
    for (const Cell& c : net.cells()) out.emplace(c.id, resolved_value(net, a, c.id));
    return out;
}

}  // namespace fluxlogic
