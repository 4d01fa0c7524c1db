#include "fluxlogic/energy.hpp"

namespace fluxlogic {

const char* to_string(EnergyModel model) {
    return model == EnergyModel::quadratic ? "quadratic" : "mismatch";
}

double cell_applied_flux(const Network& net, const Assignment& a, const CellId& id) {
    const std::size_t idx = net.cell_index(id);
    const Cell& c = net.cell_at(idx);
    double flux = net.constants().phi0 / 2.0 + c.bias;
    for (std::size_t k : net.incoming(idx)) {
        const Coupling& cp = net.couplings()[k];
        const Logic source = resolved_value(net, a, net.cell_at(cp.source).id);
        flux += cp.strength * static_cast<double>(spin_of(source));
    }
    return flux;
}

namespace {

double screening_energy(double applied_flux, Logic state, double phi0, double inductance) {
    const double residual = applied_flux - static_cast<double>(bit_of(state)) * phi0;
    return residual * residual / (2.0 * inductance);
}

}  // namespace

double cell_energy_quadratic(const Network& net, const Assignment& a, const CellId& id) {
    const Cell& c = net.cell(id);
    const double flux = cell_applied_flux(net, a, id);
    return screening_energy(flux, resolved_value(net, a, id), net.constants().phi0, c.inductance);
}

double cell_energy_mismatch(const Network& net, const Assignment& a, const CellId& id,
                            double tol) {
    const Cell& c = net.cell(id);
    const double flux = cell_applied_flux(net, a, id);
    const double phi0 = net.constants().phi0;
    const Logic held = resolved_value(net, a, id);
    const double own = screening_energy(flux, held, phi0, c.inductance);
    const double other = screening_energy(flux, negated(held), phi0, c.inductance);
    return own <= other + tol ? 0.0 : 1.0;
}

double network_energy(const Network& net, const Assignment& a, EnergyModel model, double tol) {
    double total = 0.0;
    for (const Cell& c : net.cells()) {
        if (model == EnergyModel::quadratic) {
            total += cell_energy_quadratic(net, a, c.id);
        } else {
            total += cell_energy_mismatch(net, a, c.id, tol);
            total += c.mismatch_penalty[bit_of(resolved_value(net, a, c.id))];
        }
    }
    return total;
}

}  // namespace fluxlogic
