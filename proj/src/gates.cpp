#include "fluxlogic/gates.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace fluxlogic {
namespace {

[[noreturn]] void reject(const std::string& message) {
    throw std::invalid_argument("GateParams: " + message);
}

std::string num(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

/// Output cells inverting one source; no annotation (shared by composites).
std::vector<CellId> raw_inverter(Network& net, const CellId& input, std::size_t fanout,
                                 const GateParams& p, std::vector<std::string> output_ids) {
    if (fanout < 1) throw std::invalid_argument("inverter: fanout must be >= 1");
    if (!output_ids.empty() && output_ids.size() != fanout)
        throw std::invalid_argument("inverter: expected " + std::to_string(fanout) +
                                    " output ids, got " + std::to_string(output_ids.size()));
    (void)net.cell_index(input);  // reject unknown inputs before mutating
    std::vector<CellId> outs;
    outs.reserve(fanout);
    for (std::size_t k = 0; k < fanout; ++k) {
        std::string id = output_ids.empty() ? std::string{} : std::move(output_ids[k]);
        outs.push_back(net.add_cell(std::move(id)));
        net.add_coupling(input, outs.back(), p.delta);
    }
    return outs;
}

/// The detuned output pair; no annotation.
NandNorOutputs raw_nand_nor(Network& net, const CellId& i1, const CellId& i2,
                            const GateParams& p, std::string nand_id, std::string nor_id) {
    (void)net.cell_index(i1);
    (void)net.cell_index(i2);
    NandNorOutputs outs;
    outs.o_nand = net.add_cell(std::move(nand_id), p.d_bias);
    outs.o_nor = net.add_cell(std::move(nor_id), -p.d_bias);
    for (const CellId* out : {&outs.o_nand, &outs.o_nor}) {
        net.add_coupling(i1, *out, p.delta);
        net.add_coupling(i2, *out, p.delta);
    }
    return outs;
}

/// Bias detuning and/or penalty applying an EDL effect; no annotation.
void apply_edl(Network& net, const CellId& cell, Logic favored, double strength,
               EnergyModel model) {
    if (!(strength > 0.0))
        throw std::invalid_argument("edl: strength must be > 0 (got " + num(strength) + ")");
    if (model == EnergyModel::quadratic)
        net.shift_bias(cell, favored == Logic::one ? strength : -strength);
    else
        net.add_mismatch_penalty(cell, negated(favored), strength);
}

}  // namespace

void GateParams::validate(const FluxConstants& constants) const {
    if (!(delta > 0.0)) reject("delta must be > 0 (got " + num(delta) + ")");
    if (!(d_bias > 0.0)) reject("d_bias must be > 0 (got " + num(d_bias) + ")");
    const double two_delta = 2.0 * delta;
    const double ceiling = constants.phi0 / 2.0 - d_bias;
    if (!(d_bias < two_delta))
        reject("operating window requires d_bias < 2*delta; d_bias=" + num(d_bias) +
               ", 2*delta=" + num(two_delta));
    if (!(two_delta < ceiling))
        reject("operating window requires 2*delta < phi0/2 - d_bias; 2*delta=" +
               num(two_delta) + ", phi0/2 - d_bias=" + num(ceiling));
    if (!(edl_strength > 0.0) || !(edl_strength < constants.phi0 / 2.0))
        reject("edl_strength must be in (0, phi0/2) (got " + num(edl_strength) + ")");
    if (!(dedlu_strength > 0.0) || !(dedlu_strength < 1.0))
        reject("dedlu_strength must be in (0, 1) (got " + num(dedlu_strength) + ")");
}

CellId add_input_cell(Network& net, std::string id) {
    return net.add_cell(std::move(id), 0.0, CellRole::input);
}

std::vector<CellId> inverter(Network& net, const CellId& input, std::size_t fanout,
                             const GateParams& p, std::vector<std::string> output_ids) {
    p.validate(net.constants());
    std::vector<CellId> outs = raw_inverter(net, input, fanout, p, std::move(output_ids));
    for (const CellId& out : outs) net.set_role(out, CellRole::output);
    net.annotate_gate({fanout == 1 ? GateKind::Inv : GateKind::Fanout, {input}, outs, {}});
    return outs;
}

CellId wire(Network& net, const CellId& input, const GateParams& p, std::string output_id) {
    p.validate(net.constants());
    const CellId mid = raw_inverter(net, input, 1, p, {})[0];
    const CellId out = raw_inverter(net, mid, 1, p, {std::move(output_id)})[0];
    net.set_role(out, CellRole::output);
    net.annotate_gate({GateKind::Wire, {input}, {out}, {mid}});
    return out;
}

NandNorOutputs nand_nor(Network& net, const CellId& i1, const CellId& i2,
                        const GateParams& p, std::string nand_id, std::string nor_id) {
    p.validate(net.constants());
    NandNorOutputs outs = raw_nand_nor(net, i1, i2, p, std::move(nand_id), std::move(nor_id));
    net.set_role(outs.o_nand, CellRole::output);
    net.set_role(outs.o_nor, CellRole::output);
    net.annotate_gate({GateKind::NandNor, {i1, i2}, {outs.o_nand, outs.o_nor}, {}});
    return outs;
}

CellId sand(Network& net, const CellId& i1, const CellId& i2, const GateParams& p,
            std::string output_id) {
    p.validate(net.constants());
    NandNorOutputs pair = raw_nand_nor(net, i1, i2, p, {}, {});
    const CellId out = raw_inverter(net, pair.o_nand, 1, p, {std::move(output_id)})[0];
    net.set_role(out, CellRole::output);
    net.annotate_gate({GateKind::Sand, {i1, i2}, {out}, {pair.o_nand, pair.o_nor}});
    return out;
}

CellId or_gate(Network& net, const CellId& i1, const CellId& i2, const GateParams& p,
               std::string output_id) {
    p.validate(net.constants());
    NandNorOutputs pair = raw_nand_nor(net, i1, i2, p, {}, {});
    const CellId out = raw_inverter(net, pair.o_nor, 1, p, {std::move(output_id)})[0];
    net.set_role(out, CellRole::output);
    net.annotate_gate({GateKind::Or, {i1, i2}, {out}, {pair.o_nand, pair.o_nor}});
    return out;
}

void edl(Network& net, const CellId& cell, Logic favored, double strength,
         EnergyModel model) {
    apply_edl(net, cell, favored, strength, model);
    net.annotate_gate({GateKind::Edl, {}, {cell}, {}});
}

void dedlu(Network& net, const CellId& decision_cell, double strength, EnergyModel model) {
    if (model == EnergyModel::mismatch && !(strength < 1.0))
        throw std::invalid_argument(
            "dedlu: mismatch-model strength must be < 1, the cost of one mismatched cell "
            "(got " +
            num(strength) + ")");
    apply_edl(net, decision_cell, Logic::zero, strength, model);
    net.annotate_gate({GateKind::Dedlu, {}, {decision_cell}, {}});
}

CellId three_ce(Network& net, const LiteralRef& l1, const LiteralRef& l2,
                const LiteralRef& l3, const GateParams& p, std::string violation_id) {
    p.validate(net.constants());
    // The violation flag is detuned toward 0 but must still follow its gate:
    // its coupling margin delta has to dominate the detuning.
    if (!(p.edl_strength < p.delta))
        throw std::invalid_argument("three_ce: edl_strength (" + num(p.edl_strength) +
                                    ") must be below delta (" + num(p.delta) +
                                    ") or the violation flag cannot flip");
    std::vector<CellId> internals;
    std::vector<CellId> inputs;
    auto feed_of = [&](const LiteralRef& lit) -> CellId {
        (void)net.cell_index(lit.variable);
        bool seen = false;
        for (const CellId& id : inputs) seen = seen || id == lit.variable;
        if (!seen) inputs.push_back(lit.variable);
        // The AND chain wants NOT(literal): a negated literal is already the
        // variable's complement-free value, a positive one takes an inverter.
        if (lit.negated) return lit.variable;
        CellId feed = raw_inverter(net, lit.variable, 1, p, {})[0];
        internals.push_back(feed);
        return feed;
    };
    const CellId f1 = feed_of(l1);
    const CellId f2 = feed_of(l2);
    const CellId f3 = feed_of(l3);

    NandNorOutputs inner = raw_nand_nor(net, f1, f2, p, {}, {});
    const CellId both = raw_inverter(net, inner.o_nand, 1, p, {})[0];
    NandNorOutputs outer = raw_nand_nor(net, both, f3, p, {}, {});
    const CellId v = raw_inverter(net, outer.o_nand, 1, p, {std::move(violation_id)})[0];
    internals.insert(internals.end(),
                     {inner.o_nand, inner.o_nor, both, outer.o_nand, outer.o_nor});
    net.set_role(v, CellRole::output);

    // Lift the violation flag's degeneracy toward 0 under both models: the
    // mismatch penalty prices one violated clause, the bias detunes the
    // quadratic landscape the same way.
    apply_edl(net, v, Logic::zero, p.dedlu_strength, EnergyModel::mismatch);
    apply_edl(net, v, Logic::zero, p.edl_strength, EnergyModel::quadratic);

    net.annotate_gate({GateKind::Ce3, inputs, {v}, internals});
    return v;
}

}  // namespace fluxlogic
