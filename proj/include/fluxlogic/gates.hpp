#pragma once

// Gate constructors: each appends a sub-network of cells and couplings whose
// ground states realize one Boolean relation, and records a GateHandle
// annotation on the network.
//
// All gates share one mechanism. A positive coupling of strength delta pushes
// the target's applied flux above phi0/2 when the source holds 0 and below
// when it holds 1, so a single coupled cell inverts. NAND and NOR come from
// one pair of output cells detuned by +d_bias / -d_bias and coupled to both
// inputs; the detuning breaks the tie rows. Correct operation needs the
// operating window d_bias < 2*delta < phi0/2 - d_bias: the left inequality
// lets two agreeing inputs override the detuning, the right keeps the total
// applied flux inside (0, phi0).

#include <optional>
#include <string>
#include <vector>

#include "fluxlogic/energy.hpp"
#include "fluxlogic/model.hpp"

namespace fluxlogic {

struct GateParams {
    double delta = 0.1;    // input->output coupling strength, flux units
    double d_bias = 0.05;  // NAND/NOR output detuning, flux units
    /// Strength of a degeneracy-lifting detuning, flux units.
    double edl_strength = 0.05;
    /// Decision-cell penalty: mismatch-model energy units (must stay below
    /// the unit cost of one mismatched cell). Default 0.5 makes the minimum
    /// mismatch energy of a clause network 0.5 per violated clause.
    double dedlu_strength = 0.5;

    /// Throws std::invalid_argument naming the violated constraint.
    void validate(const FluxConstants& constants) const;
};

/// A free, unbiased cell with role `input`. Auto-named when id is empty.
CellId add_input_cell(Network& net, std::string id = {});

/// `fanout` output cells, each coupled from `input` with strength delta.
/// In every ground state each output holds NOT(input).
std::vector<CellId> inverter(Network& net, const CellId& input, std::size_t fanout,
                             const GateParams& p, std::vector<std::string> output_ids = {});

/// Two chained inverters: ground states satisfy output == input.
CellId wire(Network& net, const CellId& input, const GateParams& p,
            std::string output_id = {});

struct NandNorOutputs {
    CellId o_nand;
    CellId o_nor;
};

/// The dual gate: o_nand (bias +d_bias) computes NAND(i1, i2), o_nor
/// (bias -d_bias) computes NOR(i1, i2). Validates the operating window.
NandNorOutputs nand_nor(Network& net, const CellId& i1, const CellId& i2,
                        const GateParams& p, std::string nand_id = {},
                        std::string nor_id = {});

/// AND of two inputs: a NAND/NOR pair plus an inverter on the NAND output.
CellId sand(Network& net, const CellId& i1, const CellId& i2, const GateParams& p,
            std::string output_id = {});

/// OR of two inputs: a NAND/NOR pair plus an inverter on the NOR output.
CellId or_gate(Network& net, const CellId& i1, const CellId& i2, const GateParams& p,
               std::string output_id = {});

/// Degeneracy lifting: makes `favored` the strict ground value of a cell.
/// Under the quadratic model this detunes the cell bias by +/- strength
/// (flux units); under the mismatch model it charges `strength` (energy
/// units) for holding the disfavored value. Apply once per model to lift
/// degeneracy under both.
void edl(Network& net, const CellId& cell, Logic favored, double strength,
         EnergyModel model);

/// Decision-cell EDL favoring logic 0, used to penalize a raised violation
/// flag. Mismatch-model strength must be strictly below 1 so that paying the
/// penalty is always cheaper than mismatching a gate cell.
void dedlu(Network& net, const CellId& decision_cell, double strength, EnergyModel model);

/// One literal of a clause: a variable cell and whether it appears negated.
struct LiteralRef {
    CellId variable;
    bool negated = false;
};

/// Clause evaluator for (l1 OR l2 OR l3). Feeds NOT(l_i) of each literal into
/// AND-of-ANDs (positive literals via one inverter, negated ones directly),
/// yielding a violation cell v that holds 1 exactly when the clause is
/// unsatisfied. A dedlu on v charges dedlu_strength (mismatch) and detunes by
/// edl_strength (quadratic) when the flag is raised.
CellId three_ce(Network& net, const LiteralRef& l1, const LiteralRef& l2,
                const LiteralRef& l3, const GateParams& p, std::string violation_id = {});

}  // namespace fluxlogic
