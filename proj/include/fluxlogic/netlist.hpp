#pragma once

// Line-oriented netlist text format.
//
//   # comment                     (also allowed at end of line)
//   param <name> <value>          parameter block, before other statements:
//                                 phi0, inductance, delta, d, edl, dedlu,
//                                 model (quadratic|mismatch)
//   cell <name> [bias=F] [inductance=F]
//   clamp <name> <0|1>
//   couple <src> <dst> <strength>
//   penalty <name> <0|1> <amount>  extra mismatch-model energy on a value
//   input <name...> / output <name...>
//   gate inv <in> <out>
//   gate fanout <in> <out...>
//   gate wire <in> <out>
//   gate nandnor <a> <b> <o_nand> <o_nor> [delta=F] [d=F]
//   gate sand <a> <b> <out> [delta=F] [d=F]
//   gate or <a> <b> <out> [delta=F] [d=F]
//   gate edl <cell> <0|1> [strength=F] [model=quadratic|mismatch|both]
//   gate dedlu <cell> [strength=F] [model=...]
//   gate 3ce <lit> <lit> <lit> <v> [delta=F] [d=F] [edl=F] [dedlu=F]
//                                 literals: a cell name, '!'-prefixed to negate
//
// Cell names match [A-Za-z_][A-Za-z0-9_]*. Gate macros expand to exactly the
// cells and couplings the programmatic constructors create; serialization
// emits the flat cell/couple form, so parse(serialize(net)) reproduces the
// network structurally.

#include <optional>
#include <string>

#include "fluxlogic/energy.hpp"
#include "fluxlogic/gates.hpp"
#include "fluxlogic/model.hpp"

namespace fluxlogic {

struct ParsedNetlist {
    Network net;
    /// File-level defaults from the parameter block.
    GateParams params;
    /// Evaluation model requested by the file, when declared.
    std::optional<EnergyModel> model;
};

/// Throws ParseError with the 1-based line number on any malformed, unknown,
/// or invalid statement.
[[nodiscard]] ParsedNetlist parse_netlist(const std::string& text);

/// Flat textual form of the network: parameters, cells, clamps, couplings,
/// penalties and roles. Deterministic; shortest round-trip float formatting.
[[nodiscard]] std::string serialize_netlist(const Network& net,
                                            std::optional<EnergyModel> model = {});

}  // namespace fluxlogic
