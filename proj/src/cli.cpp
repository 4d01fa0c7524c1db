#include "fluxlogic/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fluxlogic/cnf.hpp"
#include "fluxlogic/errors.hpp"
#include "fluxlogic/gates.hpp"
#include "fluxlogic/ising.hpp"
#include "fluxlogic/kernels/dispatch.hpp"
#include "fluxlogic/netlist.hpp"
#include "fluxlogic/sat.hpp"
#include "fluxlogic/solver.hpp"
#include "fluxlogic/verify.hpp"

namespace fluxlogic {
namespace {

using ordered_json = nlohmann::ordered_json;

struct CommonOptions {
    std::string model;  // empty = netlist default, else mismatch
    std::size_t max_exact = 24;
    double tol = kDefaultTol;
    bool json = false;
    std::string backend = "auto";
    unsigned workers = 1;
};

struct ScheduleOptions {
    std::uint64_t seed = 1;
    std::uint32_t sweeps = 500;
    std::uint32_t restarts = 8;
    double t_initial = 2.0;
    double t_final = 0.05;
};

void add_common_options(CLI::App* cmd, CommonOptions& c) {
    cmd->add_option("--model", c.model, "Energy model (default: netlist setting, else mismatch)")
        ->check(CLI::IsMember({"quadratic", "mismatch"}));
    cmd->add_option("--max-exact", c.max_exact,
                    "Free-cell limit for exact enumeration (default 24)");
    cmd->add_option("--tol", c.tol, "Degeneracy tolerance (default 1e-9)");
    cmd->add_flag("--json", c.json, "Machine-readable output");
    cmd->add_option("--backend", c.backend, "Energy kernel backend (default auto)")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));
    cmd->add_option("--workers", c.workers, "Worker threads for solvers (default 1)");
}

void add_schedule_options(CLI::App* cmd, ScheduleOptions& s) {
    cmd->add_option("--seed", s.seed, "Annealing master seed (default 1)");
    cmd->add_option("--sweeps", s.sweeps, "Sweeps per restart (default 500)");
    cmd->add_option("--restarts", s.restarts, "Independent restarts (default 8)");
    cmd->add_option("--t0", s.t_initial, "Initial temperature (default 2.0)");
    cmd->add_option("--t1", s.t_final, "Final temperature (default 0.05)");
}

void apply_backend(const CommonOptions& c) {
    using kernels::Backend;
    if (c.backend == "scalar")
        kernels::set_active_backend(Backend::scalar);
    else if (c.backend == "avx2")
        kernels::set_active_backend(Backend::avx2);
    else
        kernels::set_active_backend(kernels::preferred_backend());
}

AnnealSchedule to_schedule(const ScheduleOptions& s, unsigned workers) {
    AnnealSchedule sched;
    sched.seed = s.seed;
    sched.sweeps = s.sweeps;
    sched.restarts = s.restarts;
    sched.t_initial = s.t_initial;
    sched.t_final = s.t_final;
    sched.workers = workers;
    return sched;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

EnergyModel resolve_model(const CommonOptions& c, const ParsedNetlist& pn) {
    if (c.model == "quadratic") return EnergyModel::quadratic;
    if (c.model == "mismatch") return EnergyModel::mismatch;
    return pn.model.value_or(EnergyModel::mismatch);
}

SolveOptions to_solve_options(const CommonOptions& c, EnergyModel model,
                              std::uint64_t max_states) {
    SolveOptions opts;
    opts.model = model;
    opts.max_free_cells = c.max_exact;
    opts.tol = c.tol;
    opts.max_states = max_states;
    opts.workers = c.workers;
    return opts;
}

ordered_json state_to_json(const Network& net, const SolveResult& res, std::size_t i) {
    ordered_json j = ordered_json::object();
    const Assignment a = res.assignment_at(i);
    for (const CellId& id : res.free_cells) j[id] = bit_of(*a.get(id));
    (void)net;
    return j;
}

void print_state_line(std::ostream& out, const SolveResult& res, std::size_t i) {
    const Assignment a = res.assignment_at(i);
    bool first = true;
    for (const CellId& id : res.free_cells) {
        out << (first ? "" : " ") << id << '=' << bit_of(*a.get(id));
        first = false;
    }
    out << '\n';
}

ordered_json result_header(const char* command, const CommonOptions& c, EnergyModel model) {
    ordered_json j;
    j["format_version"] = 1;
    j["command"] = command;
    j["model"] = to_string(model);
    j["backend"] = kernels::to_string(kernels::active_backend());
    (void)c;
    return j;
}

int run_solve(std::ostream& out, std::ostream& err, const std::string& path,
              const CommonOptions& copts, const ScheduleOptions& sopts, bool do_anneal,
              std::uint64_t max_states) {
    const ParsedNetlist pn = parse_netlist(read_file(path));
    const EnergyModel model = resolve_model(copts, pn);
    const SolveOptions opts = to_solve_options(copts, model, max_states);

    SolveResult res;
    if (pn.net.free_cell_count() > opts.max_free_cells) {
        if (!do_anneal) {
            err << "error: " << pn.net.free_cell_count() << " free cells exceed --max-exact "
                << opts.max_free_cells << "; rerun with --anneal or raise the limit\n";
            return 2;
        }
        res = anneal(pn.net, to_schedule(sopts, copts.workers), opts);
    } else if (do_anneal) {
        res = anneal(pn.net, to_schedule(sopts, copts.workers), opts);
    } else {
        res = solve_exact(pn.net, opts);
    }

    if (copts.json) {
        ordered_json j = result_header("solve", copts, model);
        j["method"] = res.method;
        j["certified"] = res.certified;
        j["min_energy"] = res.min_energy;
        j["degeneracy"] = res.degeneracy;
        j["truncated"] = res.truncated;
        j["gap"] = res.gap;
        if (res.method == "anneal") j["seed"] = sopts.seed;
        j["free_cells"] = res.free_cells;
        ordered_json states = ordered_json::array();
        for (std::size_t i = 0; i < res.states.size(); ++i)
            states.push_back(state_to_json(pn.net, res, i));
        j["ground_states"] = states;
        out << j.dump() << '\n';
    } else {
        out << "model: " << to_string(model) << '\n';
        out << "method: " << res.method << (res.certified ? " (certified)" : "") << '\n';
        out << "min energy: " << res.min_energy << '\n';
        if (res.method == "exact") {
            out << "degeneracy: " << res.degeneracy << (res.truncated ? " (truncated)" : "")
                << ", gap: " << res.gap << '\n';
            out << "ground states:\n";
        } else {
            out << "best state:\n";
        }
        for (std::size_t i = 0; i < res.states.size(); ++i) {
            out << "  ";
            print_state_line(out, res, i);
        }
    }
    return 0;
}

ordered_json row_to_json(const TruthTableRow& row) {
    ordered_json j;
    ordered_json in = ordered_json::array();
    for (Logic v : row.inputs) in.push_back(bit_of(v));
    ordered_json outv = ordered_json::array();
    for (const auto& v : row.outputs) {
        if (v)
            outv.push_back(bit_of(*v));
        else
            outv.push_back(nullptr);
    }
    j["inputs"] = in;
    j["outputs"] = outv;
    j["min_energy"] = row.min_energy;
    j["degeneracy"] = row.degeneracy;
    return j;
}

void print_table(std::ostream& out, const TruthTableReport& report) {
    for (const CellId& id : report.inputs) out << id << ' ';
    out << "|";
    for (const CellId& id : report.outputs) out << ' ' << id;
    out << '\n';
    for (const TruthTableRow& row : report.rows) {
        for (Logic v : row.inputs) out << bit_of(v) << ' ';
        out << "|";
        for (const auto& v : row.outputs) {
            if (v)
                out << ' ' << bit_of(*v);
            else
                out << " ?";
        }
        out << "   E=" << row.min_energy << " deg=" << row.degeneracy << '\n';
    }
}

int run_truth_table(std::ostream& out, std::ostream& /*err*/, const std::string& path,
                    const CommonOptions& copts, const std::vector<std::string>& inputs,
                    const std::vector<std::string>& outputs) {
    const ParsedNetlist pn = parse_netlist(read_file(path));
    const EnergyModel model = resolve_model(copts, pn);
    const SolveOptions opts = to_solve_options(copts, model, std::uint64_t{1} << 20);
    const TruthTableReport report = truth_table(pn.net, inputs, outputs, opts);

    if (copts.json) {
        ordered_json j = result_header("truth-table", copts, model);
        j["inputs"] = report.inputs;
        j["outputs"] = report.outputs;
        ordered_json rows = ordered_json::array();
        for (const auto& row : report.rows) rows.push_back(row_to_json(row));
        j["rows"] = rows;
        out << j.dump() << '\n';
    } else {
        print_table(out, report);
    }
    return 0;
}

/// Builtin expected functions for check-gate, keyed by name.
BoolFunction expected_function(const std::string& name, std::size_t n_outputs) {
    const auto all = [n_outputs](Logic v) { return std::vector<Logic>(n_outputs, v); };
    if (name == "not") return [all](const std::vector<Logic>& in) { return all(negated(in.at(0))); };
    if (name == "buf") return [all](const std::vector<Logic>& in) { return all(in.at(0)); };
    const auto bin = [](const std::vector<Logic>& in, auto&& f) {
        const bool a = in.at(0) == Logic::one;
        const bool b = in.at(1) == Logic::one;
        return f(a, b);
    };
    const auto as_logic = [](bool v) { return v ? Logic::one : Logic::zero; };
    if (name == "and")
        return [=](const std::vector<Logic>& in) {
            return std::vector<Logic>{as_logic(bin(in, [](bool a, bool b) { return a && b; }))};
        };
    if (name == "or")
        return [=](const std::vector<Logic>& in) {
            return std::vector<Logic>{as_logic(bin(in, [](bool a, bool b) { return a || b; }))};
        };
    if (name == "nand")
        return [=](const std::vector<Logic>& in) {
            return std::vector<Logic>{as_logic(bin(in, [](bool a, bool b) { return !(a && b); }))};
        };
    if (name == "nor")
        return [=](const std::vector<Logic>& in) {
            return std::vector<Logic>{as_logic(bin(in, [](bool a, bool b) { return !(a || b); }))};
        };
    if (name == "nandnor")
        return [=](const std::vector<Logic>& in) {
            const bool a = in.at(0) == Logic::one;
            const bool b = in.at(1) == Logic::one;
            return std::vector<Logic>{as_logic(!(a && b)), as_logic(!(a || b))};
        };
    throw std::runtime_error("unknown expected function '" + name + "'");
}

std::string default_expect_for(GateKind kind) {
    switch (kind) {
        case GateKind::Inv:
        case GateKind::Fanout: return "not";
        case GateKind::Wire: return "buf";
        case GateKind::NandNor: return "nandnor";
        case GateKind::Sand: return "and";
        case GateKind::Or: return "or";
        default:
            throw std::runtime_error(std::string("check-gate does not support '") +
                                     to_string(kind) + "' gates");
    }
}

int run_check_gate(std::ostream& out, std::ostream& err, const std::string& path,
                   const CommonOptions& copts, const std::string& gate_name,
                   std::size_t index, std::string expect) {
    const ParsedNetlist pn = parse_netlist(read_file(path));
    const EnergyModel model = resolve_model(copts, pn);
    const SolveOptions opts = to_solve_options(copts, model, std::uint64_t{1} << 20);

    const GateHandle* handle = nullptr;
    std::size_t seen = 0;
    for (const GateHandle& g : pn.net.gate_annotations()) {
        if (to_string(g.kind) == gate_name) {
            if (seen == index) {
                handle = &g;
                break;
            }
            ++seen;
        }
    }
    if (!handle)
        throw std::runtime_error("no gate of kind '" + gate_name + "' with index " +
                                 std::to_string(index) + " in the netlist");
    if (expect.empty()) expect = default_expect_for(handle->kind);

    const GateCheckReport report =
        check_gate(pn.net, *handle, expected_function(expect, handle->outputs.size()), opts);

    if (copts.json) {
        ordered_json j = result_header("check-gate", copts, model);
        j["gate"] = gate_name;
        j["index"] = index;
        j["expect"] = expect;
        j["pass"] = report.pass;
        j["failing_rows"] = report.failing_rows;
        ordered_json rows = ordered_json::array();
        for (const auto& row : report.table.rows) rows.push_back(row_to_json(row));
        j["rows"] = rows;
        out << j.dump() << '\n';
    } else {
        out << "gate " << gate_name << " vs " << expect << ": "
            << (report.pass ? "PASS" : "FAIL") << '\n';
        print_table(out, report.table);
        if (!report.pass) {
            err << "failing rows:";
            for (std::size_t r : report.failing_rows) err << ' ' << r;
            err << '\n';
        }
    }
    return report.pass ? 0 : 1;
}

int run_sat(std::ostream& out, std::ostream& /*err*/, const std::string& path,
            const CommonOptions& copts, const ScheduleOptions& sched_opts, bool no_anneal,
            const GateParams& params) {
    const CnfFormula cnf = parse_dimacs(read_file(path));

    SatOptions opts;
    opts.solve = to_solve_options(copts, EnergyModel::mismatch, std::uint64_t{1} << 20);
    opts.schedule = to_schedule(sched_opts, copts.workers);
    opts.allow_anneal = !no_anneal;
    const SatOutcome outcome = decide_sat(cnf, params, opts);

    if (copts.json) {
        ordered_json j = result_header("sat", copts, EnergyModel::mismatch);
        j["status"] = to_string(outcome.status);
        j["method"] = outcome.method;
        j["certified"] = outcome.certified;
        j["min_energy"] = outcome.min_energy;
        if (outcome.certified)
            j["min_violated"] = outcome.min_violated;
        else
            j["min_violated"] = nullptr;
        j["num_vars"] = cnf.num_vars;
        j["num_clauses"] = cnf.clauses.size();
        if (outcome.status == SatStatus::sat) {
            ordered_json a = ordered_json::object();
            for (std::size_t i = 0; i < outcome.assignment.size(); ++i)
                a["x" + std::to_string(i + 1)] = outcome.assignment[i] ? 1 : 0;
            j["assignment"] = a;
        } else {
            j["assignment"] = nullptr;
        }
        out << j.dump() << '\n';
    } else {
        out << "status: " << to_string(outcome.status) << '\n';
        out << "method: " << outcome.method << (outcome.certified ? " (certified)" : "")
            << '\n';
        out << "min energy: " << outcome.min_energy;
        if (outcome.certified) out << " (min violated clauses: " << outcome.min_violated << ")";
        out << '\n';
        if (outcome.status == SatStatus::sat) {
            out << "assignment:";
            for (std::size_t i = 0; i < outcome.assignment.size(); ++i)
                out << ' ' << (outcome.assignment[i] ? "" : "-") << (i + 1);
            out << '\n';
        }
    }
    return outcome.status == SatStatus::unknown ? 1 : 0;
}

int run_export_ising(std::ostream& out, std::ostream& /*err*/, const std::string& path,
                     const CommonOptions& copts) {
    const ParsedNetlist pn = parse_netlist(read_file(path));
    const IsingModel im = to_ising(pn.net);

    if (copts.json) {
        ordered_json j = result_header("export-ising", copts, EnergyModel::quadratic);
        j["constant"] = im.constant;
        ordered_json h = ordered_json::object();
        for (const auto& [id, v] : im.h) h[id] = v;
        j["h"] = h;
        ordered_json couplers = ordered_json::array();
        for (const auto& [pair, v] : im.J) {
            ordered_json c;
            c["a"] = pair.first;
            c["b"] = pair.second;
            c["value"] = v;
            couplers.push_back(c);
        }
        j["j"] = couplers;
        out << j.dump() << '\n';
    } else {
        out << "constant " << im.constant << '\n';
        for (const auto& [id, v] : im.h) out << "h " << id << ' ' << v << '\n';
        for (const auto& [pair, v] : im.J)
            out << "J " << pair.first << ' ' << pair.second << ' ' << v << '\n';
    }
    return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ground-state logic toolkit for flux-biased ring networks"};
    app.require_subcommand(1);

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Ground states of a netlist");
    std::string solve_path;
    CommonOptions solve_common;
    ScheduleOptions solve_sched;
    bool solve_anneal = false;
    std::uint64_t solve_max_states = 1024;
    solve_cmd->add_option("netlist", solve_path, "Netlist file")->required();
    add_common_options(solve_cmd, solve_common);
    add_schedule_options(solve_cmd, solve_sched);
    solve_cmd->add_flag("--anneal", solve_anneal, "Anneal instead of exact enumeration");
    solve_cmd->add_option("--max-states", solve_max_states,
                          "Ground states to keep/print (default 1024)");

    // truth-table
    auto* tt_cmd = app.add_subcommand("truth-table", "Project ground states to a truth table");
    std::string tt_path;
    CommonOptions tt_common;
    std::vector<std::string> tt_inputs, tt_outputs;
    tt_cmd->add_option("netlist", tt_path, "Netlist file")->required();
    tt_cmd->add_option("--inputs", tt_inputs, "Input cells, row order")->required();
    tt_cmd->add_option("--outputs", tt_outputs, "Output cells")->required();
    add_common_options(tt_cmd, tt_common);

    // check-gate
    auto* cg_cmd = app.add_subcommand("check-gate", "Check a gate against a Boolean function");
    std::string cg_path, cg_gate, cg_expect;
    std::size_t cg_index = 0;
    CommonOptions cg_common;
    cg_cmd->add_option("netlist", cg_path, "Netlist file")->required();
    cg_cmd->add_option("--gate", cg_gate, "Gate kind recorded in the netlist")
        ->required()
        ->check(CLI::IsMember({"inv", "fanout", "wire", "nandnor", "sand", "or"}));
    cg_cmd->add_option("--index", cg_index, "Which gate of that kind (default 0)");
    cg_cmd->add_option("--expect", cg_expect,
                       "Expected function (default: the gate's own); one of "
                       "not|buf|and|or|nand|nor|nandnor")
        ->check(CLI::IsMember({"not", "buf", "and", "or", "nand", "nor", "nandnor"}));
    add_common_options(cg_cmd, cg_common);

    // sat
    auto* sat_cmd = app.add_subcommand("sat", "Decide a DIMACS CNF instance");
    std::string sat_path;
    CommonOptions sat_common;
    ScheduleOptions sat_sched;
    bool sat_no_anneal = false;
    GateParams sat_params;
    sat_cmd->add_option("dimacs", sat_path, "DIMACS CNF file")->required();
    add_common_options(sat_cmd, sat_common);
    add_schedule_options(sat_cmd, sat_sched);
    sat_cmd->add_flag("--no-anneal", sat_no_anneal,
                      "Fail instead of annealing when past exact limits");
    sat_cmd->add_option("--delta", sat_params.delta, "Coupling strength");
    sat_cmd->add_option("--d-bias", sat_params.d_bias, "NAND/NOR detuning");
    sat_cmd->add_option("--edl-strength", sat_params.edl_strength, "Flux detuning strength");
    sat_cmd->add_option("--dedlu-strength", sat_params.dedlu_strength,
                        "Violated-clause penalty");

    // export-ising
    auto* ei_cmd = app.add_subcommand("export-ising", "Reduced h/J/constant spin form");
    std::string ei_path;
    CommonOptions ei_common;
    ei_cmd->add_option("netlist", ei_path, "Netlist file")->required();
    add_common_options(ei_cmd, ei_common);

    // anneal
    auto* an_cmd = app.add_subcommand("anneal", "Seeded annealing on a netlist");
    std::string an_path;
    CommonOptions an_common;
    ScheduleOptions an_sched;
    an_cmd->add_option("netlist", an_path, "Netlist file")->required();
    add_common_options(an_cmd, an_common);
    add_schedule_options(an_cmd, an_sched);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (app.got_subcommand(solve_cmd)) {
            apply_backend(solve_common);
            return run_solve(out, err, solve_path, solve_common, solve_sched, solve_anneal,
                             solve_max_states);
        }
        if (app.got_subcommand(tt_cmd)) {
            apply_backend(tt_common);
            return run_truth_table(out, err, tt_path, tt_common, tt_inputs, tt_outputs);
        }
        if (app.got_subcommand(cg_cmd)) {
            apply_backend(cg_common);
            return run_check_gate(out, err, cg_path, cg_common, cg_gate, cg_index, cg_expect);
        }
        if (app.got_subcommand(sat_cmd)) {
            apply_backend(sat_common);
            return run_sat(out, err, sat_path, sat_common, sat_sched, sat_no_anneal,
                           sat_params);
        }
        if (app.got_subcommand(ei_cmd)) {
            apply_backend(ei_common);
            return run_export_ising(out, err, ei_path, ei_common);
        }
        if (app.got_subcommand(an_cmd)) {
            apply_backend(an_common);
            return run_solve(out, err, an_path, an_common, an_sched, /*do_anneal=*/true, 1);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const SolveLimitError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace fluxlogic
