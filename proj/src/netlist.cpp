#include "fluxlogic/netlist.hpp"

#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <vector>

#include "fluxlogic/errors.hpp"

namespace fluxlogic {
namespace {

bool valid_name(const std::string& s) {
    if (s.empty()) return false;
    if (!(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return true;
}

double to_double(const std::string& tok, std::size_t line) {
    double v = 0.0;
    const char* first = tok.data();
    const char* last = first + tok.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last)
        throw ParseError(line, "invalid number '" + tok + "'");
    return v;
}

Logic to_logic(const std::string& tok, std::size_t line) {
    if (tok == "0") return Logic::zero;
    if (tok == "1") return Logic::one;
    throw ParseError(line, "expected logic value 0 or 1, got '" + tok + "'");
}

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

/// Splits trailing key=value options off a token list; returns positionals.
std::vector<std::string> split_options(const std::vector<std::string>& args,
                                       std::size_t line,
                                       std::vector<std::pair<std::string, std::string>>& kv) {
    std::vector<std::string> positional;
    for (const std::string& a : args) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) {
            if (!kv.empty())
                throw ParseError(line, "positional argument '" + a + "' after options");
            positional.push_back(a);
        } else {
            kv.emplace_back(a.substr(0, eq), a.substr(eq + 1));
        }
    }
    return positional;
}

struct ParserState {
    std::optional<Network> net;
    FluxConstants constants;
    GateParams params;
    std::optional<EnergyModel> model;

    Network& require_net() {
        if (!net) net.emplace(constants);
        return *net;
    }
};

EnergyModel parse_model_name(const std::string& tok, std::size_t line) {
    if (tok == "quadratic") return EnergyModel::quadratic;
    if (tok == "mismatch") return EnergyModel::mismatch;
    throw ParseError(line, "unknown model '" + tok + "'; expected quadratic or mismatch");
}

void handle_param(ParserState& st, const std::vector<std::string>& args, std::size_t line) {
    if (st.net)
        throw ParseError(line, "parameter lines must appear before other statements");
    if (args.size() != 2)
        throw ParseError(line, "expected: param <name> <value>");
    const std::string& name = args[0];
    if (name == "model") {
        st.model = parse_model_name(args[1], line);
        return;
    }
    const double v = to_double(args[1], line);
    if (name == "phi0")
        st.constants.phi0 = v;
    else if (name == "inductance")
        st.constants.default_inductance = v;
    else if (name == "delta")
        st.params.delta = v;
    else if (name == "d")
        st.params.d_bias = v;
    else if (name == "edl")
        st.params.edl_strength = v;
    else if (name == "dedlu")
        st.params.dedlu_strength = v;
    else
        throw ParseError(line, "unknown parameter '" + name + "'");
}

GateParams params_with_overrides(const ParserState& st,
                                 const std::vector<std::pair<std::string, std::string>>& kv,
                                 std::size_t line,
                                 std::optional<std::string>* model_out = nullptr) {
    GateParams p = st.params;
    for (const auto& [key, value] : kv) {
        if (key == "delta")
            p.delta = to_double(value, line);
        else if (key == "d")
            p.d_bias = to_double(value, line);
        else if (key == "edl" || key == "strength")
            p.edl_strength = to_double(value, line);
        else if (key == "dedlu")
            p.dedlu_strength = to_double(value, line);
        else if (key == "model" && model_out)
            *model_out = value;
        else
            throw ParseError(line, "unknown option '" + key + "'");
    }
    return p;
}

void handle_gate(ParserState& st, const std::vector<std::string>& args, std::size_t line) {
    if (args.empty()) throw ParseError(line, "expected: gate <kind> <args...>");
    Network& net = st.require_net();
    const std::string& kind = args[0];
    std::vector<std::pair<std::string, std::string>> kv;
    const std::vector<std::string> pos =
        split_options({args.begin() + 1, args.end()}, line, kv);

    const auto arity = [&](std::size_t want, const char* usage) {
        if (pos.size() != want) throw ParseError(line, std::string("expected: ") + usage);
    };

    if (kind == "inv") {
        arity(2, "gate inv <in> <out>");
        inverter(net, pos[0], 1, params_with_overrides(st, kv, line), {pos[1]});
    } else if (kind == "fanout") {
        if (pos.size() < 2)
            throw ParseError(line, "expected: gate fanout <in> <out...>");
        const std::vector<std::string> outs(pos.begin() + 1, pos.end());
        inverter(net, pos[0], outs.size(), params_with_overrides(st, kv, line), outs);
    } else if (kind == "wire") {
        arity(2, "gate wire <in> <out>");
        wire(net, pos[0], params_with_overrides(st, kv, line), pos[1]);
    } else if (kind == "nandnor") {
        arity(4, "gate nandnor <a> <b> <o_nand> <o_nor>");
        nand_nor(net, pos[0], pos[1], params_with_overrides(st, kv, line), pos[2], pos[3]);
    } else if (kind == "sand") {
        arity(3, "gate sand <a> <b> <out>");
        sand(net, pos[0], pos[1], params_with_overrides(st, kv, line), pos[2]);
    } else if (kind == "or") {
        arity(3, "gate or <a> <b> <out>");
        or_gate(net, pos[0], pos[1], params_with_overrides(st, kv, line), pos[2]);
    } else if (kind == "edl" || kind == "dedlu") {
        // Detuning units: strength defaults to the block's edl (resp. dedlu)
        // parameter; model defaults to both (resp. mismatch, since a default
        // dedlu strength is an energy penalty, not a legal bias).
        const bool is_edl = kind == "edl";
        double strength = is_edl ? st.params.edl_strength : st.params.dedlu_strength;
        std::string model_tok = is_edl ? "both" : "mismatch";
        for (const auto& [key, value] : kv) {
            if (key == "strength")
                strength = to_double(value, line);
            else if (key == "model")
                model_tok = value;
            else
                throw ParseError(line, "unknown option '" + key + "'");
        }
        std::optional<std::string> model_name = model_tok;
        Logic favored = Logic::zero;
        std::string target;
        if (is_edl) {
            arity(2, "gate edl <cell> <0|1>");
            target = pos[0];
            favored = to_logic(pos[1], line);
        } else {
            arity(1, "gate dedlu <cell>");
            target = pos[0];
        }
        const auto apply = [&](EnergyModel m) {
            if (kind == "edl")
                edl(net, target, favored, strength, m);
            else
                dedlu(net, target, strength, m);
        };
        if (*model_name == "both") {
            apply(EnergyModel::quadratic);
            apply(EnergyModel::mismatch);
        } else {
            apply(parse_model_name(*model_name, line));
        }
    } else if (kind == "3ce") {
        arity(4, "gate 3ce <lit> <lit> <lit> <v>");
        const auto lit = [&](const std::string& tok) {
            if (!tok.empty() && tok[0] == '!')
                return LiteralRef{tok.substr(1), true};
            return LiteralRef{tok, false};
        };
        three_ce(net, lit(pos[0]), lit(pos[1]), lit(pos[2]),
                 params_with_overrides(st, kv, line), pos[3]);
    } else {
        throw ParseError(line, "unknown gate kind '" + kind + "'");
    }
}

void handle_statement(ParserState& st, const std::string& keyword,
                      const std::vector<std::string>& args, std::size_t line) {
    if (keyword == "param") {
        handle_param(st, args, line);
        return;
    }
    Network& net = st.require_net();
    if (keyword == "cell") {
        if (args.empty()) throw ParseError(line, "expected: cell <name> [bias=F] [inductance=F]");
        std::vector<std::pair<std::string, std::string>> kv;
        const auto pos = split_options(args, line, kv);
        if (pos.size() != 1)
            throw ParseError(line, "expected: cell <name> [bias=F] [inductance=F]");
        if (!valid_name(pos[0])) throw ParseError(line, "invalid cell name '" + pos[0] + "'");
        double bias = 0.0;
        double inductance = -1.0;
        for (const auto& [key, value] : kv) {
            if (key == "bias")
                bias = to_double(value, line);
            else if (key == "inductance")
                inductance = to_double(value, line);
            else
                throw ParseError(line, "unknown option '" + key + "'");
        }
        net.add_cell(pos[0], bias, CellRole::internal, inductance);
    } else if (keyword == "clamp") {
        if (args.size() != 2) throw ParseError(line, "expected: clamp <name> <0|1>");
        net.set_clamp(args[0], to_logic(args[1], line));
    } else if (keyword == "couple") {
        if (args.size() != 3)
            throw ParseError(line, "expected: couple <src> <dst> <strength>");
        net.add_coupling(args[0], args[1], to_double(args[2], line));
    } else if (keyword == "penalty") {
        if (args.size() != 3)
            throw ParseError(line, "expected: penalty <name> <0|1> <amount>");
        net.add_mismatch_penalty(args[0], to_logic(args[1], line), to_double(args[2], line));
    } else if (keyword == "input" || keyword == "output") {
        if (args.empty()) throw ParseError(line, "expected: " + keyword + " <name...>");
        for (const std::string& id : args)
            net.set_role(id, keyword == "input" ? CellRole::input : CellRole::output);
    } else if (keyword == "gate") {
        handle_gate(st, args, line);
    } else {
        throw ParseError(line, "unknown statement '" + keyword + "'");
    }
}

}  // namespace

ParsedNetlist parse_netlist(const std::string& text) {
    ParserState st;
    std::istringstream lines(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(lines, raw)) {
        ++lineno;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream tokens(raw);
        std::string keyword;
        if (!(tokens >> keyword)) continue;
        std::vector<std::string> args;
        for (std::string tok; tokens >> tok;) args.push_back(tok);
        try {
            handle_statement(st, keyword, args, lineno);
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception& e) {
            throw ParseError(lineno, e.what());
        }
    }
    ParsedNetlist out;
    out.net = std::move(st.require_net());
    out.params = st.params;
    out.model = st.model;
    return out;
}

std::string serialize_netlist(const Network& net, std::optional<EnergyModel> model) {
    for (const Cell& c : net.cells())
        if (!valid_name(c.id))
            throw std::invalid_argument("serialize_netlist: cell name '" + c.id +
                                        "' is not representable in the text format");

    std::ostringstream out;
    out << "param phi0 " << format_double(net.constants().phi0) << "\n";
    out << "param inductance " << format_double(net.constants().default_inductance) << "\n";
    if (model) out << "param model " << to_string(*model) << "\n";

    for (const Cell& c : net.cells()) {
        out << "cell " << c.id;
        if (c.bias != 0.0) out << " bias=" << format_double(c.bias);
        if (c.inductance != net.constants().default_inductance)
            out << " inductance=" << format_double(c.inductance);
        out << "\n";
    }
    for (const Cell& c : net.cells())
        if (c.clamp) out << "clamp " << c.id << ' ' << bit_of(*c.clamp) << "\n";
    for (const Coupling& cpl : net.couplings())
        out << "couple " << net.cell_at(cpl.source).id << ' ' << net.cell_at(cpl.target).id
            << ' ' << format_double(cpl.strength) << "\n";
    for (const Cell& c : net.cells())
        for (unsigned v = 0; v < 2; ++v)
            if (c.mismatch_penalty[v] != 0.0)
                out << "penalty " << c.id << ' ' << v << ' '
                    << format_double(c.mismatch_penalty[v]) << "\n";
    for (const char* role : {"input", "output"}) {
        std::string ids;
        for (const Cell& c : net.cells())
            if (to_string(c.role) == std::string(role)) ids += ' ' + c.id;
        if (!ids.empty()) out << role << ids << "\n";
    }
    return out.str();
}

}  // namespace fluxlogic
