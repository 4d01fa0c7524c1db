#include "fluxlogic/cnf.hpp"

#include <charconv>
#include <sstream>

#include "fluxlogic/errors.hpp"

namespace fluxlogic {
namespace {

bool parse_int(const std::string& token, int& out) {
    const char* first = token.data();
    const char* last = first + token.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

}  // namespace

CnfFormula parse_dimacs(const std::string& text) {
    CnfFormula cnf;
    bool have_header = false;
    std::size_t declared_clauses = 0;
    std::size_t header_line = 0;

    std::vector<int> current;          // literals of the clause being read
    std::size_t current_line = 0;      // line of its most recent literal

    const auto finish_clause = [&](std::size_t line) {
        if (current.empty()) throw ParseError(line, "empty clause");
        if (current.size() > 3)
            throw ParseError(line, "clause has " + std::to_string(current.size()) +
                                       " literals; at most 3 are supported");
        while (current.size() < 3) current.push_back(current.back());  // pad by repetition
        cnf.clauses.push_back({current[0], current[1], current[2]});
        current.clear();
    };

    std::istringstream lines(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        std::istringstream tokens(line);
        std::string tok;
        if (!(tokens >> tok)) continue;  // blank line
        if (tok == "c" || tok[0] == 'c') continue;

        if (tok == "p") {
            if (have_header) throw ParseError(lineno, "duplicate 'p cnf' header");
            std::string format;
            int vars = 0, clauses = 0;
            if (!(tokens >> format >> vars >> clauses) || format != "cnf" || vars < 0 ||
                clauses < 0)
                throw ParseError(lineno, "malformed header; expected 'p cnf <vars> <clauses>'");
            if (tokens >> tok) throw ParseError(lineno, "trailing tokens after header");
            have_header = true;
            header_line = lineno;
            cnf.num_vars = vars;
            declared_clauses = static_cast<std::size_t>(clauses);
            continue;
        }

        if (!have_header) throw ParseError(lineno, "clause before 'p cnf' header");
        // First token already consumed; process it, then the rest of the line.
        do {
            int lit = 0;
            if (!parse_int(tok, lit)) throw ParseError(lineno, "invalid literal '" + tok + "'");
            if (lit == 0) {
                finish_clause(lineno);
                continue;
            }
            const int var = lit < 0 ? -lit : lit;
            if (var > cnf.num_vars)
                throw ParseError(lineno, "literal " + std::to_string(lit) +
                                             " out of range; header declares " +
                                             std::to_string(cnf.num_vars) + " variables");
            if (current.size() == 3)
                throw ParseError(lineno, "clause has more than 3 literals");
            current.push_back(lit);
            current_line = lineno;
        } while (tokens >> tok);
    }

    if (!have_header) throw ParseError(lineno == 0 ? 1 : lineno, "missing 'p cnf' header");
    if (!current.empty())
        throw ParseError(current_line, "unterminated clause; expected closing 0");
    if (cnf.clauses.size() != declared_clauses)
        throw ParseError(header_line, "header declares " + std::to_string(declared_clauses) +
                                          " clauses, found " +
                                          std::to_string(cnf.clauses.size()));
    return cnf;
}

bool clause_satisfied(const std::array<int, 3>& clause, const std::vector<bool>& values) {
    for (int lit : clause) {
        const auto var = static_cast<std::size_t>(lit < 0 ? -lit : lit);
        const bool value = values.at(var - 1);
        if (lit > 0 ? value : !value) return true;
    }
    return false;
}

bool satisfies(const CnfFormula& cnf, const std::vector<bool>& values) {
    for (const auto& clause : cnf.clauses)
        if (!clause_satisfied(clause, values)) return false;
    return true;
}

std::size_t violated_count(const CnfFormula& cnf, const std::vector<bool>& values) {
    std::size_t violated = 0;
    for (const auto& clause : cnf.clauses)
        if (!clause_satisfied(clause, values)) ++violated;
    return violated;
}

}  // namespace fluxlogic
