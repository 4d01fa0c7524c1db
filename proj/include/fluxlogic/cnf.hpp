#pragma once

// DIMACS CNF input and plain clause evaluation. Clauses are held in strict
// 3-literal form; shorter clauses are padded by repeating a literal, which
// leaves satisfiability untouched and matches the fixed shape of the clause
// evaluator network.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace fluxlogic {

struct CnfFormula {
    int num_vars = 0;
    /// Signed 1-based DIMACS literals, exactly three per clause.
    std::vector<std::array<int, 3>> clauses;
};

/// Parses DIMACS CNF ("c" comments, "p cnf <vars> <clauses>" header,
/// zero-terminated clauses). Clauses of 1-2 literals are padded to 3 by
/// repetition; clauses of more than 3 literals are rejected. Errors throw
/// ParseError with the 1-based line number.
[[nodiscard]] CnfFormula parse_dimacs(const std::string& text);

/// values[i] is the assignment of variable i+1.
[[nodiscard]] bool clause_satisfied(const std::array<int, 3>& clause,
                                    const std::vector<bool>& values);
[[nodiscard]] bool satisfies(const CnfFormula& cnf, const std::vector<bool>& values);
[[nodiscard]] std::size_t violated_count(const CnfFormula& cnf,
                                         const std::vector<bool>& values);

}  // namespace fluxlogic
