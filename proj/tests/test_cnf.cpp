#include "doctest.h"

#include <string>

#include "fluxlogic/cnf.hpp"
#include "fluxlogic/errors.hpp"

using namespace fluxlogic;

namespace {

ParseError capture(const std::string& text) {
    try {
        (void)parse_dimacs(text);
    } catch (const ParseError& e) {
        return e;
    }
    FAIL("expected ParseError");
    return ParseError(0, "unreachable");
}

}  // namespace

TEST_CASE("well-formed DIMACS text") {
    const CnfFormula cnf = parse_dimacs(
        "c a satisfiable toy\n"
        "p cnf 4 3\n"
        "1 -2 3 0\n"
        "c interior comment\n"
        "-1 4\n"
        "2 0\n"
        "3 -3 4 0\n");
    CHECK(cnf.num_vars == 4);
    REQUIRE(cnf.clauses.size() == 3);
    CHECK(cnf.clauses[0] == std::array<int, 3>{1, -2, 3});
    CHECK(cnf.clauses[1] == std::array<int, 3>{-1, 4, 2});  // spans two lines
    CHECK(cnf.clauses[2] == std::array<int, 3>{3, -3, 4});
}

TEST_CASE("short clauses are padded by repeating the last literal") {
    const CnfFormula cnf = parse_dimacs("p cnf 2 2\n1 0\n-1 2 0\n");
    CHECK(cnf.clauses[0] == std::array<int, 3>{1, 1, 1});
    CHECK(cnf.clauses[1] == std::array<int, 3>{-1, 2, 2});
}

TEST_CASE("multiple clauses may share a line") {
    const CnfFormula cnf = parse_dimacs("p cnf 2 2\n1 2 0 -1 -2 0\n");
    REQUIRE(cnf.clauses.size() == 2);
    CHECK(cnf.clauses[1] == std::array<int, 3>{-1, -2, -2});
}

TEST_CASE("parse errors carry the offending line number") {
    SUBCASE("clause before header") {
        const ParseError e = capture("1 2 0\np cnf 2 1\n");
        CHECK(e.line() == 1);
        CHECK(std::string(e.what()).find("line 1:") == 0);
    }
    SUBCASE("malformed header") {
        CHECK(capture("p dnf 2 1\n").line() == 1);
        CHECK(capture("p cnf\n").line() == 1);
        CHECK(capture("p cnf -2 1\n").line() == 1);
        CHECK(capture("\n\np cnf 2 1 extra\n").line() == 3);
    }
    SUBCASE("duplicate header") {
        CHECK(capture("p cnf 2 1\np cnf 2 1\n1 0\n").line() == 2);
    }
    SUBCASE("missing header") {
        CHECK(capture("c only comments\n").line() == 1);
        CHECK(capture("").line() == 1);
    }
    SUBCASE("invalid literal token") {
        const ParseError e = capture("p cnf 2 1\n1 two 0\n");
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("two") != std::string::npos);
    }
    SUBCASE("literal outside the declared range") {
        const ParseError e = capture("p cnf 2 1\n1 -3 0\n");
        CHECK(e.line() == 2);
        CHECK(std::string(e.what()).find("-3") != std::string::npos);
    }
    SUBCASE("more than three literals") {
        CHECK(capture("p cnf 4 1\n1 2 3 4 0\n").line() == 2);
    }
    SUBCASE("empty clause") {
        CHECK(capture("p cnf 2 1\n0\n").line() == 2);
    }
    SUBCASE("unterminated clause points at its last literal") {
        const ParseError e = capture("p cnf 2 1\n1\n2\n");
        CHECK(e.line() == 3);
        CHECK(std::string(e.what()).find("unterminated") != std::string::npos);
    }
    SUBCASE("clause count mismatch points at the header") {
        const ParseError e = capture("c x\np cnf 2 3\n1 0\n");
        CHECK(e.line() == 2);
    }
}

TEST_CASE("clause and formula evaluation") {
    const CnfFormula cnf = parse_dimacs("p cnf 3 2\n1 -2 3 0\n-1 -1 -1 0\n");
    CHECK(clause_satisfied(cnf.clauses[0], {false, false, false}));
    CHECK(!clause_satisfied(cnf.clauses[0], {false, true, false}));
    CHECK(satisfies(cnf, {false, false, false}));
    CHECK(!satisfies(cnf, {true, false, true}));
    CHECK(violated_count(cnf, {true, true, false}) == 1);   // only (-1 -1 -1)
    CHECK(violated_count(cnf, {false, true, false}) == 1);  // only (1 -2 3)
    CHECK(violated_count(cnf, {false, false, false}) == 0);
}
