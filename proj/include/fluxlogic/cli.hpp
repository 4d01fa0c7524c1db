#pragma once

#include <iosfwd>

namespace fluxlogic {

/// Full command-line front end; returns the process exit code.
/// 0: success (including decided SAT/UNSAT); 1: verification failure or an
/// undecided result; 2: bad input (parse errors, unknown files, over-limit
/// exact solves without an annealing fallback).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fluxlogic
