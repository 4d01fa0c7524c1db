#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fluxlogic {

/// Text-input error carrying the 1-based line number of the offending
/// statement; what() is already formatted as "line N: message".
class ParseError : public std::runtime_error {
  public:
    ParseError(std::size_t line, const std::string& message)
        : std::runtime_error("line " + std::to_string(line) + ": " + message),
          line_(line) {}

    [[nodiscard]] std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

/// Exact enumeration refused: the free-cell count exceeds the configured
/// limit. The message points at the annealing fallback.
class SolveLimitError : public std::runtime_error {
  public:
    SolveLimitError(std::size_t free_cells, std::size_t limit)
        : std::runtime_error("exact solve over limit: " + std::to_string(free_cells) +
                             " free cells exceed max " + std::to_string(limit) +
                             "; raise the limit or use annealing"),
          free_cells_(free_cells),
          limit_(limit) {}

    [[nodiscard]] std::size_t free_cells() const { return free_cells_; }
    [[nodiscard]] std::size_t limit() const { return limit_; }

  private:
    std::size_t free_cells_;
    std::size_t limit_;
};

}  // namespace fluxlogic
