#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "refute/ast.hpp"

namespace refute {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column,
             std::size_t premise_index = 0);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  // 1-based premise index, 0 for a standalone formula or the query.
  std::size_t premise_index() const { return premise_index_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::size_t premise_index_;
};

// Parses one formula of the symbolic grammar. Anything from ":::" to the end
// of a line is a gloss and ignored. Free variables are universally closed.
Formula parse_formula(std::string_view text);

// Unicode connectives by default; ascii selects &, |, ~, ->, <->, xor, forall,
// exists.
std::string render(const Formula& f, bool ascii = false);

struct PremiseLine {
  std::string text;
  std::optional<std::string> gloss;
};

struct ProblemSource {
  std::string id;
  std::vector<PremiseLine> premises;
  std::string query;
};

struct ParsedProblem {
  std::string id;
  std::vector<Formula> premises;  // premises[i] is premise i + 1
  Formula query;
};

ParsedProblem parse_problem(const ProblemSource& src);

// Splits "formula ::: gloss". The gloss, if any, is trimmed.
PremiseLine split_gloss(std::string_view line);

// Reads the line-oriented problem format: one premise per line, the query on
// a line starting with "?-", '%' comment lines and blank lines skipped.
ProblemSource read_problem_text(std::string_view text, std::string id = "problem");

}  // namespace refute
