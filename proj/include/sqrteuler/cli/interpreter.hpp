#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqrteuler/cli/script.hpp"
#include "sqrteuler/fgl/fgl.hpp"

namespace se::cli {

struct Options {
  int cap = fgl::kDefaultCap;
};

struct StatementResult {
  int line = 0;
  std::string kind;
  std::string source;
  std::optional<std::string> result;
  // Set for checks.
  std::optional<bool> passed;
  std::string lhs;
  std::string rhs;
};

struct Diagnostic {
  Position pos;
  std::string message;
};

struct Report {
  std::vector<StatementResult> statements;
  std::optional<Diagnostic> error;
  int passed = 0;
  int failed = 0;

  // 0 when every check passed, 1 when one failed, 2 on a parse or
  // evaluation error.
  int exit_code() const { return error ? 2 : failed > 0 ? 1 : 0; }
};

// Evaluates statements in order and stops at the first error.
Report run(const Script& script, const Options& options = {});
// Parses and runs; syntax errors become the report's error.
Report run_text(std::string_view text, const Options& options = {});

std::string render_text(const Report& report);
std::string render_json(const Report& report);

}  // namespace se::cli
