#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sqrteuler/error.hpp"

namespace se::cli {

struct Position {
  int line = 0;
  int column = 0;
};

// A diagnostic tied to a script position. Syntax and evaluation errors both
// map to exit code 2.
class ScriptError : public Error {
 public:
  ScriptError(Position pos, const std::string& message)
      : Error("line " + std::to_string(pos.line) + ", column " + std::to_string(pos.column) + ": " + message),
        pos_(pos),
        message_(message) {}
  Position position() const { return pos_; }
  const std::string& message() const { return message_; }

 private:
  Position pos_;
  std::string message_;
};

enum class TokenKind { Identifier, Number, Symbol, End };

struct Token {
  TokenKind kind = TokenKind::End;
  std::string text;
  Position pos;
};

// Tokens of one line; '#' starts a comment.
std::vector<Token> tokenize_line(std::string_view line, int line_number);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Trailing keyword arguments of a call: "; roots 1 2", "along X".
struct Clause {
  std::string keyword;
  Position pos;
  std::vector<ExprPtr> values;
};

struct Expr {
  enum class Kind { Number, Name, Call, Negate, Binary, Power };
  Kind kind = Kind::Number;
  Position pos;
  std::string text;  // digits, identifier, function name or operator
  std::vector<ExprPtr> args;
  std::vector<Clause> clauses;

  const Clause* clause(std::string_view keyword) const;
};

struct Statement {
  enum class Kind { Space, Bundle, Orth, Section, Law, Let, Use, Print, Check, Integrate };
  Kind kind = Kind::Let;
  Position pos;
  std::string source;
  std::string name;
  ExprPtr expr;
  ExprPtr rhs;  // right side of check
  ExprPtr on;   // "on SPACE"
  std::optional<int> orientation;
};

const char* kind_name(Statement::Kind k);

struct Script {
  std::vector<Statement> statements;
};

// Throws ScriptError with the line and column of the first syntax error.
Script parse(std::string_view text);

}  // namespace se::cli
