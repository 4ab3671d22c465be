#include "sqrteuler/cli/script.hpp"

#include <cctype>
#include <map>
#include <set>

namespace se::cli {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Words that end an expression instead of multiplying into it.
const std::set<std::string, std::less<>> kStopWords{"on", "along", "normal", "orientation"};

const std::map<std::string, Statement::Kind, std::less<>> kStatementWords{
    {"space", Statement::Kind::Space},   {"bundle", Statement::Kind::Bundle}, {"orth", Statement::Kind::Orth},
    {"section", Statement::Kind::Section}, {"law", Statement::Kind::Law},     {"let", Statement::Kind::Let},
    {"use", Statement::Kind::Use},       {"print", Statement::Kind::Print},   {"check", Statement::Kind::Check},
    {"integrate", Statement::Kind::Integrate}};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Statement statement(std::string source) {
    Statement st;
    st.source = std::move(source);
    const Token head = next();
    st.pos = head.pos;
    if (head.kind != TokenKind::Identifier) fail(head, "expected a statement keyword");
    const auto it = kStatementWords.find(head.text);
    if (it == kStatementWords.end()) fail(head, "unknown statement '" + head.text + "'");
    st.kind = it->second;
    switch (st.kind) {
      case Statement::Kind::Use:
        st.name = name();
        break;
      case Statement::Kind::Print:
        st.expr = expression();
        break;
      case Statement::Kind::Check:
        st.expr = expression();
        if (peek_symbol("==")) {
          next();
          st.rhs = expression();
        }
        break;
      case Statement::Kind::Integrate:
        st.expr = expression();
        expect_word("on");
        st.on = expression();
        break;
      default:
        st.name = name();
        expect_symbol("=");
        st.expr = expression();
        if (st.kind == Statement::Kind::Bundle && peek_word("on")) {
          next();
          st.on = expression();
        }
        if (st.kind == Statement::Kind::Orth && peek_word("orientation")) {
          next();
          st.orientation = signed_integer();
          if (*st.orientation != 1 && *st.orientation != -1) fail(tokens_[pos_ - 1], "orientation must be 1 or -1");
        }
        break;
    }
    if (peek().kind != TokenKind::End) fail(peek(), "unexpected '" + peek().text + "'");
    return st;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  Token next() {
    Token t = tokens_[pos_];
    if (t.kind != TokenKind::End) ++pos_;
    return t;
  }
  bool peek_symbol(std::string_view s) const { return peek().kind == TokenKind::Symbol && peek().text == s; }
  bool peek_word(std::string_view s) const { return peek().kind == TokenKind::Identifier && peek().text == s; }

  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    throw ScriptError(t.pos, t.kind == TokenKind::End ? message + " at end of line" : message);
  }
  void expect_symbol(std::string_view s) {
    if (!peek_symbol(s)) fail(peek(), "expected '" + std::string(s) + "'");
    next();
  }
  void expect_word(std::string_view s) {
    if (!peek_word(s)) fail(peek(), "expected '" + std::string(s) + "'");
    next();
  }
  std::string name() {
    if (peek().kind != TokenKind::Identifier || kStopWords.count(peek().text)) fail(peek(), "expected a name");
    return next().text;
  }
  int signed_integer() {
    bool negative = false;
    if (peek_symbol("-")) {
      next();
      negative = true;
    }
    if (peek().kind != TokenKind::Number) fail(peek(), "expected an integer");
    const Token t = next();
    if (t.text.size() > 9) fail(t, "integer too large");
    const int v = std::stoi(t.text);
    return negative ? -v : v;
  }

  static ExprPtr make(Expr::Kind kind, Position pos, std::string text, std::vector<ExprPtr> args = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->pos = pos;
    e->text = std::move(text);
    e->args = std::move(args);
    return e;
  }

  // One clause value: products and quotients, but sums need parentheses so
  // that "pairing 2 -3" reads as two values.
  ExprPtr clause_value() { return term(false); }

  ExprPtr expression(bool juxtapose = true) {
    ExprPtr lhs = term(juxtapose);
    while (peek_symbol("+") || peek_symbol("-")) {
      const Token op = next();
      lhs = make(Expr::Kind::Binary, op.pos, op.text, {lhs, term(juxtapose)});
    }
    return lhs;
  }

  bool starts_factor() const {
    const Token& t = peek();
    if (t.kind == TokenKind::Identifier) return !kStopWords.count(t.text);
    return t.kind == TokenKind::Number || (t.kind == TokenKind::Symbol && t.text == "(");
  }

  ExprPtr term(bool juxtapose) {
    ExprPtr lhs = unary(juxtapose);
    for (;;) {
      if (peek_symbol("*") || peek_symbol("/")) {
        const Token op = next();
        lhs = make(Expr::Kind::Binary, op.pos, op.text, {lhs, unary(juxtapose)});
      } else if (juxtapose && starts_factor()) {
        const Position pos = peek().pos;
        lhs = make(Expr::Kind::Binary, pos, "*", {lhs, power()});
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary(bool juxtapose) {
    if (peek_symbol("-")) {
      const Token op = next();
      return make(Expr::Kind::Negate, op.pos, "-", {unary(juxtapose)});
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = primary();
    if (!peek_symbol("^")) return base;
    const Token op = next();
    bool negative = false;
    if (peek_symbol("-")) {
      next();
      negative = true;
    }
    ExprPtr exponent;
    if (peek_symbol("(")) {
      exponent = primary();
    } else {
      if (peek().kind != TokenKind::Number) fail(peek(), "expected an integer exponent");
      const Token t = next();
      exponent = make(Expr::Kind::Number, t.pos, t.text);
    }
    if (negative) exponent = make(Expr::Kind::Negate, op.pos, "-", {exponent});
    return make(Expr::Kind::Power, op.pos, "^", {base, exponent});
  }

  ExprPtr primary() {
    const Token t = next();
    if (t.kind == TokenKind::Number) return make(Expr::Kind::Number, t.pos, t.text);
    if (t.kind == TokenKind::Symbol && t.text == "(") {
      ExprPtr inner = expression();
      expect_symbol(")");
      return inner;
    }
    if (t.kind != TokenKind::Identifier || kStopWords.count(t.text)) {
      fail(t, t.kind == TokenKind::End ? "expected an expression" : "unexpected '" + t.text + "'");
    }
    if (!peek_symbol("(")) return make(Expr::Kind::Name, t.pos, t.text);
    next();
    auto call = std::make_shared<Expr>();
    call->kind = Expr::Kind::Call;
    call->pos = t.pos;
    call->text = t.text;
    if (!peek_symbol(")") && !peek_symbol(";")) {
      call->args.push_back(expression());
      while (peek_symbol(",")) {
        next();
        call->args.push_back(expression());
      }
    }
    // Keyword clauses: "along X", "normal N", or any word after ';'.
    bool after_semicolon = false;
    for (;;) {
      if (peek_symbol(";")) {
        next();
        after_semicolon = true;
        continue;
      }
      if (peek_symbol(")")) break;
      if (peek().kind != TokenKind::Identifier || (!after_semicolon && !kStopWords.count(peek().text))) {
        fail(peek(), "expected ',' or ')'");
      }
      const Token kw = next();
      Clause c{kw.text, kw.pos, {}};
      while (!peek_symbol(")") && !peek_symbol(";") && peek().kind != TokenKind::End &&
             !(peek().kind == TokenKind::Identifier &&
               (kStopWords.count(peek().text) || (!c.values.empty() && is_clause_word())))) {
        c.values.push_back(clause_value());
        if (peek_symbol(",")) next();
      }
      call->clauses.push_back(std::move(c));
    }
    expect_symbol(")");
    return call;
  }

  // After a clause's first value, an identifier directly followed by a
  // value starts another clause.
  bool is_clause_word() const {
    const Token& after = tokens_[pos_ + 1 < tokens_.size() ? pos_ + 1 : pos_];
    return after.kind == TokenKind::Number || (after.kind == TokenKind::Symbol && after.text == "-") ||
           after.kind == TokenKind::Identifier;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

const Clause* Expr::clause(std::string_view keyword) const {
  for (const auto& c : clauses) {
    if (c.keyword == keyword) return &c;
  }
  return nullptr;
}

const char* kind_name(Statement::Kind k) {
  switch (k) {
    case Statement::Kind::Space: return "space";
    case Statement::Kind::Bundle: return "bundle";
    case Statement::Kind::Orth: return "orth";
    case Statement::Kind::Section: return "section";
    case Statement::Kind::Law: return "law";
    case Statement::Kind::Let: return "let";
    case Statement::Kind::Use: return "use";
    case Statement::Kind::Print: return "print";
    case Statement::Kind::Check: return "check";
    case Statement::Kind::Integrate: return "integrate";
  }
  return "unknown";
}

std::vector<Token> tokenize_line(std::string_view line, int line_number) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto pos = [&](std::size_t at) { return Position{line_number, static_cast<int>(at) + 1}; };
  while (i < line.size()) {
    const char c = line[i];
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    if (ident_start(c)) {
      while (i < line.size() && ident_char(line[i])) ++i;
      out.push_back({TokenKind::Identifier, std::string(line.substr(start, i - start)), pos(start)});
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < line.size() && std::isdigit(static_cast<unsigned char>(line[i]))) ++i;
      out.push_back({TokenKind::Number, std::string(line.substr(start, i - start)), pos(start)});
    } else if (c == '=' && i + 1 < line.size() && line[i + 1] == '=') {
      out.push_back({TokenKind::Symbol, "==", pos(start)});
      i += 2;
    } else if (std::string_view("+-*/^(),;=").find(c) != std::string_view::npos) {
      out.push_back({TokenKind::Symbol, std::string(1, c), pos(start)});
      ++i;
    } else {
      throw ScriptError(pos(start), "unexpected character '" + std::string(1, c) + "'");
    }
  }
  out.push_back({TokenKind::End, "", pos(line.size())});
  return out;
}

Script parse(std::string_view text) {
  Script script;
  int line_number = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    ++line_number;
    auto tokens = tokenize_line(line, line_number);
    if (tokens.front().kind != TokenKind::End) {
      std::string source(line);
      const auto hash = source.find('#');
      if (hash != std::string::npos) source.erase(hash);
      while (!source.empty() && std::isspace(static_cast<unsigned char>(source.back()))) source.pop_back();
      const auto first = source.find_first_not_of(" \t");
      script.statements.push_back(Parser(std::move(tokens)).statement(source.substr(first)));
    }
    if (end == text.size()) break;
    start = end + 1;
  }
  return script;
}

}  // namespace se::cli
