#include <fstream>
#include <sstream>

#include "doctest.h"
#include "sqrteuler/cli/interpreter.hpp"

using namespace se::cli;

namespace {

const char* const kExample =
    "space Y = P(4)\n"
    "bundle V = O(1)+O(2) on Y\n"
    "orth F = hyperbolic(V)\n"
    "print sqrt_euler(F)\n";

std::string golden(const std::string& name) {
  std::ifstream in(std::string(SQRTEULER_GOLDEN_DIR) + "/" + name);
  REQUIRE_MESSAGE(in.good(), "missing golden file " << name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Report run_ok(const std::string& text) {
  const Report r = run_text(text);
  if (r.error) FAIL_CHECK("line " << r.error->pos.line << ": " << r.error->message);
  return r;
}

}  // namespace

TEST_CASE("parsing the four-statement example") {
  const Script s = parse(kExample);
  REQUIRE(s.statements.size() == 4);
  CHECK(s.statements[0].kind == Statement::Kind::Space);
  CHECK(s.statements[1].kind == Statement::Kind::Bundle);
  CHECK(s.statements[1].on->text == "Y");
  CHECK(s.statements[2].kind == Statement::Kind::Orth);
  CHECK(s.statements[3].kind == Statement::Kind::Print);
  CHECK(s.statements[3].expr->kind == Expr::Kind::Call);
  CHECK(s.statements[3].expr->text == "sqrt_euler");
  CHECK(s.statements[3].pos.line == 4);
}

TEST_CASE("parser details") {
  CHECK(parse("").statements.empty());
  CHECK(parse("# only a comment\n\n   \n").statements.empty());

  const auto clauses = parse("section s = section(V; roots 1 2)").statements[0].expr;
  REQUIRE(clauses->clause("roots"));
  CHECK(clauses->clause("roots")->values.size() == 2);

  const auto pairing = parse("check vanishing(F; root 0 pairing 2 -3)").statements[0].expr;
  REQUIRE(pairing->clause("pairing"));
  CHECK(pairing->clause("pairing")->values.size() == 2);
  CHECK(pairing->clause("root")->values.size() == 1);

  const auto blow = parse("space B = blowup(Y along X normal N)").statements[0].expr;
  CHECK(blow->args.size() == 1);
  CHECK(blow->clause("along"));
  CHECK(blow->clause("normal"));

  const auto orth = parse("orth F = hyperbolic(V) orientation -1").statements[0];
  CHECK(orth.orientation == -1);

  // 3H^2 is 3 * (H^2)
  const auto jux = parse("print 3H^2").statements[0].expr;
  CHECK(jux->text == "*");
  CHECK(jux->args[1]->kind == Expr::Kind::Power);

  const auto check = parse("check a == b").statements[0];
  CHECK(check.rhs);
}

TEST_CASE("syntax errors carry line and column") {
  auto error_at = [](const std::string& text) {
    try {
      parse(text);
    } catch (const ScriptError& e) {
      return e.position();
    }
    return Position{};
  };
  CHECK(error_at("space Y = P(4\n").line == 1);
  const Position p = error_at("space Y = P(4)\nprint (H + 1\n");
  CHECK(p.line == 2);
  CHECK(p.column == 13);
  CHECK(error_at("frobnicate x").column == 1);
  CHECK(error_at("print H $").column == 9);
  CHECK(error_at("orth F = hyperbolic(V) orientation 2").line == 1);
  CHECK(error_at("let = 3").column == 5);
}

TEST_CASE("undeclared space is named in the diagnostic") {
  const Report r = run_text("bundle V = O(1) on Y");
  REQUIRE(r.error);
  CHECK(r.exit_code() == 2);
  CHECK(r.error->pos.line == 1);
  CHECK(r.error->pos.column == 20);
  CHECK(r.error->message.find("'Y'") != std::string::npos);
}

TEST_CASE("exit codes") {
  CHECK(run_text("").exit_code() == 0);
  const std::string base = std::string(kExample);
  const Report pass = run_text(base + "check sqrt_euler(F)^2 == euler(F)\n");
  CHECK(pass.exit_code() == 0);
  CHECK(pass.passed == 1);

  const Report fail = run_text(base + "check sqrt_euler(F) == 3H^2\n");
  CHECK(fail.exit_code() == 1);
  REQUIRE(fail.statements.back().passed);
  CHECK_FALSE(*fail.statements.back().passed);
  CHECK(fail.statements.back().lhs == "2*H^2");
  CHECK(fail.statements.back().rhs == "3*H^2");

  const Report integ = run_ok(base + "integrate sqrt_euler(F)*H^2 on P(4)\n");
  CHECK(*integ.statements.back().result == "2");
  CHECK(render_text(integ) == "2*H^2\n2\n");

  // an error after a failure still exits 2
  CHECK(run_text(base + "check 1 == 2\nprint nothing\n").exit_code() == 2);
}

TEST_CASE("evaluation diagnostics") {
  auto message = [](const std::string& text) {
    const Report r = run_text(text);
    REQUIRE(r.error);
    return std::to_string(r.error->pos.line) + ": " + r.error->message;
  };
  CHECK(message("space Y = P(2)\nspace Y = P(3)") == "2: 'Y' is already defined");
  CHECK(message("space Y = P(2)\north F = O(1)") == "2: orth expects an orthogonal bundle, got a bundle");
  CHECK(message("space Y = P(2)\nprint sqrt_euler(O(1))").find("expects an orthogonal bundle") != std::string::npos);
  CHECK(message("space Y = P(2)\nprint chern()").find("chern takes 1 to 2 arguments") != std::string::npos);
  CHECK(message("print frob(1)").find("unknown function 'frob'") != std::string::npos);
  CHECK(message("space Y = P(2)\nprint H^(1/2)").find("exponent must be an integer") != std::string::npos);
  CHECK(message("print O(1)").find("no current space") != std::string::npos);
  CHECK(message("space Y = P(2)\nspace Z = P(3)\nlet a = H\nuse Y\nprint a + H").find("different spaces") !=
        std::string::npos);
  CHECK(message("space Y = P(3)\nsection s = section(O(1)+O(2); roots 1)").find("not a linear subspace") !=
        std::string::npos);
  CHECK(message("space Y = P(3)\nbundle V = O(1)+O(1)\nsection s = section(V; roots 0)\nsection t = section(V; roots 0)\n"
                "orth F = hyperbolic(V)\nprint sqrt_euler(F, s, t)")
            .find("6: sqrt_euler") == 0);
  CHECK(message("check 1/0 == 1").find("division by zero") != std::string::npos);
}

TEST_CASE("class algebra and spaces") {
  const Report r = run_ok(
      "space Y = P(3)\n"
      "let x = (H + 1)^2 - 2H\n"
      "check x == 1 + H^2\n"
      "check (1 + H)^-1 == 1 - H + H^2 - H^3\n"
      "check 1/(1 - H) == 1 + H + H^2 + H^3\n"
      "check H^4 == 0\n"
      "check integral(H^3) == 1\n"
      "check euler(O(1)+O(2)) == 2H^2\n"
      "check chern(dual(O(1)+O(2)), 1) == -3H\n"
      "check chern(O(1) - O(1)) == 1\n"
      "space L = linear(Y, 1)\n"
      "let line = push(1)\n"
      "check pull(H, L) == H\n"
      "check integral(H) == 1\n"
      "use Y\n"
      "check line == H^2\n"
      "space Q = pbundle(O+O(1))\n"
      "check push(h) == 1\n");
  CHECK(r.exit_code() == 0);
  CHECK(r.passed == 12);
}

TEST_CASE("output is deterministic and matches the golden files") {
  const std::string text =
      std::string(kExample) +
      "check sqrt_euler(F)^2 == euler(F)\n"
      "check sqrt_euler(F) == 3H^2\n"
      "integrate sqrt_euler(F)*H^2 on P(4)\n";
  const Report a = run_text(text);
  const Report b = run_text(text);
  CHECK(render_json(a) == render_json(b));
  CHECK(render_json(a) == golden("cli_example.json"));
  CHECK(render_text(a) == golden("cli_example.txt"));
}

TEST_CASE("cap option reaches series") {
  const Report r = run_ok("law M = multiplicative\nprint sqrt_h(1, M)\n");
  const Report small = run_ok("law M = multiplicative\nprint sqrt_h(1, M)\n");
  CHECK(*r.statements.back().result == *small.statements.back().result);
  const Report capped = run_text("law M = multiplicative\nprint sqrt_h(1, M)\n", Options{3});
  CHECK(*capped.statements.back().result == "1 + 1/2*s1*beta + 3/8*s1^2*beta^2 + 5/16*s1^3*beta^3");
  CHECK(run_text("print 1", Options{0}).exit_code() == 2);
}
