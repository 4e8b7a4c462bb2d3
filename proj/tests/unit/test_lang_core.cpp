#include "doctest.h"

#include "tcd/checker.hpp"
#include "tcd/parser.hpp"

using namespace tcd;

namespace {

Type ty(std::string_view s) { return parse_type(s); }

Type type_of(std::string_view expr, const TypeEnv& env = {}) {
  return typecheck_expr(env, *parse_expression(expr, default_tables()));
}

TypeErrorReason reason_of(std::string_view expr, const TypeEnv& env = {}) {
  try {
    type_of(expr, env);
  } catch (const TypeError& e) {
    return e.reason();
  }
  FAIL("expected a type error for " << expr);
  return TypeErrorReason::MissingReturn;
}

}  // namespace

TEST_CASE("types: depth, root, equality") {
  CHECK(depth(Type::number()) == 0);
  CHECK(depth(ty("(a: number) => string")) == 1);
  CHECK(depth(ty("() => (x: string) => boolean")) == 2);
  CHECK(root(ty("(a: number) => (b: string) => boolean")) == Type::boolean());
  CHECK(ty("(a: number) => string") == ty("(b: number) => string"));
  CHECK_FALSE(ty("(a: number) => string").identical(ty("(b: number) => string")));
  CHECK(ty("(a: number) => string").str() == "(a: number) => string");
}

TEST_CASE("type env rejects duplicates and keeps order") {
  TypeEnv env{{"x", Type::number()}};
  auto env2 = env.extended("y", Type::string());
  CHECK(env2.size() == 2);
  CHECK(env.size() == 1);
  CHECK(env2.find("y") == Type::string());
  CHECK_THROWS_AS(env2.extended("x", Type::boolean()), std::invalid_argument);
}

TEST_CASE("expression typing") {
  TypeEnv env{{"x", Type::number()}, {"s", Type::string()}};
  CHECK(type_of("1 + 2", env) == Type::number());
  CHECK(type_of("x < 3", env) == Type::boolean());
  CHECK(type_of("(1).toString()", env) == Type::string());
  CHECK(type_of("s.charAt(x)", env) == Type::string());
  CHECK(type_of("x.valueOf()", env) == Type::number());
  CHECK(type_of("(a: number) => a + 1", env) == ty("(q: number) => number"));
  CHECK(type_of("x = 4", env) == Type::number());
  CHECK(type_of("1 + 2 < 4", env) == Type::boolean());
  CHECK(reason_of("y", env) == TypeErrorReason::UnboundIdentifier);
  CHECK(reason_of("x + s", env) == TypeErrorReason::NoOperatorSignature);
  CHECK(reason_of("x()", env) == TypeErrorReason::NotAFunction);
  CHECK(reason_of("s.charAt()", env) == TypeErrorReason::ArityMismatch);
  CHECK(reason_of("s.charAt(s)", env) == TypeErrorReason::ArgumentTypeMismatch);
  CHECK(reason_of("x.length", env) == TypeErrorReason::UnknownMember);
  CHECK(reason_of("(x) = 1", env) == TypeErrorReason::InvalidAssignmentTarget);
  CHECK(reason_of("(x: number) => x", env) == TypeErrorReason::DuplicateDeclaration);
}

TEST_CASE("statements and returns") {
  CHECK_NOTHROW(check_program("let x: number; x = 1;"));
  CHECK_NOTHROW(check_program("function f(a: number): number { if (a < 0) return 0; else { return a; } }"));
  auto reason = [](std::string_view text) {
    try {
      check_program(text);
    } catch (const TypeError& e) {
      return std::string(reason_name(e.reason()));
    }
    return std::string("ok");
  };
  CHECK(reason("let x: number; let x: string;") == "duplicate-declaration");
  CHECK(reason("return 1;") == "return-outside-function");
  CHECK(reason("function f(): number { return \"a\"; }") == "return-type-mismatch");
  CHECK(reason("function f(): number { if (1) return 1; else return 2; }") == "condition-not-boolean");
  CHECK(reason("function f(): number { if (true) return 1; else {} }") == "missing-return");
  CHECK(reason("function f(): number { return f(); }") == "unbound-identifier");
  CHECK(reason("let x: number; function g(x: number): number { return 1; }") == "duplicate-declaration");

  auto body = parse_program("let y: number; { return y; }", default_tables());
  CHECK(check_returns(body, Type::number()));
  CHECK_FALSE(check_returns(body, Type::string()));
  CHECK_FALSE(check_returns(parse_program("let y: number;", default_tables()), Type::number()));
}

TEST_CASE("parser round trip") {
  const char* programs[] = {
      "let f: (a: number, b: string) => boolean;",
      "function g(a: number): string {\n  return (a + 1).toString();\n}",
      "if (true) {} else { let q: string; }",
      "let h: () => number; h = () => 1;",
  };
  for (const char* p : programs) {
    auto ast = parse_program(p, default_tables());
    auto again = parse_program(print(ast), default_tables());
    CHECK(equal(ast, again));
  }
  CHECK_THROWS_AS(parse_program("let let: number;", default_tables()), ParseError);
  CHECK_THROWS_AS(parse_program("let x: number", default_tables()), ParseError);
}

TEST_CASE("tables config") {
  auto cfg = parse_config_string(
      "# comment\n"
      "global parseInt : (s: string) => number\n"
      "member string length -> number\n"
      "op + number number -> number\n");
  auto t = tables_from_config(cfg);
  CHECK(cfg.globals.find("parseInt") == ty("(x: string) => number"));
  CHECK(t.lookup.lookup(Type::string(), "length") == Type::number());
  CHECK_FALSE(t.lookup.lookup(Type::number(), "toString").has_value());
  CHECK(t.ops.size() == 1);
  CHECK_THROWS_AS(parse_config_string("op + number\n"), ConfigError);
  try {
    parse_config_string("\n\nbogus line\n");
  } catch (const ConfigError& e) {
    CHECK(e.line() == 3);
  }
}
