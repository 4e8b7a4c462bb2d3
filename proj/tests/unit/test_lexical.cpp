#include "doctest.h"

#include <regex>

#include "regex_gen.hpp"
#include "tcd/lexical.hpp"
#include "tcd/parser.hpp"
#include "tcd/utf8.hpp"

using namespace tcd;

namespace {

StateSet run(const Automaton& a, std::string_view s) { return traverse(a.initial, from_utf8(s)); }

std::optional<Type> accepted_type(const Automaton& a, std::string_view s) {
  for (const auto& q : run(a, s)) {
    if (q->accepting()) return q->attrs().typ;
  }
  return std::nullopt;
}

/// Prefix oracle: some extension of length <= 3 over `alphabet` matches.
bool regex_prefix(const std::regex& re, const std::string& s, std::string_view alphabet) {
  for (const auto& t : testing::all_strings(alphabet, 3)) {
    if (std::regex_match(s + t, re)) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("lexical: literals") {
  auto lit = literal_automaton();
  CHECK(accepted_type(lit, "42") == std::optional<Type>(Type::number()));
  CHECK(accepted_type(lit, "\"hi\"") == std::optional<Type>(Type::string()));
  CHECK(accepted_type(lit, "false") == std::optional<Type>(Type::boolean()));
  CHECK(!run(lit, "tru").empty());
  CHECK(run(lit, "truu").empty());
  CHECK(pmatch("tr", Type::boolean()));
  CHECK(pmatch("12.", Type::number()));
  CHECK(pmatch("\"abc", Type::string()));
  CHECK(!pmatch("12.", Type::string()));
  CHECK(!pmatch("1", Type::fun({}, Type::number())));
}

TEST_CASE("lexical: literal liveness matches the class regex") {
  struct Case {
    Type::Prim kind;
    const char* re;
    std::string_view alphabet;
  };
  const Case cases[] = {
      {Type::Prim::Number, R"([0-9]+(\.[0-9]+)?([eE][+-]?[0-9]+)?)", "0.e+"},
      {Type::Prim::String, R"("([^"\\\n]|\\[\\"nt])*")", "\"\\an"},
      {Type::Prim::Boolean, "true|false", "truefals"},
  };
  for (const auto& c : cases) {
    std::regex re(c.re);
    auto a = literal_automaton(c.kind);
    std::size_t len = c.kind == Type::Prim::Boolean ? 5 : 6;
    for (const auto& s : testing::all_strings(c.alphabet, len)) {
      INFO(s);
      auto st = run(a, s);
      CHECK(any_accepting(st) == std::regex_match(s, re));
      bool live = c.kind == Type::Prim::Boolean
                      ? (std::string("true").starts_with(s) || std::string("false").starts_with(s))
                      : regex_prefix(re, s, c.alphabet);
      CHECK(!st.empty() == live);
    }
  }
}

TEST_CASE("lexical: identifiers") {
  TypeEnv env{{"x", Type::number()}, {"xy", Type::string()}};
  auto ids = identifier_automaton(env);
  CHECK(run(ids, "x").size() == 2);
  CHECK(run(identifier_automaton({}), "a").empty());
  auto foo = identifier_automaton({{"foo", Type::boolean()}});
  CHECK(!run(foo, "fo").empty());
  CHECK(!any_accepting(run(foo, "fo")));
  CHECK(any_accepting(run(foo, "foo")));
  // Accepted set is exactly the domain of env.
  for (const auto& s : testing::all_strings("xyz", 3)) {
    CHECK(any_accepting(run(ids, s)) == env.contains(s));
  }
}

TEST_CASE("lexical: fresh identifiers") {
  auto fresh = fresh_identifier_automaton({{"x", Type::number()}});
  CHECK(!any_accepting(run(fresh, "x")));
  CHECK(any_accepting(run(fresh, "x1")));
  auto any = fresh_identifier_automaton({});
  CHECK(any_accepting(run(any, "foo")));
  for (auto w : kReservedWords) CHECK(!any_accepting(run(any, w)));
  CHECK(run(any, "1").empty());
  auto c = to_utf8(force_complete(run(fresh, "x")));
  CHECK(any_accepting(run(fresh, "x" + c)));
}

TEST_CASE("lexical: type annotations") {
  auto ty = type_annotation_automaton();
  CHECK(accepted_type(ty, "number") == std::optional<Type>(Type::number()));
  CHECK(accepted_type(ty, "(a: number) => string") == std::optional<Type>(parse_type("(a: number) => string")));
  CHECK(accepted_type(ty, "() => (b: boolean) => number") ==
        std::optional<Type>(parse_type("() => (b: boolean) => number")));
  CHECK(!run(ty, "(a: number) =").empty());
  CHECK(run(ty, "(a: number) =!").empty());
  CHECK(run(ty, "(a: number, a: string) => number").empty());
  for (auto text : {"boolean", "(x: string, y: number) => boolean", "() => () => string"}) {
    Type t = parse_type(text);
    CHECK(accepted_type(ty, t.str()) == std::optional<Type>(t));
    CHECK(any_accepting(run(exact_type_automaton(t), t.str())));
  }
  CHECK(run(exact_type_automaton(parse_type("(x: number) => string")), "(y: string").empty());
  CHECK(run(exact_type_automaton(parse_type("(x: number) => string")), "(y: number,").empty());
}
