#include "doctest.h"

#include <random>

#include "regex_gen.hpp"
#include "tcd/automaton.hpp"
#include "tcd/utf8.hpp"

using namespace tcd;

namespace {

StateSet run(const Automaton& a, std::string_view s) { return traverse(a.initial, from_utf8(s)); }
bool accepts(const Automaton& a, std::string_view s) { return any_accepting(run(a, s)); }

}  // namespace

TEST_CASE("automata: terminals and empty") {
  auto let = terminal("let");
  auto s = run(let, "le");
  REQUIRE(s.size() == 1);
  CHECK(to_utf8(force_complete(s)) == "t");
  CHECK(run(let, "lex").empty());
  CHECK(accepts(terminal(";"), ";"));
  CHECK(!accepts(terminal(";"), ";;"));
  CHECK(accepts(ws_terminal("if"), "  if"));
  CHECK(accepts(ws_terminal("if"), "if"));
  CHECK(accepts(ws_terminal("if"), "\t\r\n if"));
  CHECK(empty().initial.empty());
  CHECK(run(empty(), "a").empty());
  CHECK_THROWS_AS(terminal(""), EmptyTerminal);
  CHECK_THROWS_AS(ws_terminal(""), EmptyTerminal);
  CHECK(force_complete(run(let, "let")).empty());
}

TEST_CASE("automata: union, concat, kleene") {
  auto ab = union_of(terminal("a"), terminal("b"));
  CHECK(accepts(ab, "a"));
  CHECK(accepts(ab, "b"));
  CHECK(!accepts(ab, "ab"));
  auto cat = concat(terminal("a"), terminal("b"));
  CHECK(accepts(cat, "ab"));
  CHECK(!accepts(cat, "a"));
  CHECK(!run(cat, "a").empty());
  auto star = kleene(terminal("ab"));
  for (auto s : {"", "ab", "abab"}) CHECK(accepts(star, s));
  CHECK(!accepts(star, "aba"));
  auto none = kleene(empty());
  CHECK(accepts(none, ""));
  CHECK(run(none, "a").empty());
  CHECK(accepts(union_of(terminal("x"), empty()), "x"));
}

TEST_CASE("automata: bind threads attributes") {
  auto a = bind(terminal("n"), [](const State&) {
    Attrs at;
    at.name = "done";
    return accept_with(std::move(at));
  });
  auto s = run(a, "n");
  REQUIRE(any_accepting(s));
  for (const auto& q : s) {
    if (q->accepting()) CHECK(q->attrs().name == "done");
  }
}

TEST_CASE("automata: guard and filter") {
  auto g = guard([](char32_t c) { return c == U' '; }, ws_terminal("x"));
  CHECK(run(g, "x").empty());
  CHECK(accepts(g, " x"));
  auto f = filter(union_of(terminal("ab"), terminal("ac")), [](const State& q) {
    return q.completion() != std::optional<std::u32string>(U"b");
  });
  CHECK(!accepts(f, "ab"));
  CHECK(accepts(f, "ac"));
}

TEST_CASE("automata: repeat stops once done holds") {
  Attrs seed;
  auto r = repeat(
      make_attrs(seed),
      [](const Attrs& a) {
        return bind(terminal("x"), [a](const State&) {
          Attrs n = a;
          n.name += "x";
          n.returned = n.name.size() >= 2;
          return accept_with(std::move(n));
        });
      },
      [](const Attrs& a) { return a.returned; });
  CHECK(accepts(r, ""));
  CHECK(accepts(r, "xxx"));
  CHECK(force_complete(r.initial).empty());
  auto closed = bind(r, [](const State& q) { return q.attrs().returned ? terminal("!") : empty(); });
  CHECK(to_utf8(force_complete(closed.initial)) == "xx!");
  CHECK(to_utf8(force_complete(run(closed, "x"))) == "x!");
  CHECK(run(closed, "x!").empty());
}

TEST_CASE("automata: random combinators match the language oracle") {
  std::mt19937_64 rng(2024);
  auto strings = testing::all_strings("abc", 4);
  for (int i = 0; i < 60; ++i) {
    auto rx = testing::random_rx(rng, 4);
    INFO(rx->show());
    auto a = rx->build();
    auto lang = rx->language(4);
    for (const auto& s : strings) {
      auto st = run(a, s);
      CHECK(any_accepting(st) == lang.contains(s));
      // The prefix property: every live state completes.
      if (!st.empty()) {
        auto c = force_complete(st);
        CHECK(any_accepting(traverse(st, c)));
      }
    }
  }
}

TEST_CASE("automata: traversal splits arbitrarily (P1, P2)") {
  std::mt19937_64 rng(99);
  auto strings = testing::all_strings("abc", 5);
  for (int i = 0; i < 30; ++i) {
    auto a = testing::random_rx(rng, 4)->build();
    for (int j = 0; j < 40; ++j) {
      const auto& s = strings[std::uniform_int_distribution<std::size_t>(0, strings.size() - 1)(rng)];
      auto cut = std::uniform_int_distribution<std::size_t>(0, s.size())(rng);
      auto whole = run(a, s);
      auto split = traverse(traverse(a.initial, from_utf8(s.substr(0, cut))), from_utf8(s.substr(cut)));
      CHECK(whole.size() == split.size());
      CHECK(any_accepting(whole) == any_accepting(split));
      if (!whole.empty()) CHECK(!run(a, s.substr(0, cut)).empty());
    }
  }
}
