#include "doctest.h"

#include <random>
#include <sstream>

#include "reach_oracle.hpp"
#include "tcd/checker.hpp"
#include "tcd/expr.hpp"
#include "tcd/parser.hpp"
#include "tcd/search.hpp"

using namespace tcd;

namespace {
Type ty(std::string_view s) { return parse_type(s); }
}  // namespace

TEST_CASE("search: depth and root") {
  CHECK(depth(Type::number()) == 0);
  CHECK(root(Type::number()) == Type::number());
  CHECK(depth(ty("() => () => number")) == 2);
  CHECK(root(ty("(a: number) => string")) == Type::string());
}

TEST_CASE("search: pruning") {
  const Tables& t = default_tables();
  std::set<Type> roots{Type::number()};
  CHECK(prune_search(Type::number(), 0, ty("() => number"), roots));
  CHECK(!prune_search(Type::number(), 0, ty("() => string"), roots));
  CHECK(!prune_search(Type::number(), 2, ty("() => number"), roots));
  SearchContext ctx(t, Type::string());
  ctx.explored_roots = roots;
  CHECK(prune_search(Type::number(), Type::string(), ty("() => number"), ctx));
}

TEST_CASE("search: number reaches string through toString") {
  std::ostringstream trace;
  Tables tables = default_tables();
  SearchContext ctx(tables, Type::string(), &trace);
  CHECK(reachable(Type::number(), Type::string(), ctx));
  CHECK(reachable_witness(Type::number(), Type::string()) == ".toString()");
  CHECK(trace.str().find("prune") != std::string::npos);
  CHECK(trace.str().find("visit () => number") == std::string::npos);
  CHECK(reachable_witness(Type::string(), Type::string()).empty());
  CHECK(!reachable(Type::string(), Type::number()));
  CHECK_THROWS_AS(reachable_witness(Type::string(), Type::number()), WitnessUnavailable);
}

TEST_CASE("search: reachable(T, T) and termination with valueOf") {
  for (const auto& t : testing::type_universe(1)) CHECK(reachable(t, t));
  CHECK(!reachable(Type::boolean(), Type::number()));
  CHECK(!reachable(ty("() => boolean"), ty("(a: string) => number")));
}

TEST_CASE("search: witnesses typecheck") {
  auto universe = testing::type_universe(1);
  for (const auto& from : universe) {
    for (const auto& goal : universe) {
      if (!reachable(from, goal)) continue;
      auto w = reachable_witness(from, goal, default_tables(), {{"v", from}});
      INFO(from.str() << " -> " << goal.str() << ": v" << w);
      CHECK(typecheck_expr({{"v", from}}, *parse_expression("v" + w, default_tables())) == goal);
    }
  }
}

TEST_CASE("search: agrees with the breadth-first oracle on depth <= 1") {
  auto universe = testing::type_universe(1);
  for (const auto& from : universe) {
    for (const auto& goal : universe) {
      INFO(from.str() << " -> " << goal.str());
      CHECK(reachable(from, goal) == testing::oracle_reachable(from, goal, default_tables()));
    }
  }
}

TEST_CASE("search: randomized tables, witnesses are sound") {
  std::mt19937_64 rng(5);
  auto prims = std::vector<Type>{Type::number(), Type::string(), Type::boolean()};
  auto universe = testing::type_universe(1);
  auto pick = [&](const std::vector<Type>& v) { return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)]; };
  for (int round = 0; round < 20; ++round) {
    Tables tables;
    const char* syms[] = {"+", "-", "<", "=="};
    for (int i = 0; i < 4; ++i) tables.ops.push_back({syms[i % 4], pick(prims), pick(prims), pick(prims)});
    std::vector<MemberEntry> members;
    for (int i = 0; i < 4; ++i) members.push_back({pick(prims), "m" + std::to_string(i), pick(universe)});
    members.push_back({std::nullopt, "self", Type::fun({}, Type::self())});
    tables.lookup = LookupTable(members);
    for (const auto& from : prims) {
      for (const auto& goal : universe) {
        bool r = reachable(from, goal, tables);
        CHECK(r == testing::oracle_reachable(from, goal, tables));
        if (!r) continue;
        auto w = reachable_witness(from, goal, tables, {{"v", from}});
        INFO("v" << w);
        CHECK(typecheck_expr({{"v", from}}, *parse_expression("v" + w, tables), tables) == goal);
      }
    }
  }
}

TEST_CASE("search: memoized sessions") {
  Tables tables = default_tables();
  TypeSearch ts(tables);
  CHECK(ts.reachable(Type::number(), Phase::Postfix, Type::string()));
  CHECK(ts.memo_size() == 1);
  CHECK(ts.reachable(Type::number(), Phase::Postfix, Type::string()));
  CHECK(ts.memo_size() == 1);
  CHECK(!ts.reachable(Type::number(), Phase::Closed, Type::string()));
  CHECK(!ts.reachable(Type::number(), Phase::Binary, Type::string()));
  CHECK(ts.reachable(Type::number(), Phase::Binary, Type::boolean()));
}

TEST_CASE("search: partial expressions") {
  TypeEnv env{{"num", Type::number()}, {"parseInt", ty("(s: string) => number")}};
  auto session = make_session();
  auto a = expr_automaton_constrained(env, Type::number(), session);
  CHECK(!traverse(a.initial, U"parseInt(num").empty());
  CHECK(reachable_from_partial(env, "num", Type::boolean(), session));
  CHECK(reachable_from_partial({}, "(a: number) =>", ty("(a: number) => string"), session));
  TypeEnv xy{{"x", Type::number()}, {"xy", Type::string()}};
  CHECK(derivable(traverse(expr_automaton(xy).initial, U"xy")) == std::vector<Type>{Type::string()});
  CHECK(derivable(traverse(expr_automaton({}).initial, U"tr")) == std::vector<Type>{Type::boolean()});
}
