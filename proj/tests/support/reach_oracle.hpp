#pragma once

#include <deque>
#include <set>
#include <vector>

#include "tcd/tables.hpp"
#include "tcd/type.hpp"

namespace tcd::testing {

/// Successors in the type graph computed straight from the raw table
/// entries. `binary` marks a type produced by an operator: only further
/// operators may follow it.
inline std::vector<std::pair<Type, bool>> oracle_successors(const Type& t, bool binary, const Tables& tables) {
  std::vector<std::pair<Type, bool>> out;
  if (!binary) {
    std::set<std::string> concrete;
    for (const auto& e : tables.lookup.entries()) {
      if (e.receiver && *e.receiver == t) concrete.insert(e.name);
    }
    for (const auto& e : tables.lookup.entries()) {
      bool applies = e.receiver ? *e.receiver == t : !concrete.contains(e.name);
      if (applies) out.emplace_back(e.type.substitute_self(t), false);
    }
    if (t.is_fun()) out.emplace_back(t.ret(), false);
  }
  for (const auto& sig : tables.ops) {
    if (sig.op == "=") continue;
    if (sig.lhs.is_self() || sig.lhs == t) out.emplace_back(sig.result.substitute_self(t), true);
  }
  return out;
}

/// Breadth-first search without pruning over types of depth at most
/// max(depth(from), depth(goal)) + 1.
inline bool oracle_reachable(const Type& from, const Type& goal, const Tables& tables) {
  const int bound = std::max(depth(from), depth(goal)) + 1;
  std::set<std::pair<Type, bool>> seen{{from, false}};
  std::deque<std::pair<Type, bool>> queue{{from, false}};
  while (!queue.empty()) {
    auto [t, binary] = queue.front();
    queue.pop_front();
    if (t == goal) return true;
    for (auto& next : oracle_successors(t, binary, tables)) {
      if (depth(next.first) > bound) continue;
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return false;
}

/// Every type of depth at most `max_depth` over the three primitives, with
/// zero or one parameter per function type; parameter types come from the
/// lower levels.
inline std::vector<Type> type_universe(int max_depth) {
  std::vector<Type> level{Type::number(), Type::string(), Type::boolean()};
  std::vector<Type> all = level;
  for (int d = 1; d <= max_depth; ++d) {
    std::vector<Type> lower = all;
    std::vector<Type> next;
    for (const auto& ret : lower) {
      next.push_back(Type::fun({}, ret));
      for (const auto& p : lower) next.push_back(Type::fun({{"a", p}}, ret));
    }
    for (auto& t : next) {
      if (depth(t) == d) all.push_back(t);
    }
  }
  std::set<Type> uniq;
  std::vector<Type> out;
  for (auto& t : all) {
    if (uniq.insert(t).second) out.push_back(t);
  }
  return out;
}

}  // namespace tcd::testing
