#pragma once

#include <random>
#include <string>

#include "tcd/automaton.hpp"
#include "tcd/utf8.hpp"

namespace tcd::testing {

inline const std::u32string& walk_alphabet() {
  static const std::u32string a = [] {
    std::u32string s;
    for (char32_t c = 0x20; c < 0x7f; ++c) s.push_back(c);
    s.push_back(U'\n');
    return s;
  }();
  return a;
}

/// Random walk through `a` that stays live; once `soft_len` characters are
/// consumed, the walk is finished with force_complete. Returns nullopt if
/// the walk ever gets stuck (which would contradict the prefix property).
template <class Rng>
std::optional<std::string> random_accepted(const Automaton& a, Rng& rng, std::size_t soft_len,
                                           std::size_t budget = kDefaultCompletionBudget) {
  StateSet cur = a.initial;
  std::u32string text;
  const auto& alpha = walk_alphabet();
  while (text.size() < soft_len) {
    if (any_accepting(cur) && std::uniform_int_distribution<int>(0, 5)(rng) == 0) return to_utf8(text);
    std::vector<std::pair<char32_t, StateSet>> moves;
    for (char32_t c : alpha) {
      StateSet n = step_all(cur, c);
      if (!n.empty()) moves.emplace_back(c, std::move(n));
    }
    if (moves.empty()) break;
    // Favour non-whitespace so walks make progress.
    std::size_t pick = std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng);
    if (is_ws(moves[pick].first) && std::uniform_int_distribution<int>(0, 3)(rng) != 0) {
      pick = std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng);
    }
    text.push_back(moves[pick].first);
    cur = std::move(moves[pick].second);
  }
  if (any_accepting(cur)) return to_utf8(text);
  if (cur.empty()) return std::nullopt;
  try {
    return to_utf8(text + force_complete(cur, budget));
  } catch (const BudgetExhausted&) {
    return std::nullopt;
  }
}

}  // namespace tcd::testing
