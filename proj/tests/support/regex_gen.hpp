#pragma once

#include <memory>
#include <random>
#include <set>
#include <string>

#include "tcd/automaton.hpp"

namespace tcd::testing {

/// Small combinator expressions over {a, b, c}, with the language computed
/// directly from the tree (no automata involved).
struct Rx {
  enum class Kind { Term, Empty, Union, Concat, Star } kind;
  std::string text;
  std::shared_ptr<const Rx> left, right;

  Automaton build() const {
    switch (kind) {
      case Kind::Term: return terminal(text);
      case Kind::Empty: return empty();
      case Kind::Union: return union_of(left->build(), right->build());
      case Kind::Concat: return concat(left->build(), right->build());
      case Kind::Star: return kleene(left->build());
    }
    return empty();
  }

  std::set<std::string> language(std::size_t k) const {
    std::set<std::string> out;
    switch (kind) {
      case Kind::Term:
        if (text.size() <= k) out.insert(text);
        break;
      case Kind::Empty: break;
      case Kind::Union: {
        out = left->language(k);
        auto r = right->language(k);
        out.insert(r.begin(), r.end());
        break;
      }
      case Kind::Concat:
        for (const auto& x : left->language(k)) {
          for (const auto& y : right->language(k)) {
            if (x.size() + y.size() <= k) out.insert(x + y);
          }
        }
        break;
      case Kind::Star: {
        auto body = left->language(k);
        out.insert("");
        bool grew = true;
        while (grew) {
          grew = false;
          for (const auto& x : std::set<std::string>(out)) {
            for (const auto& y : body) {
              if (!y.empty() && x.size() + y.size() <= k && out.insert(x + y).second) grew = true;
            }
          }
        }
        break;
      }
    }
    return out;
  }

  std::string show() const {
    switch (kind) {
      case Kind::Term: return "'" + text + "'";
      case Kind::Empty: return "0";
      case Kind::Union: return "(" + left->show() + "|" + right->show() + ")";
      case Kind::Concat: return "(" + left->show() + " " + right->show() + ")";
      case Kind::Star: return left->show() + "*";
    }
    return "?";
  }

  /// Whether the language is non-empty (concat needs a non-empty right side).
  bool inhabited() const {
    switch (kind) {
      case Kind::Term: return true;
      case Kind::Empty: return false;
      case Kind::Union: return left->inhabited() || right->inhabited();
      case Kind::Concat: return left->inhabited() && right->inhabited();
      case Kind::Star: return true;
    }
    return false;
  }
};
using RxPtr = std::shared_ptr<const Rx>;

template <class Rng>
RxPtr random_rx(Rng& rng, int depth, std::string_view alphabet = "abc") {
  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  auto leaf = [&]() {
    if (pick(8) == 0) return std::make_shared<const Rx>(Rx{Rx::Kind::Empty, "", nullptr, nullptr});
    std::string t;
    int len = 1 + pick(2);
    for (int i = 0; i < len; ++i) t.push_back(alphabet[pick(static_cast<int>(alphabet.size()))]);
    return std::make_shared<const Rx>(Rx{Rx::Kind::Term, t, nullptr, nullptr});
  };
  if (depth == 0 || pick(4) == 0) return leaf();
  switch (pick(3)) {
    case 0: return std::make_shared<const Rx>(Rx{Rx::Kind::Union, "", random_rx(rng, depth - 1, alphabet),
                                                 random_rx(rng, depth - 1, alphabet)});
    case 1: {
      auto l = random_rx(rng, depth - 1, alphabet);
      auto r = random_rx(rng, depth - 1, alphabet);
      while (!r->inhabited()) r = random_rx(rng, depth - 1, alphabet);
      return std::make_shared<const Rx>(Rx{Rx::Kind::Concat, "", l, r});
    }
    default: return std::make_shared<const Rx>(Rx{Rx::Kind::Star, "", random_rx(rng, depth - 1, alphabet), nullptr});
  }
}

/// Every string over `alphabet` of length at most k, shortest first.
inline std::vector<std::string> all_strings(std::string_view alphabet, std::size_t k) {
  std::vector<std::string> out{""};
  std::size_t from = 0;
  for (std::size_t len = 1; len <= k; ++len) {
    std::size_t to = out.size();
    for (std::size_t i = from; i < to; ++i) {
      for (char c : alphabet) out.push_back(out[i] + c);
    }
    from = to;
  }
  return out;
}

}  // namespace tcd::testing
