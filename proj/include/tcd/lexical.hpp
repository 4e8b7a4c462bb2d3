#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "tcd/automaton.hpp"
#include "tcd/type.hpp"

namespace tcd {

/// Deterministic automaton over character classes, pruned so that every
/// remaining state can reach an accepting one.
class Dfa {
 public:
  using CharClass = std::function<bool(char32_t)>;
  struct Edge {
    int from;
    CharClass cls;
    char32_t sample;  // a member of `cls`, used to build completions
    int to;
  };

  Dfa(int states, std::vector<Edge> edges, std::vector<int> accepting);

  static constexpr int kDead = -1;
  int start() const { return live_[0] ? 0 : kDead; }
  int next(int state, char32_t c) const;
  bool accepting(int state) const { return state >= 0 && accepting_[state]; }
  bool live(int state) const { return state >= 0 && live_[state]; }
  /// Shortest sample string from `state` to acceptance.
  const std::u32string& completion(int state) const { return completion_[state]; }
  int size() const { return static_cast<int>(live_.size()); }

 private:
  std::vector<Edge> edges_;
  std::vector<bool> accepting_;
  std::vector<bool> live_;
  std::vector<std::u32string> completion_;
};

/// `[0-9]+(\.[0-9]+)?([eE][+-]?[0-9]+)?`
const Dfa& number_dfa();
/// Double-quoted, escapes `\\ \" \n \t`, no raw newline.
const Dfa& string_dfa();
/// `true|false`
const Dfa& boolean_dfa();
const Dfa& literal_dfa(Type::Prim kind);

/// Union of the three literal automata; accepting states carry `typ`.
Automaton literal_automaton();
Automaton literal_automaton(Type::Prim kind);
/// Same, with `attrs` on every state instead of just the type.
Automaton literal_automaton(Type::Prim kind, AttrsPtr attrs);

/// Exactly `word` (no leading whitespace); states carry `attrs`.
Automaton word_automaton(std::string_view word, AttrsPtr attrs);

/// True iff `prefix` is a prefix of some literal of primitive type `t`.
bool pmatch(std::u32string_view prefix, const Type& t);
bool pmatch(std::string_view prefix, const Type& t);

/// Identifiers bound in `env`; accepting states carry `typ` and `name`.
Automaton identifier_automaton(const TypeEnv& env);

/// Any non-reserved identifier not bound in `env`; accepting states carry
/// `name`.
Automaton fresh_identifier_automaton(const TypeEnv& env);

/// Type annotations; leading whitespace allowed. Accepting states carry the
/// parsed type in `typ`.
Automaton type_annotation_automaton();

/// A parenthesized parameter list `(n1: T1, ...)` with leading whitespace.
/// Names must be fresh against `names` and the earlier parameters.
struct ParamListSpec {
  TypeEnv names;
  /// Type automaton for the i-th parameter; nullopt when no i-th parameter
  /// is allowed.
  std::function<std::optional<Automaton>(std::size_t)> param_type;
  /// Whether the list may end after i parameters.
  std::function<bool(std::size_t)> may_close;
  /// Continues after the closing parenthesis.
  std::function<Automaton(const std::vector<Param>&)> after_close;
};
Automaton param_list_automaton(ParamListSpec spec);

/// Annotations denoting exactly `t` (parameter names are free).
Automaton exact_type_automaton(const Type& t);

}  // namespace tcd
