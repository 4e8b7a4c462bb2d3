#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tcd/ast.hpp"
#include "tcd/type.hpp"

namespace tcd {

/// Annotations threaded through the automata. Which fields are meaningful
/// depends on the sub-automaton that produced the state.
struct Attrs {
  TypeEnv env;
  std::optional<Type> typ;         // type of the parsed expression / annotation
  ExprPtr expr;                    // parsed expression, when tracked
  std::optional<Type> constraint;  // goal type of the expression being parsed
  std::optional<Type> ret_type;    // enclosing function's declared return type
  bool returned = false;           // statements so far guarantee a return
  bool must_return = false;        // inside a function body
  std::string name;                // last parsed identifier
  std::vector<Param> params;       // parsed parameter list
  std::uint8_t phase = 0;          // expression phase (see search.hpp)
  bool lvalue = false;             // a bare identifier, assignable
};

using AttrsPtr = std::shared_ptr<const Attrs>;

const Attrs& empty_attrs();
AttrsPtr make_attrs(Attrs a);

class State;
using StatePtr = std::shared_ptr<const State>;
using StateSet = std::vector<StatePtr>;

class State {
 public:
  virtual ~State() = default;
  /// δ(q, c): appends successors to `out`.
  virtual void step(char32_t c, StateSet& out) const = 0;
  virtual bool accepting() const = 0;
  virtual const Attrs& attrs() const { return empty_attrs(); }
  /// A suffix that, fed from this state, is expected to reach an accepting
  /// state. Used by force_complete; callers verify it by traversal.
  virtual std::optional<std::u32string> completion() const { return std::nullopt; }
};

/// A prefix automaton is its finite set of initial states; transitions and
/// acceptance live on the states themselves and are computed lazily.
struct Automaton {
  StateSet initial;

  StateSet step(const StateSet& from, char32_t c) const;
  bool accepts(std::u32string_view s) const;
  bool accepts(std::string_view utf8) const;
  /// traverse(initial, s) ≠ ∅.
  bool live(std::u32string_view s) const;
  bool live(std::string_view utf8) const;
};

class EmptyTerminal : public std::invalid_argument {
 public:
  EmptyTerminal() : std::invalid_argument("terminal string must be non-empty") {}
};

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(std::size_t budget)
      : std::runtime_error("no completion found within budget " + std::to_string(budget)) {}
};

StateSet step_all(const StateSet& from, char32_t c);
StateSet traverse(const StateSet& start, std::u32string_view s);
StateSet traverse(const Automaton& a, const StateSet& start, std::u32string_view s);
StateSet traverse(const Automaton& a, const StateSet& start, std::string_view utf8);
bool any_accepting(const StateSet& states);

bool is_ws(char32_t c);

Automaton empty();
Automaton terminal(std::u32string_view s);
Automaton terminal(std::string_view utf8);
/// Arbitrary leading whitespace, then `s`.
Automaton ws_terminal(std::u32string_view s);
Automaton ws_terminal(std::string_view utf8);
/// Accepts only the empty string; its single state carries `attrs`.
Automaton accept_with(Attrs attrs);
Automaton accept_with(AttrsPtr attrs);
Automaton union_of(const Automaton& x, const Automaton& y);
Automaton union_of(const std::vector<Automaton>& parts);
Automaton concat(const Automaton& x, const Automaton& y);

/// Dependent concatenation: whenever x reaches an accepting state q, the
/// automaton `next(q)` continues from there.
using Continuation = std::function<Automaton(const State&)>;
Automaton bind(const Automaton& x, Continuation next);

Automaton kleene(const Automaton& x);

/// Zero or more iterations threading attributes: the first iteration is
/// `body(seed)`, each later one `body(attrs of the previous accepting state)`.
/// The empty repetition accepts with `seed`. `done` only steers
/// force_complete: completions prefer to stop at states satisfying it.
using AttrsFn = std::function<Automaton(const Attrs&)>;
using AttrsPred = std::function<bool(const Attrs&)>;
Automaton repeat(AttrsPtr seed, AttrsFn body, AttrsPred done = nullptr);

/// Arbitrary leading whitespace, then `a`. `a` should not accept ε.
Automaton ws_then(const Automaton& a);

/// Keeps only the states of `a` (initial and successors) satisfying `pred`.
using StatePred = std::function<bool(const State&)>;
Automaton filter(const Automaton& a, StatePred pred);

/// The first character consumed by `y` must satisfy `pred`.
Automaton guard(std::function<bool(char32_t)> pred, const Automaton& y);

inline constexpr std::size_t kDefaultCompletionBudget = 256;

/// Finds s with traverse({q}, s) ∩ F ≠ ∅. Tries the states' own completion
/// witnesses first, then a breadth-first search over printable ASCII.
/// `budget` bounds the number of search nodes.
std::u32string force_complete(const StatePtr& q, std::size_t budget = kDefaultCompletionBudget);
std::u32string force_complete(const StateSet& qs, std::size_t budget = kDefaultCompletionBudget);
std::u32string force_complete(const Automaton& a, const StatePtr& q, std::size_t budget = kDefaultCompletionBudget);

/// Helper for completion witnesses: the accepting states reached from `q`
/// by feeding `s`.
StateSet accepting_after(const StatePtr& q, std::u32string_view s);

}  // namespace tcd
