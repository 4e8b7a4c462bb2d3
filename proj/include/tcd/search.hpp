#pragma once

#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "tcd/tables.hpp"
#include "tcd/type.hpp"

namespace tcd {

/// Which extensions the expression built so far still admits. Operators
/// chain flat and left-associatively while member access and calls bind to
/// the operand they follow:
///   Postfix  a bare operand (base plus member/call chain): everything
///   Binary   ends in a complete `e op operand`: only further operators
///   Operand  right-hand side of an operator: only member access and calls
///   Closed   an arrow function, whose body absorbed the rest: nothing
enum class Phase { Postfix, Binary, Operand, Closed };

std::string_view phase_name(Phase p);

struct TypeGraphStep {
  enum class Kind { Member, Operator, Call };
  Kind kind;
  std::string label;           // member name or operator symbol
  Type from;
  Type to;
  std::optional<Type> operand; // right operand type of an operator step
  Phase next;
};

std::string_view step_kind_name(TypeGraphStep::Kind k);

/// Valid extension steps from `t` in `phase`: member accesses, then
/// operators, then calls, each in table order. Assignment never appears:
/// its left side must be a plain identifier and it maps T to T.
std::vector<TypeGraphStep> extension_steps(const Type& t, Phase phase, const Tables& tables);

struct SearchContext {
  const Tables* tables;
  std::optional<Type> goal;  // absent for lifted searches
  int goal_depth;
  std::set<std::pair<Type, Phase>> visited;
  std::set<Type> explored_roots;
  std::ostream* trace = nullptr;

  SearchContext(const Tables& t, const Type& g, std::ostream* tr = nullptr)
      : tables(&t), goal(g), goal_depth(depth(g)), trace(tr) {}
  SearchContext(const Tables& t, int depth_bound, std::ostream* tr = nullptr)
      : tables(&t), goal_depth(depth_bound), trace(tr) {}
};

/// depth(candidate) > max(depth(goal), depth(current)) and root(candidate)
/// already explored.
bool prune_search(const Type& current, const Type& goal, const Type& candidate, const SearchContext& ctx);
bool prune_search(const Type& current, int goal_depth, const Type& candidate, const std::set<Type>& explored_roots);

/// Renders literals of arbitrary type for witnesses; function-typed values
/// become parenthesized arrow functions whose parameter names avoid `env`.
class LiteralRenderer {
 public:
  explicit LiteralRenderer(TypeEnv env = {}) : env_(std::move(env)) {}
  std::string literal(const Type& t);
  std::string step(const TypeGraphStep& s);

 private:
  std::string fresh();
  TypeEnv env_;
  int counter_ = 0;
};

/// A found-predicate returning the remaining suffix when the type (reached in
/// the given phase) satisfies the search.
using FoundFn = std::function<std::optional<std::string>(const Type&, Phase)>;

/// Depth-first search from (`from`, `phase`) with depth/root pruning against
/// `ctx.goal_depth`. Returns the extension suffix (steps, then whatever
/// `found` returned) on success.
std::optional<std::string> search(const Type& from, Phase phase, SearchContext& ctx, const FoundFn& found,
                                  LiteralRenderer& render);

/// Plain reachability from a bare operand of type `current` to `goal`.
bool reachable(const Type& current, const Type& goal, SearchContext& ctx);
bool reachable(const Type& current, const Type& goal, const Tables& tables = default_tables());

class WitnessUnavailable : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Extension text y with Γ ⊢ e ∘ y : goal whenever Γ ⊢ e : current.
std::string reachable_witness(const Type& current, const Type& goal, const Tables& tables = default_tables(),
                              const TypeEnv& env = {});

/// Session-owned memo of plain searches, keyed by (from, phase, goal).
class TypeSearch {
 public:
  explicit TypeSearch(const Tables& tables) : tables_(tables) {}

  bool reachable(const Type& from, Phase phase, const Type& goal);
  std::optional<std::string> witness(const Type& from, Phase phase, const Type& goal, const TypeEnv& env);
  const Tables& tables() const { return tables_; }
  std::size_t memo_size() const { return memo_.size(); }

 private:
  const Tables& tables_;
  std::map<std::tuple<Type, Phase, Type>, bool> memo_;
};

}  // namespace tcd
