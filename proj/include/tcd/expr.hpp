#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "tcd/automaton.hpp"
#include "tcd/search.hpp"
#include "tcd/tables.hpp"

namespace tcd {

/// Tables plus the memo of type searches; shared by every automaton built
/// for one traversal session. Not thread-safe.
class ExprSession {
 public:
  explicit ExprSession(Tables tables = default_tables()) : tables_(std::move(tables)), search_(tables_) {}
  ExprSession(const ExprSession&) = delete;
  ExprSession& operator=(const ExprSession&) = delete;

  const Tables& tables() const { return tables_; }
  TypeSearch& search() { return search_; }
  /// Lifted search results keyed by the goal's structural key.
  std::map<std::tuple<std::string, Type, Phase>, bool>& lifted_memo() { return lifted_; }

 private:
  Tables tables_;
  TypeSearch search_;
  std::map<std::tuple<std::string, Type, Phase>, bool> lifted_;
};

using SessionPtr = std::shared_ptr<ExprSession>;
SessionPtr make_session(Tables tables = default_tables());

class Goal;
using GoalPtr = std::shared_ptr<const Goal>;

/// What the expression being parsed must turn into. `accepts(t, ph)` holds
/// when an expression of type t, ending in phase ph, may stop here;
/// `reachable(t, ph)` when some sequence of extensions gets it there.
class Goal {
 public:
  explicit Goal(ExprSession* session, int depth_bound) : session_(session), depth_(depth_bound) {}
  virtual ~Goal() = default;

  virtual bool accepts(const Type& t, Phase ph) const = 0;
  virtual bool reachable(const Type& t, Phase ph) const;
  /// Extension text leading from (t, ph) to a state where `accepts` holds.
  virtual std::optional<std::string> witness(const Type& t, Phase ph, const TypeEnv& env) const;
  /// The single function type an arrow function must have here, if fixed.
  virtual std::optional<Type> anon_target() const { return std::nullopt; }
  int depth() const { return depth_; }
  ExprSession& session() const { return *session_; }
  /// Equal keys mean equal goals.
  const std::string& key() const { return key_; }

 protected:
  ExprSession* session_;
  int depth_;
  std::string key_;
};

/// The expression must have exactly type `t`.
GoalPtr exact_goal(ExprSession& session, const Type& t);

/// Accepting states carry attrs.typ, attrs.phase and attrs.lvalue.
Automaton expr_automaton(const TypeEnv& env, const SessionPtr& session = nullptr);
Automaton expr_automaton_constrained(const TypeEnv& env, const Type& goal, const SessionPtr& session = nullptr);
/// Expression automaton for an arbitrary goal (nullptr: unconstrained).
Automaton expr_automaton_for(const TypeEnv& env, GoalPtr goal, const SessionPtr& session);

/// Arrow functions only; with a function-type constraint the parameter
/// annotations must match it and the body is constrained to its return type.
Automaton anon_fn_automaton(const TypeEnv& env, const std::optional<Type>& constraint,
                            const SessionPtr& session = nullptr);

/// Types the expressions in progress in `states` could take once the
/// current component completes. Grouped expressions and arrow functions in
/// progress contribute nothing here: their liveness comes from the lifted
/// search.
std::vector<Type> derivable(const StateSet& states);

/// Whether `prefix` can still be completed into an expression of type
/// `goal` under `env`.
bool reachable_from_partial(const TypeEnv& env, std::string_view prefix, const Type& goal,
                            const SessionPtr& session = nullptr);

}  // namespace tcd
