#pragma once

#include <optional>

#include "tcd/automaton.hpp"
#include "tcd/expr.hpp"

namespace tcd {

/// One statement starting from `at` (env, ret_type, returned). Accepting
/// states carry the attributes after the statement: the extended env for
/// declarations and function definitions, `returned` per the return rules.
Automaton statement_automaton(const Attrs& at, const SessionPtr& session);

Automaton stmt_automaton(const TypeEnv& env, const std::optional<Type>& ret_ctx,
                         const SessionPtr& session = nullptr);

/// `return e;` with e of type `ret_ctx`; empty without a return context.
Automaton return_automaton(const TypeEnv& env, const std::optional<Type>& ret_ctx,
                           const SessionPtr& session = nullptr);

/// `function f(p: T, ...): R { ... }`. The closing brace of the body is only
/// offered once the body is guaranteed to return.
Automaton fun_automaton(const TypeEnv& env, const SessionPtr& session = nullptr);

/// Zero or more statements under `globals`, then optional whitespace.
Automaton program_automaton(const TypeEnv& globals = {}, const SessionPtr& session = nullptr);

}  // namespace tcd
