#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "tcd/ast.hpp"
#include "tcd/tables.hpp"

namespace tcd {

enum class TypeErrorReason {
  UnboundIdentifier,
  NoOperatorSignature,
  InvalidAssignmentTarget,
  NotAFunction,
  ArityMismatch,
  ArgumentTypeMismatch,
  UnknownMember,
  DuplicateDeclaration,
  ReturnOutsideFunction,
  ReturnTypeMismatch,
  ConditionNotBoolean,
  MissingReturn,
};

std::string_view reason_name(TypeErrorReason r);

class TypeError : public std::runtime_error {
 public:
  TypeError(TypeErrorReason reason, const std::string& detail)
      : std::runtime_error(std::string(reason_name(reason)) + ": " + detail), reason_(reason) {}
  TypeErrorReason reason() const { return reason_; }

 private:
  TypeErrorReason reason_;
};

/// Γ ⊢ e : T. Throws TypeError.
Type typecheck_expr(const TypeEnv& env, const Expr& e, const Tables& tables = default_tables());

/// Γ₁ ⊢ s̄ ↣ Γ₂. `ret_ctx` is the enclosing function's return type. Function
/// definitions must also return on every path.
TypeEnv typecheck_stmts(const TypeEnv& env, const StmtList& stmts, const std::optional<Type>& ret_ctx,
                        const Tables& tables = default_tables());

/// Γ ⊢ s̄ : declared, i.e. every execution path returns a value of the
/// declared type. Conditions are not typed; returned expressions are typed
/// under `env` extended by the declarations seen along the way.
bool check_returns(const StmtList& stmts, const Type& declared, const TypeEnv& env = {},
                   const Tables& tables = default_tables());

/// Parses and checks a whole program: typecheck_stmts at top level plus
/// check_returns for every function definition it contains.
TypeEnv check_program(std::string_view text, const TypeEnv& globals = {}, const Tables& tables = default_tables());

}  // namespace tcd
