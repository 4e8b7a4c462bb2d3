#include "tcd/checker.hpp"

#include "tcd/parser.hpp"

namespace tcd {

std::string_view reason_name(TypeErrorReason r) {
  switch (r) {
    case TypeErrorReason::UnboundIdentifier: return "unbound-identifier";
    case TypeErrorReason::NoOperatorSignature: return "no-operator-signature";
    case TypeErrorReason::InvalidAssignmentTarget: return "invalid-assignment-target";
    case TypeErrorReason::NotAFunction: return "not-a-function";
    case TypeErrorReason::ArityMismatch: return "arity-mismatch";
    case TypeErrorReason::ArgumentTypeMismatch: return "argument-type-mismatch";
    case TypeErrorReason::UnknownMember: return "unknown-member";
    case TypeErrorReason::DuplicateDeclaration: return "duplicate-declaration";
    case TypeErrorReason::ReturnOutsideFunction: return "return-outside-function";
    case TypeErrorReason::ReturnTypeMismatch: return "return-type-mismatch";
    case TypeErrorReason::ConditionNotBoolean: return "condition-not-boolean";
    case TypeErrorReason::MissingReturn: return "missing-return";
  }
  return "?";
}

namespace {

TypeEnv bind_params(const TypeEnv& env, const std::vector<Param>& params) {
  TypeEnv out = env;
  for (const auto& p : params) {
    if (out.contains(p.name)) throw TypeError(TypeErrorReason::DuplicateDeclaration, p.name);
    out = out.extended(p.name, p.type);
  }
  return out;
}

class Checker {
 public:
  explicit Checker(const Tables& tables) : tables_(tables) {}

  Type expr(const TypeEnv& env, const Expr& e) const {
    if (auto* lit = std::get_if<ast::Literal>(&e.node)) return Type::prim(lit->kind);
    if (auto* id = std::get_if<ast::Ident>(&e.node)) {
      if (auto t = env.find(id->name)) return *t;
      throw TypeError(TypeErrorReason::UnboundIdentifier, id->name);
    }
    if (auto* anon = std::get_if<ast::Anon>(&e.node)) {
      return Type::fun(anon->params, expr(bind_params(env, anon->params), *anon->body));
    }
    if (auto* g = std::get_if<ast::Group>(&e.node)) return expr(env, *g->inner);
    if (auto* bin = std::get_if<ast::Binary>(&e.node)) {
      Type left = expr(env, *bin->lhs);
      Type right = expr(env, *bin->rhs);
      if (bin->op == kAssignOp && !std::holds_alternative<ast::Ident>(bin->lhs->node)) {
        throw TypeError(TypeErrorReason::InvalidAssignmentTarget, print(*bin->lhs));
      }
      for (const auto& inst : tables_.ops_for(left)) {
        if (inst.op == bin->op && inst.rhs == right) return inst.result;
      }
      throw TypeError(TypeErrorReason::NoOperatorSignature, left.str() + " " + bin->op + " " + right.str());
    }
    if (auto* m = std::get_if<ast::Member>(&e.node)) {
      Type target = expr(env, *m->target);
      if (auto t = tables_.lookup.lookup(target, m->name)) return *t;
      throw TypeError(TypeErrorReason::UnknownMember, target.str() + "." + m->name);
    }
    const auto& call = std::get<ast::Call>(e.node);
    Type callee = expr(env, *call.callee);
    if (!callee.is_fun()) throw TypeError(TypeErrorReason::NotAFunction, callee.str());
    const auto& params = callee.params();
    if (params.size() != call.args.size()) {
      throw TypeError(TypeErrorReason::ArityMismatch,
                      std::to_string(call.args.size()) + " arguments for " + callee.str());
    }
    for (std::size_t i = 0; i < params.size(); ++i) {
      Type arg = expr(env, *call.args[i]);
      if (arg != params[i].type) {
        throw TypeError(TypeErrorReason::ArgumentTypeMismatch,
                        "argument " + std::to_string(i) + ": " + arg.str() + " vs " + params[i].type.str());
      }
    }
    return callee.ret();
  }

  TypeEnv stmt(const TypeEnv& env, const Stmt& s, const std::optional<Type>& ret) const {
    if (auto* d = std::get_if<ast::Decl>(&s.node)) {
      if (env.contains(d->name)) throw TypeError(TypeErrorReason::DuplicateDeclaration, d->name);
      return env.extended(d->name, d->type);
    }
    if (auto* es = std::get_if<ast::ExprStmt>(&s.node)) {
      expr(env, *es->expr);
      return env;
    }
    if (auto* r = std::get_if<ast::Return>(&s.node)) {
      if (!ret) throw TypeError(TypeErrorReason::ReturnOutsideFunction, print(*r->expr));
      Type t = expr(env, *r->expr);
      if (t != *ret) throw TypeError(TypeErrorReason::ReturnTypeMismatch, t.str() + " vs " + ret->str());
      return env;
    }
    if (auto* b = std::get_if<ast::Block>(&s.node)) {
      stmts(env, b->body, ret);
      return env;
    }
    if (auto* f = std::get_if<ast::FunDef>(&s.node)) {
      if (env.contains(f->name)) throw TypeError(TypeErrorReason::DuplicateDeclaration, f->name);
      TypeEnv inner = bind_params(env, f->params);
      stmts(inner, f->body, f->ret);
      if (!check_returns(f->body, f->ret, inner, tables_)) {
        throw TypeError(TypeErrorReason::MissingReturn, f->name);
      }
      return env.extended(f->name, Type::fun(f->params, f->ret));
    }
    const auto& ite = std::get<ast::If>(s.node);
    Type cond = expr(env, *ite.cond);
    if (cond != Type::boolean()) throw TypeError(TypeErrorReason::ConditionNotBoolean, cond.str());
    stmt(env, *ite.then_branch, ret);
    stmt(env, *ite.else_branch, ret);
    return env;
  }

  TypeEnv stmts(const TypeEnv& env, const StmtList& list, const std::optional<Type>& ret) const {
    TypeEnv cur = env;
    for (const auto& s : list) cur = stmt(cur, *s, ret);
    return cur;
  }

 private:
  const Tables& tables_;
};

bool returns_one(const Stmt& s, const Type& declared, TypeEnv& env, const Tables& tables);

bool returns_list(const StmtList& list, const Type& declared, TypeEnv env, const Tables& tables) {
  for (const auto& s : list) {
    if (returns_one(*s, declared, env, tables)) return true;
  }
  return false;
}

// True when `s` itself guarantees a return (the SELF rules). Otherwise
// updates `env` so the NEXT rules can continue with the remaining statements.
bool returns_one(const Stmt& s, const Type& declared, TypeEnv& env, const Tables& tables) {
  if (auto* d = std::get_if<ast::Decl>(&s.node)) {
    if (!env.contains(d->name)) env = env.extended(d->name, d->type);
    return false;
  }
  if (std::holds_alternative<ast::ExprStmt>(s.node)) return false;
  if (auto* r = std::get_if<ast::Return>(&s.node)) {
    try {
      return typecheck_expr(env, *r->expr, tables) == declared;
    } catch (const TypeError&) {
      return false;
    }
  }
  if (auto* b = std::get_if<ast::Block>(&s.node)) return returns_list(b->body, declared, env, tables);
  if (auto* f = std::get_if<ast::FunDef>(&s.node)) {
    TypeEnv inner = env;
    for (const auto& p : f->params) {
      if (!inner.contains(p.name)) inner = inner.extended(p.name, p.type);
    }
    if (!returns_list(f->body, f->ret, inner, tables)) {
      // R-FUN requires the nested body to return; treat as a failed derivation.
      throw TypeError(TypeErrorReason::MissingReturn, f->name);
    }
    if (!env.contains(f->name)) env = env.extended(f->name, Type::fun(f->params, f->ret));
    return false;
  }
  const auto& ite = std::get<ast::If>(s.node);
  TypeEnv then_env = env;
  TypeEnv else_env = env;
  return returns_one(*ite.then_branch, declared, then_env, tables) &&
         returns_one(*ite.else_branch, declared, else_env, tables);
}

void check_nested_returns(const StmtList& list, const TypeEnv& env, const Tables& tables);

}  // namespace

Type typecheck_expr(const TypeEnv& env, const Expr& e, const Tables& tables) { return Checker(tables).expr(env, e); }

TypeEnv typecheck_stmts(const TypeEnv& env, const StmtList& stmts, const std::optional<Type>& ret_ctx,
                        const Tables& tables) {
  return Checker(tables).stmts(env, stmts, ret_ctx);
}

bool check_returns(const StmtList& stmts, const Type& declared, const TypeEnv& env, const Tables& tables) {
  try {
    return returns_list(stmts, declared, env, tables);
  } catch (const TypeError&) {
    return false;
  }
}

namespace {

void check_nested_returns(const StmtList& list, const TypeEnv& env, const Tables& tables) {
  TypeEnv cur = env;
  for (const auto& s : list) {
    if (auto* f = std::get_if<ast::FunDef>(&s->node)) {
      TypeEnv inner = bind_params(cur, f->params);
      if (!check_returns(f->body, f->ret, inner, tables)) throw TypeError(TypeErrorReason::MissingReturn, f->name);
      check_nested_returns(f->body, inner, tables);
      cur = cur.extended(f->name, Type::fun(f->params, f->ret));
    } else if (auto* b = std::get_if<ast::Block>(&s->node)) {
      check_nested_returns(b->body, cur, tables);
    } else if (auto* ite = std::get_if<ast::If>(&s->node)) {
      check_nested_returns({ite->then_branch}, cur, tables);
      check_nested_returns({ite->else_branch}, cur, tables);
    } else if (auto* d = std::get_if<ast::Decl>(&s->node)) {
      cur = cur.extended(d->name, d->type);
    }
  }
}

}  // namespace

TypeEnv check_program(std::string_view text, const TypeEnv& globals, const Tables& tables) {
  StmtList program = parse_program(text, tables);
  TypeEnv out = typecheck_stmts(globals, program, std::nullopt, tables);
  check_nested_returns(program, globals, tables);
  return out;
}

}  // namespace tcd
