#include "tcd/expr.hpp"

#include <set>

#include "tcd/lexical.hpp"
#include "tcd/utf8.hpp"

namespace tcd {

SessionPtr make_session(Tables tables) { return std::make_shared<ExprSession>(std::move(tables)); }

bool Goal::reachable(const Type& t, Phase ph) const {
  auto& memo = session_->lifted_memo();
  auto key = std::make_tuple(key_, t, ph);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  SearchContext ctx(session_->tables(), depth_);
  LiteralRenderer render;
  FoundFn found = [this](const Type& x, Phase p) -> std::optional<std::string> {
    if (accepts(x, p)) return std::string();
    return std::nullopt;
  };
  bool ok = search(t, ph, ctx, found, render).has_value();
  memo.emplace(key, ok);
  return ok;
}

std::optional<std::string> Goal::witness(const Type& t, Phase ph, const TypeEnv& env) const {
  if (!reachable(t, ph)) return std::nullopt;
  SearchContext ctx(session_->tables(), depth_);
  LiteralRenderer render(env);
  FoundFn found = [this](const Type& x, Phase p) -> std::optional<std::string> {
    if (accepts(x, p)) return std::string();
    return std::nullopt;
  };
  return search(t, ph, ctx, found, render);
}

namespace {

Phase phase_of(const Attrs& a) { return static_cast<Phase>(a.phase); }
std::uint8_t phase_tag(Phase p) { return static_cast<std::uint8_t>(p); }

class ExactGoal final : public Goal {
 public:
  ExactGoal(ExprSession& s, Type t) : Goal(&s, tcd::depth(t)), target_(std::move(t)) { key_ = "E" + target_.str(); }
  bool accepts(const Type& t, Phase) const override { return t == target_; }
  bool reachable(const Type& t, Phase ph) const override { return session_->search().reachable(t, ph, target_); }
  std::optional<std::string> witness(const Type& t, Phase ph, const TypeEnv& env) const override {
    return session_->search().witness(t, ph, target_, env);
  }
  std::optional<Type> anon_target() const override {
    if (target_.is_fun()) return target_;
    return std::nullopt;
  }

 private:
  Type target_;
};

// Inside `( ... )`: the inner expression may close once the parenthesized
// value, continued in `close`, can still satisfy the outer goal.
class GroupGoal final : public Goal {
 public:
  GroupGoal(GoalPtr outer, Phase close) : Goal(&outer->session(), outer->depth()), outer_(std::move(outer)), close_(close) {
    key_ = "G" + std::to_string(static_cast<int>(close_)) + "(" + outer_->key() + ")";
  }
  bool accepts(const Type& t, Phase) const override { return outer_->reachable(t, close_); }
  std::optional<Type> anon_target() const override { return outer_->anon_target(); }

 private:
  GoalPtr outer_;
  Phase close_;
};

// Right operand of `lhs op _`; `outer` may be null.
class RhsGoal final : public Goal {
 public:
  RhsGoal(ExprSession& s, std::vector<OpInstance> insts, GoalPtr outer)
      : Goal(&s, bound(insts, outer)), insts_(std::move(insts)), outer_(std::move(outer)) {
    key_ = "R[";
    for (const auto& i : insts_) key_ += i.op + " " + i.rhs.str() + " " + i.result.str() + ";";
    key_ += "](" + (outer_ ? outer_->key() : std::string("-")) + ")";
  }

  bool accepts(const Type& t, Phase ph) const override {
    for (const auto& inst : insts_) {
      if (inst.rhs != t) continue;
      if (!outer_ || outer_->reachable(inst.result, ph == Phase::Closed ? Phase::Closed : Phase::Binary)) return true;
    }
    return false;
  }
  std::optional<Type> anon_target() const override {
    std::optional<Type> found;
    for (const auto& inst : insts_) {
      if (!inst.rhs.is_fun()) continue;
      if (outer_ && !outer_->reachable(inst.result, Phase::Closed)) continue;
      if (found && *found != inst.rhs) return std::nullopt;
      found = inst.rhs;
    }
    return found;
  }
  const std::vector<OpInstance>& insts() const { return insts_; }

 private:
  static int bound(const std::vector<OpInstance>& insts, const GoalPtr& outer) {
    int d = outer ? outer->depth() : 0;
    for (const auto& i : insts) d = std::max(d, tcd::depth(i.rhs));
    return d;
  }
  std::vector<OpInstance> insts_;
  GoalPtr outer_;
};

// Body of an arrow function with parameters `params` whose value must
// satisfy `outer`; the function itself admits no further extension.
class AnonBodyGoal final : public Goal {
 public:
  AnonBodyGoal(std::vector<Param> params, GoalPtr outer)
      : Goal(&outer->session(), outer->depth()), params_(std::move(params)), outer_(std::move(outer)) {
    key_ = "A[";
    for (const auto& p : params_) key_ += p.type.str() + ",";
    key_ += "](" + outer_->key() + ")";
  }
  bool accepts(const Type& t, Phase) const override {
    return outer_->reachable(Type::fun(params_, t), Phase::Closed);
  }

 private:
  std::vector<Param> params_;
  GoalPtr outer_;
};

struct NodeCtx {
  SessionPtr session;
  TypeEnv env;
  GoalPtr goal;
  bool operand = false;

  Phase base_phase() const { return operand ? Phase::Operand : Phase::Postfix; }
  bool ok(const Type& t, Phase ph) const { return !goal || goal->reachable(t, ph); }
};
using CtxPtr = std::shared_ptr<const NodeCtx>;

enum class Component { Leaf, Member, Call, Op, Group, Anon };
using Pending = std::shared_ptr<const std::vector<Type>>;

struct Extension {
  Automaton automaton;
  Component kind;
  Pending pending;
};

Automaton node_automaton(const CtxPtr& ctx);
std::vector<Extension> extensions(const CtxPtr& ctx, const Attrs& at);

bool prim_types_reachable(const Goal& g, const TypeEnv& env, Phase bp) {
  for (auto p : {Type::Prim::Number, Type::Prim::String, Type::Prim::Boolean}) {
    if (g.reachable(Type::prim(p), bp)) return true;
  }
  for (const auto& [name, t] : env.bindings()) {
    if (g.reachable(t, bp)) return true;
  }
  return false;
}

// Some base expression of a node with goal `g` can be completed.
bool satisfiable(const GoalPtr& g, const TypeEnv& env, Phase bp) {
  if (!g) return true;
  if (prim_types_reachable(*g, env, bp)) return true;
  auto target = g->anon_target();
  return target && g->accepts(*target, Phase::Closed);
}

constexpr int kCompletionNesting = 24;
thread_local int completion_nesting = 0;

class ExprState final : public State {
 public:
  ExprState(CtxPtr ctx, StatePtr inner, Component kind, Pending pending)
      : ctx_(std::move(ctx)), inner_(std::move(inner)), kind_(kind), pending_(std::move(pending)) {}

  void step(char32_t c, StateSet& out) const override {
    StateSet next;
    inner_->step(c, next);
    for (auto& r : next) out.push_back(std::make_shared<ExprState>(ctx_, std::move(r), kind_, pending_));
    if (!inner_->accepting()) return;
    if (!ext_) ext_ = extensions(ctx_, inner_->attrs());
    for (const auto& e : *ext_) {
      for (const auto& i : e.automaton.initial) {
        StateSet n2;
        i->step(c, n2);
        for (auto& r : n2) out.push_back(std::make_shared<ExprState>(ctx_, std::move(r), e.kind, e.pending));
      }
    }
  }

  bool accepting() const override {
    if (!inner_->accepting()) return false;
    const Attrs& a = inner_->attrs();
    return !ctx_->goal || ctx_->goal->accepts(*a.typ, phase_of(a));
  }

  const Attrs& attrs() const override { return inner_->attrs(); }

  std::optional<std::u32string> completion() const override {
    if (inner_->accepting()) return finish(inner_->attrs());
    // Groups can nest forever when no literal fits; give up and let the
    // caller search instead.
    if (completion_nesting >= kCompletionNesting) return std::nullopt;
    ++completion_nesting;
    struct Exit {
      ~Exit() { --completion_nesting; }
    } exit;
    auto first = inner_->completion();
    if (!first) return std::nullopt;
    for (const auto& r : accepting_after(inner_, *first)) {
      if (auto rest = finish(r->attrs())) return *first + *rest;
    }
    return std::nullopt;
  }

  void derivable(std::vector<Type>& out) const {
    if (inner_->accepting() || kind_ == Component::Leaf || kind_ == Component::Member) {
      if (const auto& t = inner_->attrs().typ) {
        out.push_back(*t);
        return;
      }
    }
    if (inner_->accepting()) return;
    if (pending_) out.insert(out.end(), pending_->begin(), pending_->end());
  }

 private:
  std::optional<std::u32string> finish(const Attrs& a) const {
    if (!ctx_->goal) return std::u32string();
    auto w = ctx_->goal->witness(*a.typ, phase_of(a), ctx_->env);
    if (!w) return std::nullopt;
    return from_utf8(*w);
  }

  CtxPtr ctx_;
  StatePtr inner_;
  Component kind_;
  Pending pending_;
  mutable std::optional<std::vector<Extension>> ext_;
};

Automaton wrap(const CtxPtr& ctx, const Automaton& a, Component kind, Pending pending) {
  Automaton out;
  for (const auto& i : a.initial) out.initial.push_back(std::make_shared<ExprState>(ctx, i, kind, pending));
  return out;
}

AttrsPtr expr_attrs(const Type& t, Phase ph, bool lvalue = false, std::string name = {}) {
  Attrs a;
  a.typ = t;
  a.phase = phase_tag(ph);
  a.lvalue = lvalue;
  a.name = std::move(name);
  return make_attrs(std::move(a));
}

CtxPtr child(const CtxPtr& parent, TypeEnv env, GoalPtr goal, bool operand) {
  return std::make_shared<const NodeCtx>(NodeCtx{parent->session, std::move(env), std::move(goal), operand});
}

TypeEnv with_params(const TypeEnv& env, const std::vector<Param>& ps) {
  TypeEnv out = env;
  for (const auto& p : ps) out = out.extended(p.name, p.type);
  return out;
}

Automaton anon_body(const CtxPtr& ctx, const std::vector<Param>& ps, GoalPtr body_goal) {
  auto body = child(ctx, with_params(ctx->env, ps), std::move(body_goal), false);
  return bind(node_automaton(body), [ps](const State& r) {
    return accept_with(expr_attrs(Type::fun(ps, *r.attrs().typ), Phase::Closed));
  });
}

Automaton anon_automaton(const CtxPtr& ctx) {
  const GoalPtr& goal = ctx->goal;
  ParamListSpec spec;
  spec.names = ctx->env;
  if (!goal) {
    spec.param_type = [](std::size_t) -> std::optional<Automaton> { return type_annotation_automaton(); };
    spec.may_close = [](std::size_t) { return true; };
    spec.after_close = [ctx](const std::vector<Param>& ps) {
      return bind(ws_terminal(U"=>"), [ctx, ps](const State&) { return anon_body(ctx, ps, nullptr); });
    };
    return param_list_automaton(std::move(spec));
  }
  if (auto target = goal->anon_target()) {
    if (!goal->accepts(*target, Phase::Closed)) return empty();
    auto expected = target->params();
    Type ret = target->ret();
    spec.param_type = [expected](std::size_t i) -> std::optional<Automaton> {
      if (i >= expected.size()) return std::nullopt;
      return exact_type_automaton(expected[i].type);
    };
    spec.may_close = [n = expected.size()](std::size_t i) { return i == n; };
    spec.after_close = [ctx, ret](const std::vector<Param>& ps) {
      return bind(ws_terminal(U"=>"), [ctx, ps, ret](const State&) {
        return anon_body(ctx, ps, exact_goal(*ctx->session, ret));
      });
    };
    return param_list_automaton(std::move(spec));
  }
  // Parameters are free; keep a parameter-list state only if its own
  // completion leads to a body that can satisfy the goal.
  spec.param_type = [](std::size_t) -> std::optional<Automaton> { return type_annotation_automaton(); };
  spec.may_close = [](std::size_t) { return true; };
  spec.after_close = [](const std::vector<Param>& ps) {
    return bind(ws_terminal(U"=>"), [ps](const State&) {
      Attrs a;
      a.params = ps;
      return accept_with(std::move(a));
    });
  };
  auto viable = [ctx](const std::vector<Param>& ps) {
    auto body_goal = std::make_shared<const AnonBodyGoal>(ps, ctx->goal);
    return satisfiable(body_goal, with_params(ctx->env, ps), Phase::Postfix);
  };
  auto keep = [viable](const State& q) {
    if (q.accepting()) return viable(q.attrs().params);
    auto c = q.completion();
    if (!c) return false;
    StateSet start{std::shared_ptr<const State>(std::shared_ptr<const State>(), &q)};
    for (const auto& r : accepting_after(start.front(), *c)) {
      if (viable(r->attrs().params)) return true;
    }
    return false;
  };
  auto sig = filter(param_list_automaton(std::move(spec)), keep);
  return bind(sig, [ctx](const State& q) {
    const auto& ps = q.attrs().params;
    return anon_body(ctx, ps, std::make_shared<const AnonBodyGoal>(ps, ctx->goal));
  });
}

Automaton node_automaton(const CtxPtr& ctx) {
  const Phase bp = ctx->base_phase();
  std::vector<Automaton> parts;

  std::vector<Automaton> lits;
  auto lit_types = std::make_shared<std::vector<Type>>();
  for (auto p : {Type::Prim::Number, Type::Prim::String, Type::Prim::Boolean}) {
    Type t = Type::prim(p);
    if (!ctx->ok(t, bp)) continue;
    lits.push_back(literal_automaton(p, expr_attrs(t, bp)));
    lit_types->push_back(t);
  }
  if (!lits.empty()) parts.push_back(wrap(ctx, ws_then(union_of(lits)), Component::Leaf, lit_types));

  std::vector<Automaton> ids;
  auto id_types = std::make_shared<std::vector<Type>>();
  for (const auto& [name, t] : ctx->env.bindings()) {
    if (!ctx->ok(t, bp)) continue;
    ids.push_back(word_automaton(name, expr_attrs(t, bp, !ctx->operand, name)));
    id_types->push_back(t);
  }
  if (!ids.empty()) parts.push_back(wrap(ctx, ws_then(union_of(ids)), Component::Leaf, id_types));

  GoalPtr inner_goal = ctx->goal ? std::make_shared<const GroupGoal>(ctx->goal, bp) : nullptr;
  if (satisfiable(inner_goal, ctx->env, Phase::Postfix)) {
    auto inner = child(ctx, ctx->env, inner_goal, false);
    auto group = bind(ws_terminal(U"("), [inner, bp](const State&) {
      return bind(node_automaton(inner), [bp](const State& r) {
        Type t = *r.attrs().typ;
        return bind(ws_terminal(U")"), [t, bp](const State&) { return accept_with(expr_attrs(t, bp)); });
      });
    });
    parts.push_back(wrap(ctx, group, Component::Group, nullptr));
  }

  parts.push_back(wrap(ctx, anon_automaton(ctx), Component::Anon, nullptr));
  return union_of(parts);
}

Automaton call_args(const CtxPtr& ctx, const Type& fn, std::size_t i, AttrsPtr result) {
  const auto& ps = fn.params();
  if (i == ps.size()) {
    return bind(ws_terminal(U")"), [result](const State&) { return accept_with(result); });
  }
  auto arg = child(ctx, ctx->env, exact_goal(*ctx->session, ps[i].type), false);
  return bind(node_automaton(arg), [ctx, fn, i, result](const State&) {
    if (i + 1 == fn.params().size()) return call_args(ctx, fn, i + 1, result);
    return bind(ws_terminal(U","), [ctx, fn, i, result](const State&) { return call_args(ctx, fn, i + 1, result); });
  });
}

std::vector<Extension> extensions(const CtxPtr& ctx, const Attrs& at) {
  std::vector<Extension> out;
  const Type t = *at.typ;
  const Phase ph = phase_of(at);
  if (ph == Phase::Closed) return out;
  const Tables& tables = ctx->session->tables();
  const bool postfix = ph == Phase::Postfix || ph == Phase::Operand;
  const Phase after = ph == Phase::Operand ? Phase::Operand : Phase::Postfix;

  if (postfix) {
    std::vector<Automaton> words;
    auto types = std::make_shared<std::vector<Type>>();
    for (const auto& [name, mt] : tables.lookup.members(t)) {
      if (!ctx->ok(mt, after)) continue;
      words.push_back(word_automaton(name, expr_attrs(mt, after)));
      types->push_back(mt);
    }
    if (!words.empty()) {
      auto member_names = ws_then(union_of(words));
      out.push_back({bind(ws_terminal(U"."), [member_names](const State&) { return member_names; }),
                     Component::Member, types});
    }
    if (t.is_fun() && ctx->ok(t.ret(), after)) {
      auto result = expr_attrs(t.ret(), after);
      out.push_back({bind(ws_terminal(U"("), [ctx, t, result](const State&) { return call_args(ctx, t, 0, result); }),
                     Component::Call, std::make_shared<std::vector<Type>>(std::vector<Type>{t.ret()})});
    }
  }

  if (ph == Phase::Postfix || ph == Phase::Binary) {
    auto instances = tables.ops_for(t);
    for (const auto& sym : tables.op_symbols()) {
      if (sym == kAssignOp && !at.lvalue) continue;
      std::vector<OpInstance> insts;
      auto results = std::make_shared<std::vector<Type>>();
      for (const auto& inst : instances) {
        if (inst.op != sym) continue;
        if (ctx->goal && !ctx->goal->reachable(inst.result, Phase::Binary)) continue;
        insts.push_back(inst);
        results->push_back(inst.result);
      }
      if (insts.empty()) continue;
      auto rhs_goal = std::make_shared<const RhsGoal>(*ctx->session, insts, ctx->goal);
      if (!satisfiable(rhs_goal, ctx->env, Phase::Operand)) continue;
      auto rhs = child(ctx, ctx->env, rhs_goal, true);
      auto automaton = bind(ws_terminal(from_utf8(sym)), [rhs, rhs_goal](const State&) {
        return bind(node_automaton(rhs), [rhs_goal](const State& r) {
          const Attrs& ra = r.attrs();
          for (const auto& inst : rhs_goal->insts()) {
            if (inst.rhs == *ra.typ) {
              Phase next = phase_of(ra) == Phase::Closed ? Phase::Closed : Phase::Binary;
              return accept_with(expr_attrs(inst.result, next));
            }
          }
          return empty();
        });
      });
      out.push_back({std::move(automaton), Component::Op, results});
    }
  }
  return out;
}

CtxPtr root_ctx(const TypeEnv& env, GoalPtr goal, SessionPtr session) {
  return std::make_shared<const NodeCtx>(NodeCtx{std::move(session), env, std::move(goal), false});
}

SessionPtr ensure(const SessionPtr& s) { return s ? s : make_session(); }

}  // namespace

GoalPtr exact_goal(ExprSession& session, const Type& t) { return std::make_shared<const ExactGoal>(session, t); }

Automaton expr_automaton_for(const TypeEnv& env, GoalPtr goal, const SessionPtr& session) {
  return node_automaton(root_ctx(env, std::move(goal), ensure(session)));
}

Automaton expr_automaton(const TypeEnv& env, const SessionPtr& session) {
  return expr_automaton_for(env, nullptr, ensure(session));
}

Automaton expr_automaton_constrained(const TypeEnv& env, const Type& goal, const SessionPtr& session) {
  auto s = ensure(session);
  return expr_automaton_for(env, exact_goal(*s, goal), s);
}

Automaton anon_fn_automaton(const TypeEnv& env, const std::optional<Type>& constraint, const SessionPtr& session) {
  auto s = ensure(session);
  auto ctx = root_ctx(env, constraint ? exact_goal(*s, *constraint) : nullptr, s);
  return wrap(ctx, anon_automaton(ctx), Component::Anon, nullptr);
}

std::vector<Type> derivable(const StateSet& states) {
  std::vector<Type> out;
  for (const auto& q : states) {
    if (auto* e = dynamic_cast<const ExprState*>(q.get())) e->derivable(out);
  }
  std::set<Type> seen;
  std::vector<Type> unique;
  for (auto& t : out) {
    if (seen.insert(t).second) unique.push_back(t);
  }
  return unique;
}

bool reachable_from_partial(const TypeEnv& env, std::string_view prefix, const Type& goal, const SessionPtr& session) {
  return !traverse(expr_automaton_constrained(env, goal, session).initial, from_utf8(prefix)).empty();
}

}  // namespace tcd
