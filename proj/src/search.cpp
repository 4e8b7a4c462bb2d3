#include "tcd/search.hpp"

#include "tcd/parser.hpp"

namespace tcd {

std::string_view phase_name(Phase p) {
  switch (p) {
    case Phase::Postfix: return "postfix";
    case Phase::Binary: return "binary";
    case Phase::Operand: return "operand";
    case Phase::Closed: return "closed";
  }
  return "?";
}

std::string_view step_kind_name(TypeGraphStep::Kind k) {
  switch (k) {
    case TypeGraphStep::Kind::Member: return "member-access";
    case TypeGraphStep::Kind::Operator: return "operator";
    case TypeGraphStep::Kind::Call: return "call";
  }
  return "?";
}

std::vector<TypeGraphStep> extension_steps(const Type& t, Phase phase, const Tables& tables) {
  std::vector<TypeGraphStep> out;
  if (phase == Phase::Closed) return out;
  bool postfix = phase == Phase::Postfix || phase == Phase::Operand;
  Phase after_postfix = phase == Phase::Operand ? Phase::Operand : Phase::Postfix;
  if (postfix) {
    for (auto& [name, type] : tables.lookup.members(t)) {
      out.push_back({TypeGraphStep::Kind::Member, name, t, type, std::nullopt, after_postfix});
    }
  }
  if (phase == Phase::Postfix || phase == Phase::Binary) {
    for (auto& inst : tables.ops_for(t)) {
      if (inst.op == kAssignOp) continue;
      out.push_back({TypeGraphStep::Kind::Operator, inst.op, t, inst.result, inst.rhs, Phase::Binary});
    }
  }
  if (postfix && t.is_fun()) {
    out.push_back({TypeGraphStep::Kind::Call, "()", t, t.ret(), std::nullopt, after_postfix});
  }
  return out;
}

bool prune_search(const Type& current, int goal_depth, const Type& candidate, const std::set<Type>& explored_roots) {
  return depth(candidate) > std::max(goal_depth, depth(current)) && explored_roots.count(root(candidate)) > 0;
}

bool prune_search(const Type& current, const Type& goal, const Type& candidate, const SearchContext& ctx) {
  return prune_search(current, depth(goal), candidate, ctx.explored_roots);
}

std::string LiteralRenderer::fresh() {
  for (;;) {
    std::string name = "p" + std::to_string(counter_++);
    if (!env_.contains(name)) return name;
  }
}

std::string LiteralRenderer::literal(const Type& t) {
  if (t.is_prim()) {
    switch (t.prim_kind()) {
      case Type::Prim::Number: return "0";
      case Type::Prim::String: return "\"\"";
      case Type::Prim::Boolean: return "true";
    }
  }
  std::string out = "((";
  for (std::size_t i = 0; i < t.params().size(); ++i) {
    if (i) out += ", ";
    out += fresh() + ": " + t.params()[i].type.str();
  }
  return out + ") => " + literal(t.ret()) + ")";
}

std::string LiteralRenderer::step(const TypeGraphStep& s) {
  switch (s.kind) {
    case TypeGraphStep::Kind::Member: return "." + s.label;
    case TypeGraphStep::Kind::Operator: return " " + s.label + " " + literal(*s.operand);
    case TypeGraphStep::Kind::Call: {
      std::string out = "(";
      for (std::size_t i = 0; i < s.from.params().size(); ++i) {
        if (i) out += ", ";
        out += literal(s.from.params()[i].type);
      }
      return out + ")";
    }
  }
  return {};
}

namespace {

std::optional<std::string> dfs(const Type& t, Phase phase, SearchContext& ctx, const FoundFn& found,
                               LiteralRenderer& render) {
  if (ctx.trace) *ctx.trace << "visit " << t.str() << "\n";
  if (auto done = found(t, phase)) return done;
  ctx.visited.insert({t, phase});
  ctx.explored_roots.insert(root(t));
  for (const auto& s : extension_steps(t, phase, *ctx.tables)) {
    if (ctx.visited.count({s.to, s.next})) continue;
    if (prune_search(t, ctx.goal_depth, s.to, ctx.explored_roots)) {
      if (ctx.trace) *ctx.trace << "prune " << s.to.str() << "\n";
      continue;
    }
    if (ctx.trace) *ctx.trace << "edge " << step_kind_name(s.kind) << " " << s.label << " -> " << s.to.str() << "\n";
    if (auto rest = dfs(s.to, s.next, ctx, found, render)) return render.step(s) + *rest;
  }
  return std::nullopt;
}

FoundFn equals(const Type& goal) {
  return [goal](const Type& t, Phase) -> std::optional<std::string> {
    if (t == goal) return std::string();
    return std::nullopt;
  };
}

}  // namespace

std::optional<std::string> search(const Type& from, Phase phase, SearchContext& ctx, const FoundFn& found,
                                  LiteralRenderer& render) {
  return dfs(from, phase, ctx, found, render);
}

bool reachable(const Type& current, const Type& goal, SearchContext& ctx) {
  LiteralRenderer render;
  return search(current, Phase::Postfix, ctx, equals(goal), render).has_value();
}

bool reachable(const Type& current, const Type& goal, const Tables& tables) {
  SearchContext ctx(tables, goal);
  return reachable(current, goal, ctx);
}

std::string reachable_witness(const Type& current, const Type& goal, const Tables& tables, const TypeEnv& env) {
  SearchContext ctx(tables, goal);
  LiteralRenderer render(env);
  auto w = search(current, Phase::Postfix, ctx, equals(goal), render);
  if (!w) throw WitnessUnavailable(goal.str() + " is not reachable from " + current.str());
  return *w;
}

bool TypeSearch::reachable(const Type& from, Phase phase, const Type& goal) {
  auto key = std::make_tuple(from, phase, goal);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  SearchContext ctx(tables_, goal);
  LiteralRenderer render;
  bool ok = search(from, phase, ctx, equals(goal), render).has_value();
  memo_.emplace(std::move(key), ok);
  return ok;
}

std::optional<std::string> TypeSearch::witness(const Type& from, Phase phase, const Type& goal, const TypeEnv& env) {
  if (!reachable(from, phase, goal)) return std::nullopt;
  SearchContext ctx(tables_, goal);
  LiteralRenderer render(env);
  return search(from, phase, ctx, equals(goal), render);
}

}  // namespace tcd
