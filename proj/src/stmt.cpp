#include "tcd/stmt.hpp"

#include "tcd/lexical.hpp"
#include "tcd/parser.hpp"

namespace tcd {

namespace {

bool boundary(char32_t c) { return !is_ident_char(c); }

/// Keyword followed by something that cannot continue the word.
Automaton keyword_then(std::u32string_view kw, Continuation next) {
  return bind(ws_terminal(kw), [next](const State& q) {
    Automaton rest = next(q);
    return guard(boundary, rest);
  });
}

Attrs with_env(const Attrs& at, TypeEnv env) {
  Attrs out = at;
  out.env = std::move(env);
  return out;
}

Attrs nested(const Attrs& at) {
  Attrs out;
  out.env = at.env;
  out.ret_type = at.ret_type;
  return out;
}

Attrs after_stmt(const Attrs& prev, const Attrs& inner) {
  Attrs out = prev;
  out.returned = prev.returned || inner.returned;
  if (prev.must_return) out.must_return = !out.returned;
  return out;
}

Automaton then_semicolon(const Attrs& result) {
  auto r = make_attrs(result);
  return bind(ws_terminal(U";"), [r](const State&) { return accept_with(r); });
}

Automaton decl(const Attrs& at) {
  return keyword_then(U"let", [at](const State&) {
    return bind(ws_then(fresh_identifier_automaton(at.env)), [at](const State& n) {
      std::string name = n.attrs().name;
      return bind(ws_terminal(U":"), [at, name](const State&) {
        return bind(type_annotation_automaton(), [at, name](const State& t) {
          return then_semicolon(with_env(at, at.env.extended(name, *t.attrs().typ)));
        });
      });
    });
  });
}

Automaton expr_stmt(const Attrs& at, const SessionPtr& session) {
  return bind(expr_automaton_for(at.env, nullptr, session), [at](const State&) { return then_semicolon(at); });
}

Automaton ret(const Attrs& at, const SessionPtr& session) {
  if (!at.ret_type) return empty();
  return keyword_then(U"return", [at, session](const State&) {
    return bind(expr_automaton_for(at.env, exact_goal(*session, *at.ret_type), session), [at](const State&) {
      Attrs out = at;
      out.returned = true;
      out.must_return = false;
      return then_semicolon(out);
    });
  });
}

Automaton statements(const Attrs& seed, const SessionPtr& session) {
  return repeat(
      make_attrs(seed), [session](const Attrs& a) { return statement_automaton(a, session); },
      [](const Attrs& a) { return a.returned || !a.must_return; });
}

Automaton block(const Attrs& at, const SessionPtr& session) {
  return bind(ws_terminal(U"{"), [at, session](const State&) {
    return bind(statements(nested(at), session), [at](const State& q) {
      Attrs out = after_stmt(at, q.attrs());
      return bind(ws_terminal(U"}"), [out](const State&) { return accept_with(out); });
    });
  });
}

Automaton ite(const Attrs& at, const SessionPtr& session) {
  auto cond = expr_automaton_for(at.env, exact_goal(*session, Type::boolean()), session);
  return bind(ws_terminal(U"if"), [at, session, cond](const State&) {
    return bind(ws_terminal(U"("), [at, session, cond](const State&) {
      return bind(cond, [at, session](const State&) {
        return bind(ws_terminal(U")"), [at, session](const State&) {
          return bind(statement_automaton(nested(at), session), [at, session](const State& t) {
            bool then_returned = t.attrs().returned;
            return keyword_then(U"else", [at, session, then_returned](const State&) {
              return bind(statement_automaton(nested(at), session), [at, then_returned](const State& e) {
                Attrs both;
                both.returned = then_returned && e.attrs().returned;
                return accept_with(after_stmt(at, both));
              });
            });
          });
        });
      });
    });
  });
}

Automaton fun_def(const Attrs& at, const SessionPtr& session) {
  return keyword_then(U"function", [at, session](const State&) {
    return bind(ws_then(fresh_identifier_automaton(at.env)), [at, session](const State& n) {
      std::string name = n.attrs().name;
      ParamListSpec spec;
      spec.names = at.env;
      spec.param_type = [](std::size_t) -> std::optional<Automaton> { return type_annotation_automaton(); };
      spec.may_close = [](std::size_t) { return true; };
      spec.after_close = [at, session, name](const std::vector<Param>& ps) {
        return bind(ws_terminal(U":"), [at, session, name, ps](const State&) {
          return bind(type_annotation_automaton(), [at, session, name, ps](const State& r) {
            Type rt = *r.attrs().typ;
            Attrs body;
            body.env = at.env;
            for (const auto& p : ps) body.env = body.env.extended(p.name, p.type);
            body.ret_type = rt;
            body.must_return = true;
            Attrs out = with_env(at, at.env.extended(name, Type::fun(ps, rt)));
            return bind(ws_terminal(U"{"), [body, session, out](const State&) {
              return bind(statements(body, session), [out](const State& q) {
                if (!q.attrs().returned) return empty();
                return bind(ws_terminal(U"}"), [out](const State&) { return accept_with(out); });
              });
            });
          });
        });
      };
      return param_list_automaton(std::move(spec));
    });
  });
}

SessionPtr ensure(const SessionPtr& s) { return s ? s : make_session(); }

Attrs start(const TypeEnv& env, const std::optional<Type>& ret_ctx) {
  Attrs a;
  a.env = env;
  a.ret_type = ret_ctx;
  return a;
}

}  // namespace

Automaton statement_automaton(const Attrs& at, const SessionPtr& session) {
  return union_of({decl(at), expr_stmt(at, session), ret(at, session), block(at, session), ite(at, session),
                   fun_def(at, session)});
}

Automaton stmt_automaton(const TypeEnv& env, const std::optional<Type>& ret_ctx, const SessionPtr& session) {
  return statement_automaton(start(env, ret_ctx), ensure(session));
}

Automaton return_automaton(const TypeEnv& env, const std::optional<Type>& ret_ctx, const SessionPtr& session) {
  return ret(start(env, ret_ctx), ensure(session));
}

Automaton fun_automaton(const TypeEnv& env, const SessionPtr& session) {
  return fun_def(start(env, std::nullopt), ensure(session));
}

Automaton program_automaton(const TypeEnv& globals, const SessionPtr& session) {
  auto s = ensure(session);
  return bind(statements(start(globals, std::nullopt), s), [](const State& q) {
    return ws_then(accept_with(make_attrs(q.attrs())));
  });
}

}  // namespace tcd
