#include "tcd/lexical.hpp"

#include <deque>

#include "tcd/parser.hpp"
#include "tcd/utf8.hpp"

namespace tcd {

Dfa::Dfa(int states, std::vector<Edge> edges, std::vector<int> accepting)
    : edges_(std::move(edges)), accepting_(states, false), live_(states, false), completion_(states) {
  std::deque<int> work;
  for (int a : accepting) {
    accepting_[a] = true;
    live_[a] = true;
    work.push_back(a);
  }
  // Backwards breadth-first search: shortest completions and co-reachability.
  while (!work.empty()) {
    int to = work.front();
    work.pop_front();
    for (const auto& e : edges_) {
      if (e.to != to || live_[e.from]) continue;
      live_[e.from] = true;
      completion_[e.from] = e.sample + completion_[to];
      work.push_back(e.from);
    }
  }
  std::erase_if(edges_, [&](const Edge& e) { return !live_[e.from] || !live_[e.to]; });
}

int Dfa::next(int state, char32_t c) const {
  if (state < 0) return kDead;
  for (const auto& e : edges_) {
    if (e.from == state && e.cls(c)) return e.to;
  }
  return kDead;
}

namespace {

bool digit(char32_t c) { return c >= U'0' && c <= U'9'; }
Dfa::CharClass one_of(std::u32string_view set) {
  std::u32string s(set);
  return [s](char32_t c) { return s.find(c) != std::u32string::npos; };
}

Dfa build_number() {
  // 0 start, 1 int, 2 dot, 3 frac, 4 exp mark, 5 exp sign, 6 exp digits
  return Dfa(7,
             {{0, digit, U'0', 1},
              {1, digit, U'0', 1},
              {1, one_of(U"."), U'.', 2},
              {1, one_of(U"eE"), U'e', 4},
              {2, digit, U'0', 3},
              {3, digit, U'0', 3},
              {3, one_of(U"eE"), U'e', 4},
              {4, one_of(U"+-"), U'+', 5},
              {4, digit, U'0', 6},
              {5, digit, U'0', 6},
              {6, digit, U'0', 6}},
             {1, 3, 6});
}

Dfa build_string() {
  // 0 start, 1 body, 2 after backslash, 3 closed
  auto plain = [](char32_t c) { return c != U'"' && c != U'\\' && c != U'\n'; };
  return Dfa(4,
             {{0, one_of(U"\""), U'"', 1},
              {1, plain, U'a', 1},
              {1, one_of(U"\\"), U'\\', 2},
              {2, one_of(U"\\\"nt"), U'n', 1},
              {1, one_of(U"\""), U'"', 3}},
             {3});
}

Dfa build_boolean() {
  std::vector<Dfa::Edge> edges;
  int next = 1;
  std::vector<int> accepting;
  for (std::u32string_view word : {std::u32string_view(U"true"), std::u32string_view(U"false")}) {
    int from = 0;
    for (char32_t c : word) {
      edges.push_back({from, one_of(std::u32string(1, c)), c, next});
      from = next++;
    }
    accepting.push_back(from);
  }
  return Dfa(next, std::move(edges), std::move(accepting));
}

class LiteralState final : public State {
 public:
  LiteralState(const Dfa* dfa, int state, AttrsPtr attrs) : dfa_(dfa), state_(state), attrs_(std::move(attrs)) {}

  void step(char32_t c, StateSet& out) const override {
    int n = dfa_->next(state_, c);
    if (dfa_->live(n)) out.push_back(std::make_shared<LiteralState>(dfa_, n, attrs_));
  }
  bool accepting() const override { return dfa_->accepting(state_); }
  const Attrs& attrs() const override { return *attrs_; }
  std::optional<std::u32string> completion() const override { return dfa_->completion(state_); }

 private:
  const Dfa* dfa_;
  int state_;
  AttrsPtr attrs_;
};

class WordState final : public State {
 public:
  WordState(std::shared_ptr<const std::u32string> word, std::size_t pos, AttrsPtr attrs)
      : word_(std::move(word)), pos_(pos), attrs_(std::move(attrs)) {}

  void step(char32_t c, StateSet& out) const override {
    if (pos_ < word_->size() && (*word_)[pos_] == c) out.push_back(std::make_shared<WordState>(word_, pos_ + 1, attrs_));
  }
  bool accepting() const override { return pos_ == word_->size(); }
  const Attrs& attrs() const override { return *attrs_; }
  std::optional<std::u32string> completion() const override { return word_->substr(pos_); }

 private:
  std::shared_ptr<const std::u32string> word_;
  std::size_t pos_;
  AttrsPtr attrs_;
};

class FreshState final : public State {
 public:
  FreshState(TypeEnv env, std::string text) : env_(std::move(env)), text_(std::move(text)) {
    Attrs a;
    a.name = text_;
    attrs_ = make_attrs(std::move(a));
  }

  void step(char32_t c, StateSet& out) const override {
    if (c >= 0x80) return;
    bool ok = text_.empty() ? is_ident_start(c) : is_ident_char(c);
    if (ok) out.push_back(std::make_shared<FreshState>(env_, text_ + static_cast<char>(c)));
  }
  bool accepting() const override { return ok(text_); }
  const Attrs& attrs() const override { return *attrs_; }
  std::optional<std::u32string> completion() const override {
    std::string head = text_.empty() ? "x" : "";
    if (ok(text_ + head)) return from_utf8(head);
    for (int i = 0;; ++i) {
      std::string tail = head + "_" + std::to_string(i);
      if (ok(text_ + tail)) return from_utf8(tail);
    }
  }

 private:
  bool ok(const std::string& t) const { return !t.empty() && !is_reserved(t) && !env_.contains(t); }

  TypeEnv env_;
  std::string text_;
  AttrsPtr attrs_;
};

AttrsPtr typed(const Type& t) {
  Attrs a;
  a.typ = t;
  return make_attrs(std::move(a));
}

Automaton prim_annotation(Type::Prim p) {
  auto word = std::make_shared<const std::u32string>(from_utf8(prim_name(p)));
  return ws_then(Automaton{{std::make_shared<WordState>(word, 0, typed(Type::prim(p)))}});
}

Automaton param_list_after_open(std::shared_ptr<const ParamListSpec> spec, std::vector<Param> ps);

Automaton param_list_close(std::shared_ptr<const ParamListSpec> spec, std::vector<Param> ps) {
  return bind(ws_terminal(U")"), [spec, ps](const State&) { return spec->after_close(ps); });
}

Automaton param_list_param(std::shared_ptr<const ParamListSpec> spec, std::vector<Param> ps) {
  auto ty = spec->param_type(ps.size());
  if (!ty) return empty();
  Automaton param_ty = *ty;
  TypeEnv taken = spec->names;
  for (const auto& p : ps) {
    if (!taken.contains(p.name)) taken = taken.extended(p.name, p.type);
  }
  return bind(ws_then(fresh_identifier_automaton(taken)), [spec, ps, param_ty](const State& q) {
    std::string name = q.attrs().name;
    return bind(ws_terminal(U":"), [spec, ps, param_ty, name](const State&) {
      return bind(param_ty, [spec, ps, name](const State& t) {
        auto next = ps;
        next.push_back({name, *t.attrs().typ});
        Automaton close = spec->may_close(next.size()) ? param_list_close(spec, next) : empty();
        if (!spec->param_type(next.size())) return close;
        auto more = bind(ws_terminal(U","), [spec, next](const State&) { return param_list_param(spec, next); });
        return union_of(close, more);
      });
    });
  });
}

Automaton param_list_after_open(std::shared_ptr<const ParamListSpec> spec, std::vector<Param> ps) {
  Automaton out = param_list_param(spec, ps);
  if (spec->may_close(0)) out = union_of(param_list_close(spec, ps), out);
  return out;
}

Automaton arrow_then(std::function<Automaton(const std::vector<Param>&)> after_arrow, const std::vector<Param>& ps) {
  return bind(ws_terminal(U"=>"), [after_arrow, ps](const State&) { return after_arrow(ps); });
}

}  // namespace

Automaton param_list_automaton(ParamListSpec spec) {
  auto sp = std::make_shared<const ParamListSpec>(std::move(spec));
  return bind(ws_terminal(U"("), [sp](const State&) { return param_list_after_open(sp, {}); });
}

const Dfa& number_dfa() {
  static const Dfa d = build_number();
  return d;
}
const Dfa& string_dfa() {
  static const Dfa d = build_string();
  return d;
}
const Dfa& boolean_dfa() {
  static const Dfa d = build_boolean();
  return d;
}

const Dfa& literal_dfa(Type::Prim kind) {
  switch (kind) {
    case Type::Prim::Number: return number_dfa();
    case Type::Prim::String: return string_dfa();
    case Type::Prim::Boolean: return boolean_dfa();
  }
  return number_dfa();
}

Automaton literal_automaton(Type::Prim kind, AttrsPtr attrs) {
  const Dfa& d = literal_dfa(kind);
  if (d.start() == Dfa::kDead) return empty();
  return Automaton{{std::make_shared<LiteralState>(&d, d.start(), std::move(attrs))}};
}

Automaton literal_automaton(Type::Prim kind) { return literal_automaton(kind, typed(Type::prim(kind))); }

Automaton word_automaton(std::string_view word, AttrsPtr attrs) {
  auto w = std::make_shared<const std::u32string>(from_utf8(word));
  return Automaton{{std::make_shared<WordState>(w, 0, std::move(attrs))}};
}

Automaton literal_automaton() {
  return union_of({literal_automaton(Type::Prim::Number), literal_automaton(Type::Prim::String),
                   literal_automaton(Type::Prim::Boolean)});
}

bool pmatch(std::u32string_view prefix, const Type& t) {
  if (!t.is_prim()) return false;
  const Dfa& d = literal_dfa(t.prim_kind());
  int s = d.start();
  for (char32_t c : prefix) s = d.next(s, c);
  return d.live(s);
}

bool pmatch(std::string_view prefix, const Type& t) { return pmatch(from_utf8(prefix), t); }

Automaton identifier_automaton(const TypeEnv& env) {
  Automaton out;
  for (const auto& [name, type] : env.bindings()) {
    Attrs a;
    a.typ = type;
    a.name = name;
    auto word = std::make_shared<const std::u32string>(from_utf8(name));
    out.initial.push_back(std::make_shared<WordState>(word, 0, make_attrs(std::move(a))));
  }
  return out;
}

Automaton fresh_identifier_automaton(const TypeEnv& env) {
  return Automaton{{std::make_shared<FreshState>(env, std::string())}};
}

Automaton type_annotation_automaton() {
  ParamListSpec spec;
  spec.param_type = [](std::size_t) -> std::optional<Automaton> { return type_annotation_automaton(); };
  spec.may_close = [](std::size_t) { return true; };
  spec.after_close = [](const std::vector<Param>& ps) {
    return arrow_then(
        [](const std::vector<Param>& ps) {
          return bind(type_annotation_automaton(), [ps](const State& r) {
            Attrs a;
            a.typ = Type::fun(ps, *r.attrs().typ);
            return accept_with(std::move(a));
          });
        },
        ps);
  };
  return union_of({prim_annotation(Type::Prim::Number), prim_annotation(Type::Prim::String),
                   prim_annotation(Type::Prim::Boolean), param_list_automaton(std::move(spec))});
}

Automaton exact_type_automaton(const Type& t) {
  if (t.is_prim()) return prim_annotation(t.prim_kind());
  if (!t.is_fun()) return empty();
  ParamListSpec spec;
  auto expected = t.params();
  Type ret = t.ret();
  spec.param_type = [expected](std::size_t i) -> std::optional<Automaton> {
    if (i >= expected.size()) return std::nullopt;
    return exact_type_automaton(expected[i].type);
  };
  spec.may_close = [n = expected.size()](std::size_t i) { return i == n; };
  spec.after_close = [ret](const std::vector<Param>& ps) {
    return arrow_then(
        [ret](const std::vector<Param>& ps) {
          return bind(exact_type_automaton(ret), [ps](const State& r) {
            Attrs a;
            a.typ = Type::fun(ps, *r.attrs().typ);
            return accept_with(std::move(a));
          });
        },
        ps);
  };
  return param_list_automaton(std::move(spec));
}

}  // namespace tcd
