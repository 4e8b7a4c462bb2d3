#include "tcd/automaton.hpp"

#include <deque>

#include "tcd/utf8.hpp"

namespace tcd {

const Attrs& empty_attrs() {
  static const Attrs kEmpty;
  return kEmpty;
}

AttrsPtr make_attrs(Attrs a) { return std::make_shared<const Attrs>(std::move(a)); }

bool is_ws(char32_t c) { return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r'; }

StateSet step_all(const StateSet& from, char32_t c) {
  StateSet out;
  for (const auto& q : from) q->step(c, out);
  return out;
}

StateSet traverse(const StateSet& start, std::u32string_view s) {
  StateSet cur = start;
  for (char32_t c : s) {
    if (cur.empty()) break;
    cur = step_all(cur, c);
  }
  return cur;
}

StateSet traverse(const Automaton&, const StateSet& start, std::u32string_view s) { return traverse(start, s); }

StateSet traverse(const Automaton&, const StateSet& start, std::string_view utf8) {
  return traverse(start, from_utf8(utf8));
}

bool any_accepting(const StateSet& states) {
  for (const auto& q : states) {
    if (q->accepting()) return true;
  }
  return false;
}

StateSet accepting_after(const StatePtr& q, std::u32string_view s) {
  StateSet out;
  for (auto& r : traverse(StateSet{q}, s)) {
    if (r->accepting()) out.push_back(std::move(r));
  }
  return out;
}

StateSet Automaton::step(const StateSet& from, char32_t c) const { return step_all(from, c); }

bool Automaton::accepts(std::u32string_view s) const { return any_accepting(traverse(initial, s)); }
bool Automaton::accepts(std::string_view utf8) const { return accepts(from_utf8(utf8)); }
bool Automaton::live(std::u32string_view s) const { return !traverse(initial, s).empty(); }
bool Automaton::live(std::string_view utf8) const { return live(from_utf8(utf8)); }

namespace {

class AcceptState final : public State {
 public:
  explicit AcceptState(AttrsPtr attrs) : attrs_(std::move(attrs)) {}
  void step(char32_t, StateSet&) const override {}
  bool accepting() const override { return true; }
  const Attrs& attrs() const override { return attrs_ ? *attrs_ : empty_attrs(); }
  std::optional<std::u32string> completion() const override { return std::u32string(); }

 private:
  AttrsPtr attrs_;
};

class TermState final : public State {
 public:
  TermState(std::shared_ptr<const std::u32string> word, std::size_t pos, bool leading_ws)
      : word_(std::move(word)), pos_(pos), leading_ws_(leading_ws) {}

  void step(char32_t c, StateSet& out) const override {
    if (leading_ws_ && is_ws(c)) out.push_back(std::make_shared<TermState>(word_, pos_, true));
    if (pos_ < word_->size() && (*word_)[pos_] == c) out.push_back(std::make_shared<TermState>(word_, pos_ + 1, false));
  }
  bool accepting() const override { return pos_ == word_->size(); }
  std::optional<std::u32string> completion() const override { return word_->substr(pos_); }

 private:
  std::shared_ptr<const std::u32string> word_;
  std::size_t pos_;
  bool leading_ws_;
};

struct BindCtx {
  Continuation next;
};

class ConcatState final : public State {
 public:
  ConcatState(StatePtr inner, std::shared_ptr<const BindCtx> ctx) : inner_(std::move(inner)), ctx_(std::move(ctx)) {}

  static void emit(const StatePtr& r, const std::shared_ptr<const BindCtx>& ctx, StateSet& out) {
    out.push_back(std::make_shared<ConcatState>(r, ctx));
    if (r->accepting()) {
      Automaton y = ctx->next(*r);
      out.insert(out.end(), y.initial.begin(), y.initial.end());
    }
  }

  void step(char32_t c, StateSet& out) const override {
    StateSet next;
    inner_->step(c, next);
    for (const auto& r : next) emit(r, ctx_, out);
  }
  bool accepting() const override { return false; }
  const Attrs& attrs() const override { return inner_->attrs(); }

  std::optional<std::u32string> completion() const override {
    auto first = inner_->completion();
    if (!first) return std::nullopt;
    for (const auto& r : accepting_after(inner_, *first)) {
      for (const auto& y : ctx_->next(*r).initial) {
        if (y->accepting()) return first;
        if (auto rest = y->completion()) return *first + *rest;
      }
    }
    return std::nullopt;
  }

 private:
  StatePtr inner_;
  std::shared_ptr<const BindCtx> ctx_;
};

class StarStart final : public State {
 public:
  void step(char32_t, StateSet&) const override {}
  bool accepting() const override { return true; }
  std::optional<std::u32string> completion() const override { return std::u32string(); }
};

class StarState final : public State {
 public:
  StarState(StatePtr inner, std::shared_ptr<const Automaton> body) : inner_(std::move(inner)), body_(std::move(body)) {}

  void step(char32_t c, StateSet& out) const override {
    StateSet next;
    inner_->step(c, next);
    for (const auto& r : next) {
      out.push_back(std::make_shared<StarState>(r, body_));
      if (r->accepting()) {
        for (const auto& i : body_->initial) out.push_back(std::make_shared<StarState>(i, body_));
      }
    }
  }
  bool accepting() const override { return inner_->accepting(); }
  const Attrs& attrs() const override { return inner_->attrs(); }
  std::optional<std::u32string> completion() const override { return inner_->completion(); }

 private:
  StatePtr inner_;
  std::shared_ptr<const Automaton> body_;
};

constexpr int kRepeatCompletionNesting = 4;

struct RepeatCtx {
  AttrsFn body;
  AttrsPred done;
};

// Extends `prefix` (already leading to states `reached`) by one more
// iteration when none of the reached states satisfies `done`.
std::optional<std::u32string> finish_repeat(const RepeatCtx& ctx, const std::u32string& prefix,
                                            const std::vector<const Attrs*>& reached) {
  if (!ctx.done) return prefix;
  for (const Attrs* a : reached) {
    if (ctx.done(*a)) return prefix;
  }
  // Nested repeats whose `done` is unreachable would recurse forever.
  thread_local int nesting = 0;
  if (nesting >= kRepeatCompletionNesting) return reached.empty() ? std::nullopt : std::optional<std::u32string>(prefix);
  ++nesting;
  struct Leave {
    ~Leave() { --nesting; }
  } leave;
  for (const Attrs* a : reached) {
    for (const auto& y : ctx.body(*a).initial) {
      auto rest = y->completion();
      if (!rest) continue;
      for (const auto& r : accepting_after(y, *rest)) {
        if (ctx.done(r->attrs())) return prefix + *rest;
      }
    }
  }
  return reached.empty() ? std::nullopt : std::optional<std::u32string>(prefix);
}

class RepeatState final : public State {
 public:
  RepeatState(StatePtr inner, std::shared_ptr<const RepeatCtx> ctx) : inner_(std::move(inner)), ctx_(std::move(ctx)) {}

  void step(char32_t c, StateSet& out) const override {
    StateSet next;
    inner_->step(c, next);
    for (const auto& r : next) {
      out.push_back(std::make_shared<RepeatState>(r, ctx_));
      if (r->accepting()) {
        for (const auto& i : ctx_->body(r->attrs()).initial) out.push_back(std::make_shared<RepeatState>(i, ctx_));
      }
    }
  }
  bool accepting() const override { return inner_->accepting(); }
  const Attrs& attrs() const override { return inner_->attrs(); }

  std::optional<std::u32string> completion() const override {
    auto first = inner_->completion();
    if (!first) return std::nullopt;
    std::vector<const Attrs*> reached;
    auto finals = accepting_after(inner_, *first);
    for (const auto& r : finals) reached.push_back(&r->attrs());
    return finish_repeat(*ctx_, *first, reached);
  }

 private:
  StatePtr inner_;
  std::shared_ptr<const RepeatCtx> ctx_;
};

class RepeatSeed final : public State {
 public:
  RepeatSeed(AttrsPtr seed, std::shared_ptr<const RepeatCtx> ctx) : seed_(std::move(seed)), ctx_(std::move(ctx)) {}
  void step(char32_t, StateSet&) const override {}
  bool accepting() const override { return true; }
  const Attrs& attrs() const override { return *seed_; }
  std::optional<std::u32string> completion() const override {
    return finish_repeat(*ctx_, std::u32string(), {seed_.get()});
  }

 private:
  AttrsPtr seed_;
  std::shared_ptr<const RepeatCtx> ctx_;
};

class GuardState final : public State {
 public:
  GuardState(StatePtr inner, std::shared_ptr<const std::function<bool(char32_t)>> pred)
      : inner_(std::move(inner)), pred_(std::move(pred)) {}

  void step(char32_t c, StateSet& out) const override {
    if ((*pred_)(c)) inner_->step(c, out);
  }
  bool accepting() const override { return inner_->accepting(); }
  const Attrs& attrs() const override { return inner_->attrs(); }

  std::optional<std::u32string> completion() const override {
    auto c = inner_->completion();
    if (c && (c->empty() || (*pred_)((*c)[0]))) return c;
    // Typically a keyword boundary: separate with a space.
    if (!(*pred_)(U' ')) return std::nullopt;
    StateSet next;
    inner_->step(U' ', next);
    for (const auto& q : next) {
      if (auto rest = q->completion()) return U" " + *rest;
    }
    return std::nullopt;
  }

 private:
  StatePtr inner_;
  std::shared_ptr<const std::function<bool(char32_t)>> pred_;
};

class WsThenState final : public State {
 public:
  explicit WsThenState(std::shared_ptr<const Automaton> inner) : inner_(std::move(inner)) {}
  void step(char32_t c, StateSet& out) const override {
    if (is_ws(c)) out.push_back(std::make_shared<WsThenState>(inner_));
    for (const auto& i : inner_->initial) i->step(c, out);
  }
  bool accepting() const override { return any_accepting(inner_->initial); }
  const Attrs& attrs() const override {
    for (const auto& i : inner_->initial) {
      if (i->accepting()) return i->attrs();
    }
    return empty_attrs();
  }
  std::optional<std::u32string> completion() const override {
    for (const auto& i : inner_->initial) {
      if (auto c = i->completion()) return c;
    }
    return std::nullopt;
  }

 private:
  std::shared_ptr<const Automaton> inner_;
};

class FilterState final : public State {
 public:
  FilterState(StatePtr inner, std::shared_ptr<const StatePred> pred) : inner_(std::move(inner)), pred_(std::move(pred)) {}
  void step(char32_t c, StateSet& out) const override {
    StateSet next;
    inner_->step(c, next);
    for (auto& r : next) {
      if ((*pred_)(*r)) out.push_back(std::make_shared<FilterState>(std::move(r), pred_));
    }
  }
  bool accepting() const override { return inner_->accepting(); }
  const Attrs& attrs() const override { return inner_->attrs(); }
  std::optional<std::u32string> completion() const override { return inner_->completion(); }

 private:
  StatePtr inner_;
  std::shared_ptr<const StatePred> pred_;
};

Automaton make_terminal(std::u32string_view s, bool leading_ws) {
  if (s.empty()) throw EmptyTerminal();
  auto word = std::make_shared<const std::u32string>(s);
  return Automaton{{std::make_shared<TermState>(word, 0, leading_ws)}};
}

}  // namespace

Automaton empty() { return Automaton{}; }

Automaton terminal(std::u32string_view s) { return make_terminal(s, false); }
Automaton terminal(std::string_view utf8) { return terminal(from_utf8(utf8)); }
Automaton ws_terminal(std::u32string_view s) { return make_terminal(s, true); }
Automaton ws_terminal(std::string_view utf8) { return ws_terminal(from_utf8(utf8)); }

Automaton accept_with(Attrs attrs) { return accept_with(make_attrs(std::move(attrs))); }
Automaton accept_with(AttrsPtr attrs) { return Automaton{{std::make_shared<AcceptState>(std::move(attrs))}}; }

Automaton union_of(const Automaton& x, const Automaton& y) {
  Automaton out = x;
  out.initial.insert(out.initial.end(), y.initial.begin(), y.initial.end());
  return out;
}

Automaton union_of(const std::vector<Automaton>& parts) {
  Automaton out;
  for (const auto& p : parts) out.initial.insert(out.initial.end(), p.initial.begin(), p.initial.end());
  return out;
}

Automaton bind(const Automaton& x, Continuation next) {
  auto ctx = std::make_shared<const BindCtx>(BindCtx{std::move(next)});
  Automaton out;
  for (const auto& i : x.initial) ConcatState::emit(i, ctx, out.initial);
  return out;
}

Automaton concat(const Automaton& x, const Automaton& y) {
  return bind(x, [y](const State&) { return y; });
}

Automaton kleene(const Automaton& x) {
  auto body = std::make_shared<const Automaton>(x);
  Automaton out{{std::make_shared<StarStart>()}};
  for (const auto& i : x.initial) out.initial.push_back(std::make_shared<StarState>(i, body));
  return out;
}

Automaton repeat(AttrsPtr seed, AttrsFn body, AttrsPred done) {
  auto ctx = std::make_shared<const RepeatCtx>(RepeatCtx{std::move(body), std::move(done)});
  Automaton out{{std::make_shared<RepeatSeed>(seed, ctx)}};
  for (const auto& i : ctx->body(*seed).initial) out.initial.push_back(std::make_shared<RepeatState>(i, ctx));
  return out;
}

Automaton ws_then(const Automaton& a) {
  if (a.initial.empty()) return a;
  return Automaton{{std::make_shared<WsThenState>(std::make_shared<const Automaton>(a))}};
}

Automaton filter(const Automaton& a, StatePred pred) {
  auto p = std::make_shared<const StatePred>(std::move(pred));
  Automaton out;
  for (const auto& i : a.initial) {
    if ((*p)(*i)) out.initial.push_back(std::make_shared<FilterState>(i, p));
  }
  return out;
}

Automaton guard(std::function<bool(char32_t)> pred, const Automaton& y) {
  auto p = std::make_shared<const std::function<bool(char32_t)>>(std::move(pred));
  Automaton out;
  for (const auto& i : y.initial) out.initial.push_back(std::make_shared<GuardState>(i, p));
  return out;
}

std::u32string force_complete(const StateSet& qs, std::size_t budget) {
  if (any_accepting(qs)) return {};
  std::deque<std::pair<std::u32string, StateSet>> queue;
  queue.emplace_back(std::u32string(), qs);
  std::size_t nodes = 0;
  while (!queue.empty()) {
    auto [prefix, states] = std::move(queue.front());
    queue.pop_front();
    if (++nodes > budget) break;
    std::optional<std::u32string> best;
    for (const auto& q : states) {
      auto c = q->completion();
      if (!c || (best && c->size() >= best->size())) continue;
      if (!accepting_after(q, *c).empty()) best = std::move(c);
    }
    if (best) return prefix + *best;
    for (char32_t ch = 0x20; ch <= 0x7f; ++ch) {
      char32_t sym = ch == 0x7f ? U'\n' : ch;
      StateSet next = step_all(states, sym);
      if (next.empty()) continue;
      if (any_accepting(next)) return prefix + sym;
      queue.emplace_back(prefix + sym, std::move(next));
    }
  }
  throw BudgetExhausted(budget);
}

std::u32string force_complete(const StatePtr& q, std::size_t budget) { return force_complete(StateSet{q}, budget); }

std::u32string force_complete(const Automaton&, const StatePtr& q, std::size_t budget) {
  return force_complete(q, budget);
}

}  // namespace tcd
