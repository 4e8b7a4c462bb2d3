#include "tcd/parser.hpp"

#include <algorithm>

namespace tcd {

bool is_reserved(std::string_view word) {
  return std::find(kReservedWords.begin(), kReservedWords.end(), word) != kReservedWords.end();
}

bool is_ident_start(char32_t c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; }

bool is_ident_char(char32_t c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }

bool is_whitespace(char32_t c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }

class Reader {
 public:
  Reader(std::string_view text, std::vector<std::string> ops, bool allow_self = false)
      : text_(text), ops_(std::move(ops)), allow_self_(allow_self) {
    // Longest match first.
    std::sort(ops_.begin(), ops_.end(), [](const auto& a, const auto& b) { return a.size() > b.size(); });
  }

  StmtList program() {
    StmtList out;
    skip_ws();
    while (pos_ < text_.size()) {
      out.push_back(statement());
      skip_ws();
    }
    return out;
  }

  ExprPtr whole_expression() {
    auto e = expression();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after expression");
    return e;
  }

  Type whole_type() {
    auto t = type();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input after type");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(pos_, msg); }

  void skip_ws() {
    while (pos_ < text_.size() && is_whitespace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  bool starts_with(std::string_view s) {
    skip_ws();
    return text_.substr(pos_).substr(0, s.size()) == s;
  }

  bool accept(std::string_view s) {
    if (!starts_with(s)) return false;
    pos_ += s.size();
    return true;
  }

  void expect(std::string_view s) {
    if (!accept(s)) fail("expected '" + std::string(s) + "'");
  }

  /// Peeks an identifier-like word without consuming it.
  std::string_view peek_word() {
    skip_ws();
    std::size_t end = pos_;
    if (end < text_.size() && is_ident_start(static_cast<unsigned char>(text_[end]))) {
      while (end < text_.size() && is_ident_char(static_cast<unsigned char>(text_[end]))) ++end;
    }
    return text_.substr(pos_, end - pos_);
  }

  bool accept_keyword(std::string_view kw) {
    if (peek_word() != kw) return false;
    pos_ += kw.size();
    return true;
  }

  std::string identifier() {
    auto w = peek_word();
    if (w.empty()) fail("expected identifier");
    if (is_reserved(w)) fail("reserved word used as identifier: " + std::string(w));
    pos_ += w.size();
    return std::string(w);
  }

  Type type() {
    if (allow_self_ && accept("*")) return Type::self();
    if (peek() == '(') {
      expect("(");
      auto ps = params();
      expect(")");
      expect("=>");
      return Type::fun(std::move(ps), type());
    }
    auto w = peek_word();
    if (auto p = prim_from_name(w)) {
      pos_ += w.size();
      return Type::prim(*p);
    }
    fail("expected type");
  }

  std::vector<Param> params() {
    std::vector<Param> ps;
    if (peek() == ')') return ps;
    do {
      auto name = identifier();
      expect(":");
      ps.push_back({std::move(name), type()});
    } while (accept(","));
    return ps;
  }

  StmtPtr statement() {
    auto w = peek_word();
    if (w == "let") {
      pos_ += 3;
      auto name = identifier();
      expect(":");
      auto t = type();
      expect(";");
      return make_stmt(ast::Decl{std::move(name), std::move(t)});
    }
    if (w == "return") {
      pos_ += 6;
      auto e = expression();
      expect(";");
      return make_stmt(ast::Return{std::move(e)});
    }
    if (w == "if") {
      pos_ += 2;
      expect("(");
      auto cond = expression();
      expect(")");
      auto then_branch = statement();
      if (!accept_keyword("else")) fail("expected 'else'");
      auto else_branch = statement();
      return make_stmt(ast::If{std::move(cond), std::move(then_branch), std::move(else_branch)});
    }
    if (w == "function") {
      pos_ += 8;
      auto name = identifier();
      expect("(");
      auto ps = params();
      expect(")");
      expect(":");
      auto ret = type();
      auto body = block_body();
      return make_stmt(ast::FunDef{std::move(name), std::move(ps), std::move(ret), std::move(body)});
    }
    if (peek() == '{') return make_stmt(ast::Block{block_body()});
    auto e = expression();
    expect(";");
    return make_stmt(ast::ExprStmt{std::move(e)});
  }

  StmtList block_body() {
    expect("{");
    StmtList body;
    while (!accept("}")) {
      if (at_end()) fail("unterminated block");
      body.push_back(statement());
    }
    return body;
  }

  std::optional<std::string> operator_symbol() {
    skip_ws();
    if (starts_with("=>")) return std::nullopt;
    for (const auto& op : ops_) {
      if (starts_with(op)) return op;
    }
    return std::nullopt;
  }

  ExprPtr expression() {
    auto lhs = unary();
    while (auto op = operator_symbol()) {
      pos_ += op->size();
      auto rhs = unary();
      lhs = make_expr(ast::Binary{std::move(lhs), std::move(*op), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr unary() {
    auto [e, absorbing] = base();
    if (absorbing) return e;
    for (;;) {
      if (accept(".")) {
        auto w = peek_word();
        if (w.empty()) fail("expected member name");
        pos_ += w.size();
        e = make_expr(ast::Member{std::move(e), std::string(w)});
      } else if (peek() == '(') {
        expect("(");
        std::vector<ExprPtr> args;
        if (!accept(")")) {
          do {
            args.push_back(expression());
          } while (accept(","));
          expect(")");
        }
        e = make_expr(ast::Call{std::move(e), std::move(args)});
      } else {
        return e;
      }
    }
  }

  bool looks_like_arrow() {
    // After '(' : either ')' '=>' or IDENT ':'.
    std::size_t save = pos_;
    bool result = false;
    if (accept(")")) {
      result = starts_with("=>");
    } else {
      auto w = peek_word();
      if (!w.empty()) {
        pos_ += w.size();
        result = peek() == ':';
      }
    }
    pos_ = save;
    return result;
  }

  std::pair<ExprPtr, bool> base() {
    char c = peek();
    if (c == '(') {
      expect("(");
      if (looks_like_arrow()) {
        auto ps = params();
        expect(")");
        expect("=>");
        auto body = expression();
        return {make_expr(ast::Anon{std::move(ps), std::move(body)}), true};
      }
      auto inner = expression();
      expect(")");
      return {make_expr(ast::Group{std::move(inner)}), false};
    }
    if (c == '"') return {string_literal(), false};
    if (is_digit(c)) return {number_literal(), false};
    auto w = peek_word();
    if (w == "true" || w == "false") {
      pos_ += w.size();
      return {make_expr(ast::Literal{Type::Prim::Boolean, std::string(w)}), false};
    }
    if (w.empty()) fail("expected expression");
    if (is_reserved(w)) fail("unexpected keyword: " + std::string(w));
    pos_ += w.size();
    return {make_expr(ast::Ident{std::string(w)}), false};
  }

  ExprPtr number_literal() {
    std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < text_.size() && is_digit(text_[pos_])) ++pos_, ++n;
      return n;
    };
    digits();
    if (pos_ + 1 < text_.size() && text_[pos_] == '.' && is_digit(text_[pos_ + 1])) {
      ++pos_;
      digits();
    }
    if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
      std::size_t save = pos_++;
      if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
      if (digits() == 0) pos_ = save;
    }
    return make_expr(ast::Literal{Type::Prim::Number, std::string(text_.substr(start, pos_ - start))});
  }

  ExprPtr string_literal() {
    std::size_t start = pos_++;
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '"') {
        ++pos_;
        return make_expr(ast::Literal{Type::Prim::String, std::string(text_.substr(start, pos_ - start))});
      }
      if (c == '\n') break;
      if (c == '\\') {
        if (pos_ + 1 >= text_.size()) break;
        char n = text_[pos_ + 1];
        if (n != '\\' && n != '"' && n != 'n' && n != 't') fail("invalid escape");
        pos_ += 2;
        continue;
      }
      ++pos_;
    }
    fail("unterminated string literal");
  }

  std::string_view text_;
  std::vector<std::string> ops_;
  bool allow_self_;
  std::size_t pos_ = 0;
};

}  // namespace

StmtList parse_program(std::string_view text, const std::vector<std::string>& ops) {
  return Reader(text, ops).program();
}

ExprPtr parse_expression(std::string_view text, const std::vector<std::string>& ops) {
  return Reader(text, ops).whole_expression();
}

Type parse_type(std::string_view text, bool allow_self) { return Reader(text, {}, allow_self).whole_type(); }

}  // namespace tcd
