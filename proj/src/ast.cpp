#include "tcd/ast.hpp"

namespace tcd {

namespace {

bool equal_params(const std::vector<Param>& a, const std::vector<Param>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !a[i].type.identical(b[i].type)) return false;
  }
  return true;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string print_params(const std::vector<Param>& params) {
  std::string out;
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i].name + ": " + params[i].type.str();
  }
  return out;
}

std::string print_block(const StmtList& body) {
  std::string out = "{";
  for (const auto& s : body) out += " " + print(*s);
  return out + (body.empty() ? "}" : " }");
}

}  // namespace

bool equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const ast::Literal& x) {
            const auto& y = std::get<ast::Literal>(b.node);
            return x.kind == y.kind && x.text == y.text;
          },
          [&](const ast::Ident& x) { return x.name == std::get<ast::Ident>(b.node).name; },
          [&](const ast::Anon& x) {
            const auto& y = std::get<ast::Anon>(b.node);
            return equal_params(x.params, y.params) && equal(*x.body, *y.body);
          },
          [&](const ast::Group& x) { return equal(*x.inner, *std::get<ast::Group>(b.node).inner); },
          [&](const ast::Binary& x) {
            const auto& y = std::get<ast::Binary>(b.node);
            return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
          },
          [&](const ast::Member& x) {
            const auto& y = std::get<ast::Member>(b.node);
            return x.name == y.name && equal(*x.target, *y.target);
          },
          [&](const ast::Call& x) {
            const auto& y = std::get<ast::Call>(b.node);
            if (x.args.size() != y.args.size() || !equal(*x.callee, *y.callee)) return false;
            for (std::size_t i = 0; i < x.args.size(); ++i) {
              if (!equal(*x.args[i], *y.args[i])) return false;
            }
            return true;
          },
      },
      a.node);
}

bool equal(const StmtList& a, const StmtList& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!equal(*a[i], *b[i])) return false;
  }
  return true;
}

bool equal(const Stmt& a, const Stmt& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const ast::Decl& x) {
            const auto& y = std::get<ast::Decl>(b.node);
            return x.name == y.name && x.type.identical(y.type);
          },
          [&](const ast::ExprStmt& x) { return equal(*x.expr, *std::get<ast::ExprStmt>(b.node).expr); },
          [&](const ast::Return& x) { return equal(*x.expr, *std::get<ast::Return>(b.node).expr); },
          [&](const ast::Block& x) { return equal(x.body, std::get<ast::Block>(b.node).body); },
          [&](const ast::FunDef& x) {
            const auto& y = std::get<ast::FunDef>(b.node);
            return x.name == y.name && equal_params(x.params, y.params) && x.ret.identical(y.ret) &&
                   equal(x.body, y.body);
          },
          [&](const ast::If& x) {
            const auto& y = std::get<ast::If>(b.node);
            return equal(*x.cond, *y.cond) && equal(*x.then_branch, *y.then_branch) &&
                   equal(*x.else_branch, *y.else_branch);
          },
      },
      a.node);
}

std::string print(const Expr& e) {
  return std::visit(
      overloaded{
          [](const ast::Literal& x) { return x.text; },
          [](const ast::Ident& x) { return x.name; },
          [](const ast::Anon& x) { return "(" + print_params(x.params) + ") => " + print(*x.body); },
          [](const ast::Group& x) { return "(" + print(*x.inner) + ")"; },
          [](const ast::Binary& x) { return print(*x.lhs) + " " + x.op + " " + print(*x.rhs); },
          [](const ast::Member& x) { return print(*x.target) + "." + x.name; },
          [](const ast::Call& x) {
            std::string out = print(*x.callee) + "(";
            for (std::size_t i = 0; i < x.args.size(); ++i) {
              if (i) out += ", ";
              out += print(*x.args[i]);
            }
            return out + ")";
          },
      },
      e.node);
}

std::string print(const Stmt& s) {
  return std::visit(
      overloaded{
          [](const ast::Decl& x) { return "let " + x.name + ": " + x.type.str() + ";"; },
          [](const ast::ExprStmt& x) { return print(*x.expr) + ";"; },
          [](const ast::Return& x) { return "return " + print(*x.expr) + ";"; },
          [](const ast::Block& x) { return print_block(x.body); },
          [](const ast::FunDef& x) {
            return "function " + x.name + "(" + print_params(x.params) + "): " + x.ret.str() + " " +
                   print_block(x.body);
          },
          [](const ast::If& x) {
            return "if (" + print(*x.cond) + ") " + print(*x.then_branch) + " else " + print(*x.else_branch);
          },
      },
      s.node);
}

std::string print(const StmtList& program) {
  std::string out;
  for (std::size_t i = 0; i < program.size(); ++i) {
    if (i) out += "\n";
    out += print(*program[i]);
  }
  return out;
}

}  // namespace tcd
