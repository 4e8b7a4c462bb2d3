#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "tcd/type.hpp"

namespace tcd {

struct Expr;
struct Stmt;
using ExprPtr = std::shared_ptr<const Expr>;
using StmtPtr = std::shared_ptr<const Stmt>;
using StmtList = std::vector<StmtPtr>;

namespace ast {

struct Literal {
  Type::Prim kind;
  std::string text;  // exact lexeme, quotes included for strings
};
struct Ident {
  std::string name;
};
struct Anon {
  std::vector<Param> params;
  ExprPtr body;
};
struct Group {
  ExprPtr inner;
};
struct Binary {
  ExprPtr lhs;
  std::string op;
  ExprPtr rhs;
};
struct Member {
  ExprPtr target;
  std::string name;
};
struct Call {
  ExprPtr callee;
  std::vector<ExprPtr> args;
};

struct Decl {
  std::string name;
  Type type;
};
struct ExprStmt {
  ExprPtr expr;
};
struct Return {
  ExprPtr expr;
};
struct Block {
  StmtList body;
};
struct FunDef {
  std::string name;
  std::vector<Param> params;
  Type ret;
  StmtList body;
};
struct If {
  ExprPtr cond;
  StmtPtr then_branch;
  StmtPtr else_branch;
};

}  // namespace ast

struct Expr {
  std::variant<ast::Literal, ast::Ident, ast::Anon, ast::Group, ast::Binary, ast::Member, ast::Call> node;
};

struct Stmt {
  std::variant<ast::Decl, ast::ExprStmt, ast::Return, ast::Block, ast::FunDef, ast::If> node;
};

template <class T>
ExprPtr make_expr(T node) {
  return std::make_shared<const Expr>(Expr{std::move(node)});
}
template <class T>
StmtPtr make_stmt(T node) {
  return std::make_shared<const Stmt>(Stmt{std::move(node)});
}

bool equal(const Expr& a, const Expr& b);
bool equal(const Stmt& a, const Stmt& b);
bool equal(const StmtList& a, const StmtList& b);

std::string print(const Expr& e);
std::string print(const Stmt& s);
/// Statements separated by newlines.
std::string print(const StmtList& program);

}  // namespace tcd
