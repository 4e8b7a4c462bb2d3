#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tcd/ast.hpp"
#include "tcd/tables.hpp"

namespace tcd {

/// Keywords that may never be used as identifiers.
inline constexpr std::array<std::string_view, 10> kReservedWords = {
    "let", "function", "return", "if", "else", "true", "false", "string", "number", "boolean"};

bool is_reserved(std::string_view word);
bool is_ident_start(char32_t c);
bool is_ident_char(char32_t c);
bool is_whitespace(char32_t c);

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, const std::string& msg)
      : std::runtime_error("offset " + std::to_string(offset) + ": " + msg), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Recursive-descent reader for complete programs. Binary operators chain
/// left-associatively at one precedence level; member access and calls bind
/// to the operand they follow; an arrow function body extends as far as
/// possible. Operator tokens come from `ops`.
StmtList parse_program(std::string_view text, const std::vector<std::string>& ops);
ExprPtr parse_expression(std::string_view text, const std::vector<std::string>& ops);
/// `allow_self` admits `*` as a type (configuration templates only).
Type parse_type(std::string_view text, bool allow_self = false);

inline StmtList parse_program(std::string_view text, const Tables& tables) {
  return parse_program(text, tables.op_symbols());
}
inline ExprPtr parse_expression(std::string_view text, const Tables& tables) {
  return parse_expression(text, tables.op_symbols());
}

}  // namespace tcd
