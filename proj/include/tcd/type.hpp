#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tcd {

struct Param;

/// An immutable type of the core language: a primitive or a function type
/// with named parameters.
///
/// Equality is structural and ignores parameter names, so
/// `(a: number) => string` equals `(x: number) => string`. Use `identical()`
/// when names matter (round-trip tests).
///
/// The `Self` tag only appears inside table templates (e.g. the universal
/// `valueOf` member) and is substituted before a type reaches a program.
class Type {
 public:
  enum class Tag { Prim, Fun, Self };
  enum class Prim { Number, String, Boolean };

  static Type number();
  static Type string();
  static Type boolean();
  static Type prim(Prim p);
  static Type fun(std::vector<Param> params, Type ret);
  static Type self();

  Tag tag() const noexcept;
  bool is_prim() const noexcept { return tag() == Tag::Prim; }
  bool is_fun() const noexcept { return tag() == Tag::Fun; }
  bool is_self() const noexcept { return tag() == Tag::Self; }

  Prim prim_kind() const;
  const std::vector<Param>& params() const;
  const Type& ret() const;

  bool operator==(const Type& other) const;
  bool operator!=(const Type& other) const { return !(*this == other); }
  bool operator<(const Type& other) const { return compare(other) < 0; }
  int compare(const Type& other) const;
  bool identical(const Type& other) const;
  std::size_t hash() const;

  /// Replaces every `Self` occurrence by `with`.
  Type substitute_self(const Type& with) const;
  bool mentions_self() const;

  std::string str() const;

 private:
  struct Node;
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Param {
  std::string name;
  Type type;
};

std::string_view prim_name(Type::Prim p);
std::optional<Type::Prim> prim_from_name(std::string_view name);

/// Number of function arrows along the return chain.
int depth(const Type& t);
/// The non-function type at the bottom of the return chain.
Type root(const Type& t);

struct TypeHash {
  std::size_t operator()(const Type& t) const { return t.hash(); }
};

/// Ordered identifier -> type bindings with cheap copies.
class TypeEnv {
 public:
  using Binding = std::pair<std::string, Type>;

  TypeEnv() = default;
  TypeEnv(std::initializer_list<Binding> bindings);

  bool contains(std::string_view name) const;
  std::optional<Type> find(std::string_view name) const;
  /// Returns a copy with the binding appended. Throws std::invalid_argument
  /// when the name is already bound.
  TypeEnv extended(std::string name, Type type) const;

  const std::vector<Binding>& bindings() const;
  std::size_t size() const { return bindings().size(); }
  bool empty() const { return size() == 0; }

  bool operator==(const TypeEnv& other) const;
  bool operator!=(const TypeEnv& other) const { return !(*this == other); }

  std::string str() const;

 private:
  std::shared_ptr<const std::vector<Binding>> items_;
};

}  // namespace tcd
