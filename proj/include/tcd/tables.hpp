#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tcd/type.hpp"

namespace tcd {

/// Binary operator signature `lhs op rhs : result`. A `Self` lhs matches any
/// type; `Self` in rhs/result is then bound to the lhs type.
struct OpSignature {
  std::string op;
  Type lhs;
  Type rhs;
  Type result;

  bool matches(const Type& left) const { return lhs.is_self() || lhs == left; }
};

/// A signature instantiated for a concrete left operand.
struct OpInstance {
  std::string op;
  Type rhs;
  Type result;
};

struct MemberEntry {
  std::optional<Type> receiver;  // nullopt: every type
  std::string name;
  Type type;                     // may mention Self
};

/// LOOKUP(T, n). Concrete entries shadow universal ones of the same name.
class LookupTable {
 public:
  LookupTable() = default;
  explicit LookupTable(std::vector<MemberEntry> entries);

  std::optional<Type> lookup(const Type& receiver, std::string_view name) const;
  /// All (name, type) members of `receiver` in table order.
  std::vector<std::pair<std::string, Type>> members(const Type& receiver) const;
  const std::vector<MemberEntry>& entries() const { return entries_; }

 private:
  std::vector<MemberEntry> entries_;
};

class ConfigError : public std::runtime_error {
 public:
  ConfigError(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

/// The assignment operator symbol; its left operand must be an identifier.
inline constexpr std::string_view kAssignOp = "=";

struct Tables {
  std::vector<OpSignature> ops;
  LookupTable lookup;

  /// Instances applicable to `left`, in table order.
  std::vector<OpInstance> ops_for(const Type& left) const;
  /// Distinct operator symbols, in table order.
  std::vector<std::string> op_symbols() const;
};

std::vector<OpSignature> default_signatures();
LookupTable default_lookup();
Tables default_tables();

/// Parsed configuration: optional table overrides plus global bindings.
struct Config {
  std::vector<OpSignature> ops;
  std::vector<MemberEntry> members;
  TypeEnv globals;
};

/// Line format:
///   op <sym> <lhs> <rhs> -> <result>
///   member <receiver|*> <name> -> <type>
///   global <name> : <type>
/// `*` stands for the receiver / left operand type. `#` starts a comment.
Config parse_config(std::istream& in);
Config parse_config_string(std::string_view text);
Config load_config(const std::string& path);

/// Tables from a config; defaults are kept for whichever section is empty.
Tables tables_from_config(const Config& cfg);

}  // namespace tcd
