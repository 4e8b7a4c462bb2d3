#include "tcd/tables.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "tcd/parser.hpp"

namespace tcd {

LookupTable::LookupTable(std::vector<MemberEntry> entries) : entries_(std::move(entries)) {}

std::optional<Type> LookupTable::lookup(const Type& receiver, std::string_view name) const {
  std::optional<Type> universal;
  for (const auto& e : entries_) {
    if (e.name != name) continue;
    if (!e.receiver) {
      if (!universal) universal = e.type.substitute_self(receiver);
    } else if (*e.receiver == receiver) {
      return e.type.substitute_self(receiver);
    }
  }
  return universal;
}

std::vector<std::pair<std::string, Type>> LookupTable::members(const Type& receiver) const {
  std::vector<std::pair<std::string, Type>> out;
  for (const auto& e : entries_) {
    if (e.receiver && *e.receiver != receiver) continue;
    bool seen = std::any_of(out.begin(), out.end(), [&](const auto& m) { return m.first == e.name; });
    if (seen) continue;
    if (auto t = lookup(receiver, e.name)) out.emplace_back(e.name, *t);
  }
  return out;
}

std::vector<OpInstance> Tables::ops_for(const Type& left) const {
  std::vector<OpInstance> out;
  for (const auto& sig : ops) {
    if (!sig.matches(left)) continue;
    out.push_back({sig.op, sig.rhs.substitute_self(left), sig.result.substitute_self(left)});
  }
  return out;
}

std::vector<std::string> Tables::op_symbols() const {
  std::vector<std::string> out;
  for (const auto& sig : ops) {
    if (std::find(out.begin(), out.end(), sig.op) == out.end()) out.push_back(sig.op);
  }
  return out;
}

std::vector<OpSignature> default_signatures() {
  const Type num = Type::number();
  const Type str = Type::string();
  const Type boolean = Type::boolean();
  std::vector<OpSignature> sigs;
  for (const char* op : {"+", "-", "*", "/", "%"}) sigs.push_back({op, num, num, num});
  sigs.push_back({"+", str, str, str});
  for (const char* op : {"<", "<=", ">", ">="}) sigs.push_back({op, num, num, boolean});
  for (const char* op : {"==", "!="}) {
    for (const auto& t : {num, str, boolean}) sigs.push_back({op, t, t, boolean});
  }
  for (const char* op : {"&&", "||"}) sigs.push_back({op, boolean, boolean, boolean});
  sigs.push_back({std::string(kAssignOp), Type::self(), Type::self(), Type::self()});
  return sigs;
}

LookupTable default_lookup() {
  const Type num = Type::number();
  const Type str = Type::string();
  const Type boolean = Type::boolean();
  return LookupTable({
      {num, "toString", Type::fun({}, str)},
      {num, "isFinite", Type::fun({}, boolean)},
      {str, "charAt", Type::fun({{"index", num}}, str)},
      {str, "concat", Type::fun({{"other", str}}, str)},
      {boolean, "toString", Type::fun({}, str)},
      {std::nullopt, "valueOf", Type::fun({}, Type::self())},
  });
}

Tables default_tables() { return Tables{default_signatures(), default_lookup()}; }

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && is_whitespace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && is_whitespace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Type config_type(int line, std::string_view text) {
  try {
    return parse_type(trim(text), true);
  } catch (const ParseError& e) {
    throw ConfigError(line, "bad type '" + trim(text) + "': " + e.what());
  }
}

}  // namespace

Config parse_config(std::istream& in) {
  Config cfg;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    std::string text = trim(raw);
    if (text.empty()) continue;
    std::istringstream words(text);
    std::string kind;
    words >> kind;
    if (kind == "op") {
      auto arrow = text.find("->");
      if (arrow == std::string::npos) throw ConfigError(line, "missing '->'");
      std::istringstream head(text.substr(2, arrow - 2));
      std::string sym, lhs, rhs, extra;
      head >> sym >> lhs >> rhs;
      if (rhs.empty() || (head >> extra)) throw ConfigError(line, "expected: op <sym> <lhs> <rhs> -> <result>");
      OpSignature sig{sym, config_type(line, lhs), config_type(line, rhs), config_type(line, text.substr(arrow + 2))};
      if (!sig.lhs.is_self() && (sig.rhs.mentions_self() || sig.result.mentions_self())) {
        throw ConfigError(line, "'*' in rhs/result requires '*' as lhs");
      }
      cfg.ops.push_back(std::move(sig));
    } else if (kind == "member") {
      auto arrow = text.find("->");
      if (arrow == std::string::npos) throw ConfigError(line, "missing '->'");
      std::istringstream head(text.substr(6, arrow - 6));
      std::string receiver, name, extra;
      head >> receiver >> name;
      if (name.empty() || (head >> extra)) throw ConfigError(line, "expected: member <type> <name> -> <type>");
      std::optional<Type> recv;
      if (receiver != "*") recv = config_type(line, receiver);
      cfg.members.push_back({std::move(recv), std::move(name), config_type(line, text.substr(arrow + 2))});
    } else if (kind == "global") {
      auto colon = text.find(':');
      if (colon == std::string::npos) throw ConfigError(line, "missing ':'");
      std::string name = trim(text.substr(6, colon - 6));
      bool ok = !name.empty() && is_ident_start(static_cast<unsigned char>(name[0])) &&
                std::all_of(name.begin(), name.end(), [](char c) { return is_ident_char(static_cast<unsigned char>(c)); });
      if (!ok || is_reserved(name)) throw ConfigError(line, "bad global name '" + name + "'");
      Type t = config_type(line, text.substr(colon + 1));
      if (t.mentions_self()) throw ConfigError(line, "'*' not allowed in globals");
      if (cfg.globals.contains(name)) throw ConfigError(line, "duplicate global '" + name + "'");
      cfg.globals = cfg.globals.extended(name, t);
    } else {
      throw ConfigError(line, "unknown entry kind '" + kind + "'");
    }
  }
  return cfg;
}

Config parse_config_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_config(in);
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return parse_config(in);
}

Tables tables_from_config(const Config& cfg) {
  Tables t = default_tables();
  if (!cfg.ops.empty()) t.ops = cfg.ops;
  if (!cfg.members.empty()) t.lookup = LookupTable(cfg.members);
  return t;
}

}  // namespace tcd
