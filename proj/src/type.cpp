#include "tcd/type.hpp"

#include <algorithm>
#include <stdexcept>

namespace tcd {

struct Type::Node {
  Tag tag;
  Prim prim = Prim::Number;
  std::vector<Param> params;
  std::optional<Type> ret;
  std::size_t hash = 0;
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

}  // namespace

Type Type::prim(Prim p) {
  static const Type cache[] = {
      Type(std::make_shared<const Node>(Node{Tag::Prim, Prim::Number, {}, std::nullopt, 11})),
      Type(std::make_shared<const Node>(Node{Tag::Prim, Prim::String, {}, std::nullopt, 13})),
      Type(std::make_shared<const Node>(Node{Tag::Prim, Prim::Boolean, {}, std::nullopt, 17})),
  };
  return cache[static_cast<int>(p)];
}

Type Type::number() { return prim(Prim::Number); }
Type Type::string() { return prim(Prim::String); }
Type Type::boolean() { return prim(Prim::Boolean); }

Type Type::self() {
  static const Type s(std::make_shared<const Node>(Node{Tag::Self, Prim::Number, {}, std::nullopt, 19}));
  return s;
}

Type Type::fun(std::vector<Param> params, Type ret) {
  std::size_t h = mix(23, params.size());
  for (const auto& p : params) h = mix(h, p.type.hash());
  h = mix(h, ret.hash());
  return Type(std::make_shared<const Node>(Node{Tag::Fun, Prim::Number, std::move(params), std::move(ret), h}));
}

Type::Tag Type::tag() const noexcept { return node_->tag; }

Type::Prim Type::prim_kind() const {
  if (node_->tag != Tag::Prim) throw std::logic_error("prim_kind on non-primitive type");
  return node_->prim;
}

const std::vector<Param>& Type::params() const {
  if (node_->tag != Tag::Fun) throw std::logic_error("params on non-function type");
  return node_->params;
}

const Type& Type::ret() const {
  if (node_->tag != Tag::Fun) throw std::logic_error("ret on non-function type");
  return *node_->ret;
}

int Type::compare(const Type& other) const {
  if (node_ == other.node_) return 0;
  if (node_->tag != other.node_->tag) return node_->tag < other.node_->tag ? -1 : 1;
  switch (node_->tag) {
    case Tag::Self:
      return 0;
    case Tag::Prim:
      if (node_->prim == other.node_->prim) return 0;
      return node_->prim < other.node_->prim ? -1 : 1;
    case Tag::Fun: {
      const auto& a = node_->params;
      const auto& b = other.node_->params;
      if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (int c = a[i].type.compare(b[i].type); c != 0) return c;
      }
      return node_->ret->compare(*other.node_->ret);
    }
  }
  return 0;
}

bool Type::operator==(const Type& other) const {
  if (node_ == other.node_) return true;
  if (node_->hash != other.node_->hash) return false;
  return compare(other) == 0;
}

bool Type::identical(const Type& other) const {
  if (*this != other) return false;
  if (!is_fun()) return true;
  const auto& a = params();
  const auto& b = other.params();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].name != b[i].name || !a[i].type.identical(b[i].type)) return false;
  }
  return ret().identical(other.ret());
}

std::size_t Type::hash() const { return node_->hash; }

bool Type::mentions_self() const {
  switch (tag()) {
    case Tag::Self:
      return true;
    case Tag::Prim:
      return false;
    case Tag::Fun:
      return ret().mentions_self() ||
             std::any_of(params().begin(), params().end(),
                         [](const Param& p) { return p.type.mentions_self(); });
  }
  return false;
}

Type Type::substitute_self(const Type& with) const {
  switch (tag()) {
    case Tag::Self:
      return with;
    case Tag::Prim:
      return *this;
    case Tag::Fun: {
      if (!mentions_self()) return *this;
      std::vector<Param> ps;
      ps.reserve(params().size());
      for (const auto& p : params()) ps.push_back({p.name, p.type.substitute_self(with)});
      return fun(std::move(ps), ret().substitute_self(with));
    }
  }
  return *this;
}

std::string Type::str() const {
  switch (tag()) {
    case Tag::Self:
      return "*";
    case Tag::Prim:
      return std::string(prim_name(prim_kind()));
    case Tag::Fun: {
      std::string out = "(";
      for (std::size_t i = 0; i < params().size(); ++i) {
        if (i) out += ", ";
        out += params()[i].name + ": " + params()[i].type.str();
      }
      out += ") => " + ret().str();
      return out;
    }
  }
  return {};
}

std::string_view prim_name(Type::Prim p) {
  switch (p) {
    case Type::Prim::Number: return "number";
    case Type::Prim::String: return "string";
    case Type::Prim::Boolean: return "boolean";
  }
  return "?";
}

std::optional<Type::Prim> prim_from_name(std::string_view name) {
  if (name == "number") return Type::Prim::Number;
  if (name == "string") return Type::Prim::String;
  if (name == "boolean") return Type::Prim::Boolean;
  return std::nullopt;
}

int depth(const Type& t) { return t.is_fun() ? depth(t.ret()) + 1 : 0; }

Type root(const Type& t) { return t.is_fun() ? root(t.ret()) : t; }

// TypeEnv

TypeEnv::TypeEnv(std::initializer_list<Binding> bindings) {
  TypeEnv env;
  for (const auto& [name, type] : bindings) env = env.extended(name, type);
  items_ = env.items_;
}

const std::vector<TypeEnv::Binding>& TypeEnv::bindings() const {
  static const std::vector<Binding> none;
  return items_ ? *items_ : none;
}

bool TypeEnv::contains(std::string_view name) const { return find(name).has_value(); }

std::optional<Type> TypeEnv::find(std::string_view name) const {
  for (const auto& [n, t] : bindings()) {
    if (n == name) return t;
  }
  return std::nullopt;
}

TypeEnv TypeEnv::extended(std::string name, Type type) const {
  if (contains(name)) throw std::invalid_argument("identifier already bound: " + name);
  auto next = std::make_shared<std::vector<Binding>>(bindings());
  next->emplace_back(std::move(name), std::move(type));
  TypeEnv env;
  env.items_ = std::move(next);
  return env;
}

bool TypeEnv::operator==(const TypeEnv& other) const {
  const auto& a = bindings();
  const auto& b = other.bindings();
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].first != b[i].first || a[i].second != b[i].second) return false;
  }
  return true;
}

std::string TypeEnv::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto& [n, t] : bindings()) {
    if (!first) out += ", ";
    first = false;
    out += n + ": " + t.str();
  }
  return out + "}";
}

}  // namespace tcd
