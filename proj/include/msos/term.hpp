#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "msos/error.hpp"
#include "msos/value.hpp"

namespace msos {

// Syntactic categories. A fixed, closed set; languages pick constructs per
// sort but never add sorts.
enum class Sort : std::uint8_t { Cmd, Exp, Dcl, Pcd, Prm };

inline std::string_view sort_name(Sort s) {
  switch (s) {
    case Sort::Cmd: return "Cmd";
    case Sort::Exp: return "Exp";
    case Sort::Dcl: return "Dcl";
    case Sort::Pcd: return "Pcd";
    case Sort::Prm: return "Prm";
  }
  return "?";
}

inline std::optional<Sort> sort_from_name(std::string_view name) {
  if (name == "Cmd") return Sort::Cmd;
  if (name == "Exp") return Sort::Exp;
  if (name == "Dcl") return Sort::Dcl;
  if (name == "Pcd") return Sort::Pcd;
  if (name == "Prm") return Sort::Prm;
  return std::nullopt;
}

// Declared shape of one constructor argument: a child term of a sort, or a
// literal leaf (ground value, identifier, or environment map).
struct ArgSort {
  enum class Kind : std::uint8_t { Child, ValueLit, IdentLit, EnvLit };
  Kind kind = Kind::Child;
  Sort sort = Sort::Cmd;

  static ArgSort child(Sort s) { return {Kind::Child, s}; }
  static ArgSort value_lit() { return {Kind::ValueLit, Sort::Exp}; }
  static ArgSort ident_lit() { return {Kind::IdentLit, Sort::Exp}; }
  static ArgSort env_lit() { return {Kind::EnvLit, Sort::Dcl}; }
};

class Term;

// Argument of a term node: child term, literal value, or identifier.
using Arg = std::variant<Term, Value, std::string>;

// Injection/projection pair naming one constructor of a sort. The id string
// is globally unique ("Cmd.seq"); the short name is the concrete-syntax head.
class Construct {
public:
  enum class ValueRule : std::uint8_t { Never, Always, WhenArg0IsValue };

  std::string id;
  std::string name;
  Sort sort = Sort::Cmd;
  std::vector<ArgSort> arg_sorts;
  ValueRule value_rule = ValueRule::Never;
  std::uint32_t index = 0;  // dense repository index, assigned at registration
};

struct TermNode {
  const Construct* construct = nullptr;
  std::vector<Arg> args;
  std::uint32_t height = 0;  // leaf-free node: 1; literal leaves count one level
};

// Sorted abstract-syntax tree node handle. Immutable and shared; equality is
// structural.
class Term {
public:
  Term() = default;
  explicit Term(std::shared_ptr<const TermNode> p) : p_(std::move(p)) {}

  explicit operator bool() const { return p_ != nullptr; }
  const TermNode* operator->() const { return p_.get(); }
  const TermNode& node() const { return *p_; }
  const TermNode* raw() const { return p_.get(); }

  friend bool operator==(const Term& a, const Term& b) {
    if (a.p_ == b.p_) return true;
    if (!a.p_ || !b.p_) return false;
    if (a.p_->construct != b.p_->construct) return false;
    if (a.p_->args.size() != b.p_->args.size()) return false;
    for (std::size_t i = 0; i < a.p_->args.size(); ++i)
      if (!(a.p_->args[i] == b.p_->args[i])) return false;
    return true;
  }
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }

private:
  std::shared_ptr<const TermNode> p_;
};

inline const Term& child(const Term& t, std::size_t i) { return std::get<Term>(t->args[i]); }
inline const Value& value_arg(const Term& t, std::size_t i) { return std::get<Value>(t->args[i]); }
inline const std::string& ident_arg(const Term& t, std::size_t i) {
  return std::get<std::string>(t->args[i]);
}

// Builds a term, validating arity and per-argument sort; satisfies H_i.
inline Term inject(const Construct& c, std::vector<Arg> args) {
  if (args.size() != c.arg_sorts.size())
    throw ConstructionError(c.id + ": expected " + std::to_string(c.arg_sorts.size()) +
                            " arguments, got " + std::to_string(args.size()));
  std::uint32_t height = 1;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const ArgSort& as = c.arg_sorts[i];
    switch (as.kind) {
      case ArgSort::Kind::Child: {
        const Term* t = std::get_if<Term>(&args[i]);
        if (!t || !*t)
          throw ConstructionError(c.id + ": argument " + std::to_string(i) + " must be a term");
        if ((*t)->construct->sort != as.sort)
          throw ConstructionError(c.id + ": argument " + std::to_string(i) + " must have sort " +
                                  std::string(sort_name(as.sort)));
        height = std::max(height, (*t)->height + 1);
        break;
      }
      case ArgSort::Kind::ValueLit: {
        if (!std::holds_alternative<Value>(args[i]))
          throw ConstructionError(c.id + ": argument " + std::to_string(i) + " must be a value");
        height = std::max(height, 2u);
        break;
      }
      case ArgSort::Kind::IdentLit: {
        if (!std::holds_alternative<std::string>(args[i]))
          throw ConstructionError(c.id + ": argument " + std::to_string(i) +
                                  " must be an identifier");
        height = std::max(height, 2u);
        break;
      }
      case ArgSort::Kind::EnvLit: {
        const Value* v = std::get_if<Value>(&args[i]);
        if (!v || !v->is_map())
          throw ConstructionError(c.id + ": argument " + std::to_string(i) +
                                  " must be an environment map");
        height = std::max(height, 2u);
        break;
      }
    }
  }
  auto node = std::make_shared<TermNode>();
  node->construct = &c;
  node->args = std::move(args);
  node->height = height;
  return Term(std::move(node));
}

// Pattern match: Some arguments iff t was built by c; satisfies H_p.
inline const std::vector<Arg>* project(const Construct& c, const Term& t) {
  if (!t || t->construct != &c) return nullptr;
  return &t->args;
}

// A term known to be built by a specific construct; the embedding I(rt) is
// the term itself.
struct RestrictedTerm {
  const Construct* construct = nullptr;
  Term term;
};

inline std::optional<RestrictedTerm> restrict_term(const Construct& c, const Term& t) {
  if (!project(c, t)) return std::nullopt;
  return RestrictedTerm{&c, t};
}

// True iff t is a computed-value form: lit(v), a computed environment, eq
// over a value, abs with a value parameter. Cmd has no value form.
inline bool is_value(const Term& t) {
  switch (t->construct->value_rule) {
    case Construct::ValueRule::Never: return false;
    case Construct::ValueRule::Always: return true;
    case Construct::ValueRule::WhenArg0IsValue: return is_value(child(t, 0));
  }
  return false;
}

// Concrete syntax: every construct prints parenthesized with its short name;
// environment literals print as (k v) pairs.
inline void append_sexp(const Term& t, std::string& out) {
  out += '(';
  out += t->construct->name;
  for (std::size_t i = 0; i < t->args.size(); ++i) {
    const ArgSort& as = t->construct->arg_sorts[i];
    out += ' ';
    if (as.kind == ArgSort::Kind::Child) {
      append_sexp(std::get<Term>(t->args[i]), out);
    } else if (as.kind == ArgSort::Kind::EnvLit) {
      const ValueMap& m = std::get<Value>(t->args[i]).as_map();
      bool first = true;
      out += '(';
      for (const auto& [k, v] : m) {
        if (!first) out += ' ';
        first = false;
        out += '(' + k + ' ' + to_text(v) + ')';
      }
      out += ')';
    } else if (as.kind == ArgSort::Kind::IdentLit) {
      out += std::get<std::string>(t->args[i]);
    } else {
      out += to_text(std::get<Value>(t->args[i]));
    }
  }
  out += ')';
}

inline std::string to_sexp(const Term& t) {
  std::string out;
  append_sexp(t, out);
  return out;
}

}  // namespace msos
