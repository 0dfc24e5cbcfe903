#pragma once

#include <charconv>
#include <initializer_list>
#include <string>
#include <string_view>

#include "msos/error.hpp"
#include "msos/language.hpp"
#include "msos/repository.hpp"
#include "msos/sexpr.hpp"
#include "msos/term.hpp"

namespace msos {

namespace detail {

inline bool parse_int(std::string_view s, std::int64_t& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

inline Value value_from_sexpr(const SExpr& e);

inline ValueMap map_from_sexpr(const SExpr& e) {
  if (!e.is_list) throw ParseError(e.line, e.column, "expected ((key value) ...) map literal");
  ValueMap m;
  for (const SExpr& pair : e.items) {
    if (!pair.is_list || pair.items.size() != 2 || pair.items[0].is_list)
      throw ParseError(pair.line, pair.column, "expected (key value) entry");
    m.insert_or_assign(pair.items[0].atom, value_from_sexpr(pair.items[1]));
  }
  return m;
}

// Atom values: integers, booleans, otherwise symbols. Lists are map
// literals.
inline Value value_from_sexpr(const SExpr& e) {
  if (e.is_list) return Value(map_from_sexpr(e));
  std::int64_t n = 0;
  if (parse_int(e.atom, n)) return Value(n);
  if (e.atom == "true") return Value(true);
  if (e.atom == "false") return Value(false);
  return Value(e.atom);
}

inline void require_constructs(const Language& lang, const SExpr& e,
                               std::initializer_list<std::string_view> names,
                               std::string_view sugar) {
  for (std::string_view name : names) {
    if (!lang.construct_by_name(name))
      throw ParseError(e.line, e.column, std::string(sugar) + " sugar needs construct '" +
                                             std::string(name) + "', not in this language");
  }
}

}  // namespace detail

// Builds a term of the given sort from a parsed s-expression, resolving
// construct names against the language and desugaring while/break.
inline Term term_from_sexpr(const Language& lang, const SExpr& e, Sort sort) {
  if (!e.is_list)
    throw ParseError(e.line, e.column, "expected (construct ...), found atom '" + e.atom + "'");
  if (e.items.empty() || e.items[0].is_list)
    throw ParseError(e.line, e.column, "expected a construct name after '('");
  const SExpr& head = e.items[0];
  const std::string& name = head.atom;

  if (sort == Sort::Cmd && name == "while") {
    if (e.items.size() != 3)
      throw ParseError(e.line, e.column, "while takes a condition and a body");
    detail::require_constructs(lang, head, {"catch", "cond_loop", "abs", "eq", "lit", "skip"},
                               "while");
    Term cond = term_from_sexpr(lang, e.items[1], Sort::Exp);
    Term body = term_from_sexpr(lang, e.items[2], Sort::Cmd);
    return desugar_while_break(cond, body);
  }
  if (sort == Sort::Cmd && name == "break") {
    if (e.items.size() != 1) throw ParseError(e.line, e.column, "break takes no arguments");
    detail::require_constructs(lang, head, {"throw", "lit"}, "break");
    return desugar_break();
  }

  const Construct* c = lang.construct_by_name(name);
  if (!c && name.size() > 4 && name.find('.') != std::string::npos) {
    for (const Construct* cand : lang.constructs())
      if (cand->id == name) {
        c = cand;
        break;
      }
  }
  if (!c)
    throw ParseError(head.line, head.column,
                     "unknown construct '" + name + "' in this language");
  if (c->sort != sort)
    throw ParseError(head.line, head.column,
                     "expected " + std::string(sort_name(sort)) + " term, found " + c->id);
  if (e.items.size() - 1 != c->arg_sorts.size())
    throw ParseError(e.line, e.column,
                     c->id + " takes " + std::to_string(c->arg_sorts.size()) + " argument" +
                         (c->arg_sorts.size() == 1 ? "" : "s") + ", found " +
                         std::to_string(e.items.size() - 1));

  std::vector<Arg> args;
  args.reserve(c->arg_sorts.size());
  for (std::size_t i = 0; i < c->arg_sorts.size(); ++i) {
    const SExpr& arg = e.items[i + 1];
    const ArgSort& as = c->arg_sorts[i];
    switch (as.kind) {
      case ArgSort::Kind::Child:
        args.emplace_back(term_from_sexpr(lang, arg, as.sort));
        break;
      case ArgSort::Kind::ValueLit:
        args.emplace_back(detail::value_from_sexpr(arg));
        break;
      case ArgSort::Kind::IdentLit:
        if (arg.is_list)
          throw ParseError(arg.line, arg.column, "expected an identifier");
        args.emplace_back(arg.atom);
        break;
      case ArgSort::Kind::EnvLit:
        args.emplace_back(Value(detail::map_from_sexpr(arg)));
        break;
    }
  }
  return inject(*c, std::move(args));
}

inline Term parse_program(const Language& lang, std::string_view text, Sort sort = Sort::Cmd) {
  return term_from_sexpr(lang, parse_sexpr(text), sort);
}

}  // namespace msos
