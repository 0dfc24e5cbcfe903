#pragma once

#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "msos/error.hpp"
#include "msos/language.hpp"

namespace msos {

namespace toml_detail {

// Minimal TOML subset for language definitions: top-level key = value,
// [table], [[array-of-tables]]; values are strings, integers, booleans,
// single- or multi-line arrays, and inline tables. '#' comments.
struct TomlValue {
  enum class Kind { String, Int, Bool, Array, Table };
  Kind kind = Kind::String;
  std::string str;
  std::int64_t integer = 0;
  bool boolean = false;
  std::vector<TomlValue> array;
  std::vector<std::pair<std::string, TomlValue>> table;
  int line = 0;
  int column = 0;
};

struct TomlDoc {
  std::vector<std::pair<std::string, TomlValue>> root;
  std::vector<std::pair<std::string, TomlValue>> tables;
  std::vector<std::pair<std::string, TomlValue>> table_arrays;
};

class TomlParser {
public:
  explicit TomlParser(std::string_view text) : text_(text) {}

  TomlDoc parse() {
    TomlDoc doc;
    TomlValue* current = nullptr;
    for (;;) {
      skip_blank();
      if (eof()) break;
      if (peek() == '[') {
        int ln = line_, col = col_;
        advance();
        bool is_array = !eof() && peek() == '[';
        if (is_array) advance();
        std::string name = parse_key();
        expect(']');
        if (is_array) expect(']');
        end_of_line();
        TomlValue t;
        t.kind = TomlValue::Kind::Table;
        t.line = ln;
        t.column = col;
        if (is_array) {
          doc.table_arrays.emplace_back(std::move(name), std::move(t));
          current = &doc.table_arrays.back().second;
        } else {
          for (const auto& [n, v] : doc.tables)
            if (n == name) throw ParseError(ln, col, "duplicate table [" + name + "]");
          doc.tables.emplace_back(std::move(name), std::move(t));
          current = &doc.tables.back().second;
        }
        continue;
      }
      int ln = line_, col = col_;
      std::string key = parse_key();
      skip_spaces();
      expect('=');
      skip_spaces();
      TomlValue v = parse_value();
      end_of_line();
      auto& dest = current ? current->table : doc.root;
      for (const auto& [k, old] : dest)
        if (k == key) throw ParseError(ln, col, "duplicate key '" + key + "'");
      dest.emplace_back(std::move(key), std::move(v));
    }
    return doc;
  }

private:
  bool eof() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_spaces() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) advance();
  }

  void skip_comment() {
    if (!eof() && peek() == '#')
      while (!eof() && peek() != '\n') advance();
  }

  // Whitespace, comments, and newlines between top-level items.
  void skip_blank() {
    for (;;) {
      skip_spaces();
      skip_comment();
      if (!eof() && peek() == '\n') {
        advance();
        continue;
      }
      return;
    }
  }

  // Whitespace permitted inside arrays/inline tables spans newlines.
  void skip_ws_multiline() {
    for (;;) {
      skip_spaces();
      skip_comment();
      if (!eof() && (peek() == '\n' || peek() == '\r')) {
        advance();
        continue;
      }
      return;
    }
  }

  void expect(char c) {
    if (eof() || peek() != c)
      throw ParseError(line_, col_, std::string("expected '") + c + "'");
    advance();
  }

  void end_of_line() {
    skip_spaces();
    skip_comment();
    if (eof()) return;
    if (peek() != '\n')
      throw ParseError(line_, col_, "expected end of line");
    advance();
  }

  static bool key_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string parse_key() {
    skip_spaces();
    if (eof() || !key_char(peek()))
      throw ParseError(line_, col_, "expected a key");
    std::string k;
    while (!eof() && key_char(peek())) k.push_back(advance());
    return k;
  }

  TomlValue parse_value() {
    if (eof()) throw ParseError(line_, col_, "expected a value");
    TomlValue v;
    v.line = line_;
    v.column = col_;
    char c = peek();
    if (c == '"') {
      advance();
      v.kind = TomlValue::Kind::String;
      while (!eof() && peek() != '"') {
        if (peek() == '\n') throw ParseError(line_, col_, "unterminated string");
        v.str.push_back(advance());
      }
      expect('"');
      return v;
    }
    if (c == '[') {
      advance();
      v.kind = TomlValue::Kind::Array;
      skip_ws_multiline();
      while (!eof() && peek() != ']') {
        v.array.push_back(parse_value());
        skip_ws_multiline();
        if (!eof() && peek() == ',') {
          advance();
          skip_ws_multiline();
        }
      }
      expect(']');
      return v;
    }
    if (c == '{') {
      advance();
      v.kind = TomlValue::Kind::Table;
      skip_spaces();
      while (!eof() && peek() != '}') {
        std::string key = parse_key();
        skip_spaces();
        expect('=');
        skip_spaces();
        v.table.emplace_back(std::move(key), parse_value());
        skip_spaces();
        if (!eof() && peek() == ',') {
          advance();
          skip_spaces();
        }
      }
      expect('}');
      return v;
    }
    if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
      std::string num;
      while (!eof() && (peek() == '-' || std::isdigit(static_cast<unsigned char>(peek()))))
        num.push_back(advance());
      auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), v.integer);
      if (ec != std::errc() || p != num.data() + num.size())
        throw ParseError(v.line, v.column, "bad integer '" + num + "'");
      v.kind = TomlValue::Kind::Int;
      return v;
    }
    std::string word;
    while (!eof() && key_char(peek())) word.push_back(advance());
    if (word == "true" || word == "false") {
      v.kind = TomlValue::Kind::Bool;
      v.boolean = word == "true";
      return v;
    }
    throw ParseError(v.line, v.column, "expected a value, found '" + word + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline const TomlValue& expect_kind(const TomlValue& v, TomlValue::Kind k, const char* what) {
  if (v.kind != k) throw ParseError(v.line, v.column, std::string("expected ") + what);
  return v;
}

inline ValueMap map_from_table(const TomlValue& t);

inline Value value_from_toml(const TomlValue& v) {
  switch (v.kind) {
    case TomlValue::Kind::String: return Value(v.str);
    case TomlValue::Kind::Int: return Value(v.integer);
    case TomlValue::Kind::Bool: return Value(v.boolean);
    case TomlValue::Kind::Table: return Value(map_from_table(v));
    case TomlValue::Kind::Array: break;
  }
  throw ParseError(v.line, v.column, "arrays are not values here");
}

inline ValueMap map_from_table(const TomlValue& t) {
  ValueMap m;
  for (const auto& [k, v] : t.table) m.insert_or_assign(k, value_from_toml(v));
  return m;
}

}  // namespace toml_detail

// Parses a language definition:
//   name = "..."
//   [[entities]]  name/kind/domain
//   [components]  <Sort> = ["construct", ...]
//   [seeds]       ints/bools/symbols/idents/envs (each overrides its default)
// Unknown keys are rejected.
inline LanguageDef parse_language_def(std::string_view text) {
  using toml_detail::TomlValue;
  toml_detail::TomlDoc doc = toml_detail::TomlParser(text).parse();
  LanguageDef def;

  for (const auto& [key, v] : doc.root) {
    if (key == "name") {
      def.name = toml_detail::expect_kind(v, TomlValue::Kind::String, "a string").str;
    } else if (key == "sorts") {
      toml_detail::expect_kind(v, TomlValue::Kind::Array, "an array");
      for (const TomlValue& s : v.array)
        if (!sort_from_name(
                toml_detail::expect_kind(s, TomlValue::Kind::String, "a sort name").str))
          throw ParseError(s.line, s.column, "unknown sort '" + s.str + "'");
    } else {
      throw ParseError(v.line, v.column, "unknown key '" + key + "'");
    }
  }

  for (const auto& [name, t] : doc.table_arrays) {
    if (name != "entities")
      throw ParseError(t.line, t.column, "unknown table array [[" + name + "]]");
    EntitySpec e;
    bool have_domain = false;
    for (const auto& [key, v] : t.table) {
      if (key == "name") {
        e.name = toml_detail::expect_kind(v, TomlValue::Kind::String, "a string").str;
      } else if (key == "kind") {
        const std::string& k =
            toml_detail::expect_kind(v, TomlValue::Kind::String, "a string").str;
        if (k == "read_only") e.kind = EntityKind::ReadOnly;
        else if (k == "read_write") e.kind = EntityKind::ReadWrite;
        else if (k == "write_only") e.kind = EntityKind::WriteOnly;
        else throw ParseError(v.line, v.column,
                              "kind must be read_only, read_write, or write_only");
      } else if (key == "domain") {
        const std::string& d =
            toml_detail::expect_kind(v, TomlValue::Kind::String, "a string").str;
        if (d == "map") e.domain = ObjectDomain::Map;
        else if (d == "list") e.domain = ObjectDomain::List;
        else throw ParseError(v.line, v.column, "domain must be map or list");
        have_domain = true;
      } else {
        throw ParseError(v.line, v.column, "unknown entity key '" + key + "'");
      }
    }
    if (e.name.empty()) throw ParseError(t.line, t.column, "entity needs a name");
    if (!have_domain)
      e.domain = e.kind == EntityKind::WriteOnly ? ObjectDomain::List : ObjectDomain::Map;
    def.entities.push_back(std::move(e));
  }

  for (const auto& [name, t] : doc.tables) {
    if (name == "components") {
      for (const auto& [sort_key, v] : t.table) {
        std::optional<Sort> s = sort_from_name(sort_key);
        if (!s) throw ParseError(v.line, v.column, "unknown sort '" + sort_key + "'");
        std::vector<std::string> ids;
        toml_detail::expect_kind(v, TomlValue::Kind::Array, "an array of construct names");
        for (const TomlValue& item : v.array)
          ids.push_back(
              toml_detail::expect_kind(item, TomlValue::Kind::String, "a construct name").str);
        def.components.emplace_back(*s, std::move(ids));
      }
    } else if (name == "seeds") {
      for (const auto& [key, v] : t.table) {
        toml_detail::expect_kind(v, TomlValue::Kind::Array, "an array");
        if (key == "ints") {
          def.seeds.ints.clear();
          for (const TomlValue& item : v.array)
            def.seeds.ints.push_back(
                toml_detail::expect_kind(item, TomlValue::Kind::Int, "an integer").integer);
        } else if (key == "bools") {
          def.seeds.bools.clear();
          for (const TomlValue& item : v.array)
            def.seeds.bools.push_back(
                toml_detail::expect_kind(item, TomlValue::Kind::Bool, "a boolean").boolean);
        } else if (key == "symbols") {
          def.seeds.symbols.clear();
          for (const TomlValue& item : v.array)
            def.seeds.symbols.push_back(
                toml_detail::expect_kind(item, TomlValue::Kind::String, "a string").str);
        } else if (key == "idents") {
          def.seeds.idents.clear();
          for (const TomlValue& item : v.array)
            def.seeds.idents.push_back(
                toml_detail::expect_kind(item, TomlValue::Kind::String, "a string").str);
        } else if (key == "envs") {
          def.seeds.envs.clear();
          for (const TomlValue& item : v.array)
            def.seeds.envs.push_back(toml_detail::map_from_table(
                toml_detail::expect_kind(item, TomlValue::Kind::Table, "an inline table")));
        } else {
          throw ParseError(v.line, v.column, "unknown seeds key '" + key + "'");
        }
      }
    } else {
      throw ParseError(t.line, t.column, "unknown table [" + name + "]");
    }
  }
  return def;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline LanguageDef load_language_def(const std::string& path) {
  return parse_language_def(read_text_file(path));
}

inline Language load_language(const std::string& path) {
  return build_language(load_language_def(path));
}

}  // namespace msos
