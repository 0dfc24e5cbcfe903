#pragma once

#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "msos/error.hpp"

namespace msos {

// Parsed s-expression: an atom or a list. Atoms keep their source spelling;
// interpretation (int, bool, symbol) happens at term-building time.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 0;
  int column = 0;

  static SExpr make_atom(std::string a, int ln, int col) {
    SExpr e;
    e.atom = std::move(a);
    e.line = ln;
    e.column = col;
    return e;
  }
  static SExpr make_list(int ln, int col) {
    SExpr e;
    e.is_list = true;
    e.line = ln;
    e.column = col;
    return e;
  }
};

namespace detail {

class SExprParser {
public:
  explicit SExprParser(std::string_view text) : text_(text) {}

  SExpr parse_one() {
    skip_ws();
    if (eof()) throw ParseError(line_, col_, "expected expression, found end of input");
    SExpr e = parse_expr();
    skip_ws();
    if (!eof()) throw ParseError(line_, col_, "trailing content after expression");
    return e;
  }

  std::vector<SExpr> parse_all() {
    std::vector<SExpr> out;
    skip_ws();
    while (!eof()) {
      out.push_back(parse_expr());
      skip_ws();
    }
    return out;
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

  void skip_ws() {
    while (!eof()) {
      char c = peek();
      if (c == ';') {
        while (!eof() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool atom_char(char c) {
    if (std::isspace(static_cast<unsigned char>(c))) return false;
    return c != '(' && c != ')' && c != ';';
  }

  SExpr parse_expr() {
    int ln = line_, col = col_;
    char c = peek();
    if (c == ')') throw ParseError(ln, col, "unexpected ')'");
    if (c == '(') {
      advance();
      SExpr list = SExpr::make_list(ln, col);
      skip_ws();
      while (true) {
        if (eof()) throw ParseError(line_, col_, "unclosed '('");
        if (peek() == ')') {
          advance();
          return list;
        }
        list.items.push_back(parse_expr());
        skip_ws();
      }
    }
    std::string atom;
    while (!eof() && atom_char(peek())) atom.push_back(advance());
    if (atom.empty()) throw ParseError(ln, col, std::string("unexpected character '") + c + "'");
    return SExpr::make_atom(std::move(atom), ln, col);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

}  // namespace detail

inline SExpr parse_sexpr(std::string_view text) {
  return detail::SExprParser(text).parse_one();
}

inline std::vector<SExpr> parse_sexprs(std::string_view text) {
  return detail::SExprParser(text).parse_all();
}

}  // namespace msos
