#pragma once

#include <string>
#include <vector>

#include "exemplar/diagnostics.hpp"

namespace exemplar {

// Minimal s-expression reader: symbols, integers/rationals (as symbols), and
// lists. Comments run from ';' to end of line.
struct Sexpr {
  enum class Kind { Symbol, List } kind = Kind::Symbol;
  std::string text;          // Symbol
  std::vector<Sexpr> items;  // List
  SourcePos pos;

  bool is_symbol() const { return kind == Kind::Symbol; }
  bool is_list() const { return kind == Kind::List; }
  std::string head() const {
    return is_list() && !items.empty() && items[0].is_symbol() ? items[0].text : "";
  }
};

Result<Sexpr> read_sexpr(const std::string& text);
Result<std::vector<Sexpr>> read_sexprs(const std::string& text);

std::string print_sexpr(const Sexpr& e);

}  // namespace exemplar
