#include "exemplar/sexpr.hpp"

namespace exemplar {

namespace {

struct Reader {
  const std::string& text;
  size_t i = 0;
  int line = 1, col = 1;
  std::vector<Diagnostic> diags;

  SourcePos pos() const { return {line, col}; }

  int peek() const { return i < text.size() ? static_cast<unsigned char>(text[i]) : -1; }

  int next() {
    if (i >= text.size()) return -1;
    char c = text[i++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return static_cast<unsigned char>(c);
  }

  void skip_ws() {
    while (true) {
      int c = peek();
      if (c == ';') {
        while (peek() != -1 && peek() != '\n') next();
        continue;
      }
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        next();
        continue;
      }
      break;
    }
  }

  static bool symbol_char(int c) {
    if (c == -1 || c == '(' || c == ')' || c == ';') return false;
    return !std::isspace(c);
  }

  std::optional<Sexpr> read() {
    skip_ws();
    SourcePos p = pos();
    int c = peek();
    if (c == -1) {
      diags.push_back(make_diag(ErrorKind::Syntax, "unexpected end of input", p));
      return std::nullopt;
    }
    if (c == ')') {
      diags.push_back(make_diag(ErrorKind::Syntax, "unexpected ')'", p));
      return std::nullopt;
    }
    if (c == '(') {
      next();
      Sexpr list;
      list.kind = Sexpr::Kind::List;
      list.pos = p;
      while (true) {
        skip_ws();
        if (peek() == ')') {
          next();
          return list;
        }
        if (peek() == -1) {
          diags.push_back(make_diag(ErrorKind::Syntax, "unterminated list", p));
          return std::nullopt;
        }
        auto item = read();
        if (!item) return std::nullopt;
        list.items.push_back(std::move(*item));
      }
    }
    Sexpr sym;
    sym.kind = Sexpr::Kind::Symbol;
    sym.pos = p;
    while (symbol_char(peek())) sym.text.push_back(static_cast<char>(next()));
    if (sym.text.empty()) {
      diags.push_back(make_diag(ErrorKind::Syntax, "empty token", p));
      return std::nullopt;
    }
    return sym;
  }
};

}  // namespace

Result<Sexpr> read_sexpr(const std::string& text) {
  Reader r{text, 0, 1, 1, {}};
  auto e = r.read();
  if (!e) return Result<Sexpr>::failure(std::move(r.diags));
  r.skip_ws();
  if (r.peek() != -1) {
    return Result<Sexpr>::failure(
        make_diag(ErrorKind::Syntax, "trailing input after expression", r.pos()));
  }
  return Result<Sexpr>::success(std::move(*e));
}

Result<std::vector<Sexpr>> read_sexprs(const std::string& text) {
  Reader r{text, 0, 1, 1, {}};
  std::vector<Sexpr> out;
  while (true) {
    r.skip_ws();
    if (r.peek() == -1) break;
    auto e = r.read();
    if (!e) return Result<std::vector<Sexpr>>::failure(std::move(r.diags));
    out.push_back(std::move(*e));
  }
  return Result<std::vector<Sexpr>>::success(std::move(out));
}

std::string print_sexpr(const Sexpr& e) {
  if (e.is_symbol()) return e.text;
  std::string out = "(";
  for (size_t i = 0; i < e.items.size(); ++i) {
    if (i) out += ' ';
    out += print_sexpr(e.items[i]);
  }
  return out + ")";
}

}  // namespace exemplar
