#include "exemplar/parser.hpp"

#include <algorithm>

#include "exemplar/printer.hpp"
#include "exemplar/sortcheck.hpp"

namespace exemplar {

namespace {

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + i, s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

const std::map<std::string, ModalOp> kModalHeads = {
    {"perceives", ModalOp::Perceives}, {"knows", ModalOp::Knows},
    {"believes", ModalOp::Believes},   {"desires", ModalOp::Desires},
    {"intends", ModalOp::Intends},     {"ought", ModalOp::Ought},
    {"says", ModalOp::Says},           {"common", ModalOp::Common},
    {"trait", ModalOp::Trait},
};

const std::map<std::string, CmpOp> kCmpHeads = {
    {">", CmpOp::Gt}, {">=", CmpOp::Ge}, {"<", CmpOp::Lt}, {"<=", CmpOp::Le}, {"=", CmpOp::Eq},
};

struct Parser {
  const Signature& sig;
  std::vector<Diagnostic> diags;
  bool permissive = false;
  Signature* mutable_sig = nullptr;  // permissive mode target

  void error(ErrorKind kind, std::string msg, SourcePos pos, std::string subject = {}) {
    diags.push_back(make_diag(kind, std::move(msg), pos, std::move(subject)));
  }

  // "?name:Sort" -> (name, sort); "?name" -> (name, "")
  static bool split_var_token(const std::string& tok, std::string& name, std::string& sort) {
    if (tok.size() < 2 || tok[0] != '?') return false;
    auto colon = tok.find(':');
    if (colon == std::string::npos) {
      name = tok.substr(1);
      sort = "";
    } else {
      name = tok.substr(1, colon - 1);
      sort = tok.substr(colon + 1);
    }
    return !name.empty();
  }

  // In permissive mode unknown symbols are declared at the sort the
  // position expects (`hint`), defaulting to Object.
  Term parse_term(const Sexpr& e, const std::string& hint = "") {
    const std::string fallback =
        hint.empty() || !sig.has_sort(hint) ? sorts::Object : hint;
    if (e.is_symbol()) {
      const std::string& tok = e.text;
      std::string name, sort;
      if (tok[0] == '?') {
        if (!split_var_token(tok, name, sort) || sort.empty()) {
          error(ErrorKind::Syntax, "variable must be written ?name:Sort", e.pos, tok);
          return Term::var(name.empty() ? tok : name, sorts::Object);
        }
        if (!sig.has_sort(sort))
          error(ErrorKind::UnknownSymbol, "unknown sort: " + sort, e.pos, tok);
        return Term::var(name, sort);
      }
      if (is_integer(tok)) return Term::moment(std::stoll(tok));
      auto declared = sig.constant_sort(tok);
      if (!declared) {
        if (permissive) {
          mutable_sig->declare_constant(tok, fallback);
          return Term::constant(tok, fallback);
        }
        error(ErrorKind::UnknownSymbol, "unknown constant: " + tok, e.pos, tok);
        return Term::constant(tok, "");
      }
      return Term::constant(tok, *declared);
    }
    if (e.items.empty() || !e.items[0].is_symbol()) {
      error(ErrorKind::Syntax, "expected (functor args...)", e.pos, print_sexpr(e));
      return Term::constant("<error>", "");
    }
    const std::string& fname = e.items[0].text;
    const FunctorDecl* decl = sig.functor(fname);
    if (!decl && permissive) {
      std::vector<std::string> params(e.items.size() - 1, sorts::Object);
      mutable_sig->declare_functor(fname, params, fallback);
      decl = sig.functor(fname);
    }
    if (!decl) {
      error(ErrorKind::UnknownSymbol, "unknown functor: " + fname, e.pos, print_sexpr(e));
      std::vector<Term> args;
      for (size_t i = 1; i < e.items.size(); ++i) args.push_back(parse_term(e.items[i]));
      return Term::app(fname, "", std::move(args));
    }
    if (decl->param_sorts.size() != e.items.size() - 1) {
      error(ErrorKind::ArityMismatch,
            "functor " + fname + " expects " + std::to_string(decl->param_sorts.size()) +
                " arguments, got " + std::to_string(e.items.size() - 1),
            e.pos, print_sexpr(e));
    }
    std::vector<Term> args;
    for (size_t i = 1; i < e.items.size(); ++i) {
      std::string arg_hint =
          i - 1 < decl->param_sorts.size() ? decl->param_sorts[i - 1] : "";
      args.push_back(parse_term(e.items[i], arg_hint));
    }
    return Term::app(fname, decl->result_sort, std::move(args));
  }

  std::optional<Formula> parse_formula(const Sexpr& e) {
    if (e.is_symbol()) {
      // Bare symbol: nullary predicate.
      const std::string& tok = e.text;
      if (tok[0] == '?') {
        std::string name, sort;
        if (split_var_token(tok, name, sort) && sort.empty())
          return Formula::pred_var_atom(name, {});
        error(ErrorKind::Syntax, "a formula cannot be a term variable", e.pos, tok);
        return std::nullopt;
      }
      if (!sig.has_predicate(tok)) {
        if (permissive) {
          mutable_sig->declare_predicate(tok, {});
        } else {
          error(ErrorKind::UnknownSymbol, "unknown predicate: " + tok, e.pos, tok);
          return std::nullopt;
        }
      }
      return Formula::atom(tok);
    }
    if (e.items.empty()) {
      error(ErrorKind::Syntax, "empty form", e.pos);
      return std::nullopt;
    }
    if (!e.items[0].is_symbol()) {
      error(ErrorKind::Syntax, "formula head must be a symbol", e.pos, print_sexpr(e));
      return std::nullopt;
    }
    const std::string& head = e.items[0].text;
    size_t n = e.items.size();

    auto need = [&](size_t want) {
      if (n - 1 == want) return true;
      error(ErrorKind::ArityMismatch,
            head + " expects " + std::to_string(want) + " arguments, got " +
                std::to_string(n - 1),
            e.pos, print_sexpr(e));
      return false;
    };

    if (head == "not") {
      if (!need(1)) return std::nullopt;
      auto body = parse_formula(e.items[1]);
      if (!body) return std::nullopt;
      return Formula::negation(std::move(*body));
    }
    if (head == "and" || head == "or") {
      if (n < 3) {
        error(ErrorKind::ArityMismatch, head + " expects at least 2 arguments", e.pos,
              print_sexpr(e));
        return std::nullopt;
      }
      std::vector<Formula> kids;
      for (size_t i = 1; i < n; ++i) {
        auto k = parse_formula(e.items[i]);
        if (!k) return std::nullopt;
        kids.push_back(std::move(*k));
      }
      return head == "and" ? Formula::conj(std::move(kids)) : Formula::disj(std::move(kids));
    }
    if (head == "implies" || head == "iff") {
      if (!need(2)) return std::nullopt;
      auto a = parse_formula(e.items[1]);
      auto b = parse_formula(e.items[2]);
      if (!a || !b) return std::nullopt;
      return head == "implies" ? Formula::implies(std::move(*a), std::move(*b))
                               : Formula::iff(std::move(*a), std::move(*b));
    }
    if (head == "forall" || head == "exists") {
      if (!need(2)) return std::nullopt;
      Term v = parse_term(e.items[1]);
      if (!v.is_var()) {
        error(ErrorKind::Syntax, head + " binder must be a ?name:Sort variable", e.items[1].pos,
              print_sexpr(e.items[1]));
        return std::nullopt;
      }
      auto body = parse_formula(e.items[2]);
      if (!body) return std::nullopt;
      return head == "forall" ? Formula::forall(std::move(v), std::move(*body))
                              : Formula::exists(std::move(v), std::move(*body));
    }
    if (head == "exists-atleast" || head == "exists-exactly") {
      if (!need(3)) return std::nullopt;
      if (!e.items[1].is_symbol() || !is_integer(e.items[1].text)) {
        error(ErrorKind::Syntax, head + " expects an integer bound", e.items[1].pos);
        return std::nullopt;
      }
      long long count = std::stoll(e.items[1].text);
      Term v = parse_term(e.items[2]);
      if (!v.is_var()) {
        error(ErrorKind::Syntax, head + " binder must be a ?name:Sort variable", e.items[2].pos);
        return std::nullopt;
      }
      auto body = parse_formula(e.items[3]);
      if (!body) return std::nullopt;
      return head == "exists-atleast" ? Formula::count_at_least(count, std::move(v),
                                                                std::move(*body))
                                      : Formula::count_exact(count, std::move(v),
                                                             std::move(*body));
    }
    if (auto cmp = kCmpHeads.find(head); cmp != kCmpHeads.end()) {
      if (!need(2)) return std::nullopt;
      // (cmp (nu event time) rational) is a utility atom; (= t1 t2) an equality.
      if (e.items[1].is_list() && e.items[1].head() == "nu") {
        const Sexpr& nu = e.items[1];
        if (nu.items.size() != 3) {
          error(ErrorKind::ArityMismatch, "nu expects (nu event time)", nu.pos, print_sexpr(nu));
          return std::nullopt;
        }
        if (!e.items[2].is_symbol()) {
          error(ErrorKind::Syntax, "utility bound must be a rational literal", e.items[2].pos);
          return std::nullopt;
        }
        auto q = parse_rational(e.items[2].text);
        if (!q) {
          error(ErrorKind::Syntax, "bad rational: " + e.items[2].text, e.items[2].pos);
          return std::nullopt;
        }
        Term ev = parse_term(nu.items[1], sorts::ActionType);
        Term tm = parse_term(nu.items[2], sorts::Moment);
        return Formula::utility(std::move(ev), std::move(tm), cmp->second, *q);
      }
      if (cmp->second == CmpOp::Eq) {
        Term a = parse_term(e.items[1]);
        Term b = parse_term(e.items[2]);
        return Formula::equals(std::move(a), std::move(b));
      }
      error(ErrorKind::Syntax, "comparison requires a (nu event time) left-hand side", e.pos,
            print_sexpr(e));
      return std::nullopt;
    }
    if (auto modal = kModalHeads.find(head); modal != kModalHeads.end()) {
      ModalOp op = modal->second;
      switch (op) {
        case ModalOp::Common: {
          if (!need(2)) return std::nullopt;
          Term t = parse_term(e.items[1], sorts::Moment);
          auto body = parse_formula(e.items[2]);
          if (!body) return std::nullopt;
          return Formula::common(std::move(t), std::move(*body));
        }
        case ModalOp::Trait: {
          if (!need(2)) return std::nullopt;
          auto tau = parse_formula(e.items[1]);
          if (!tau) return std::nullopt;
          Term agent = parse_term(e.items[2], sorts::Agent);
          return Formula::trait(std::move(*tau), std::move(agent));
        }
        case ModalOp::Ought: {
          if (!need(4)) return std::nullopt;
          Term agent = parse_term(e.items[1], sorts::Agent);
          Term t = parse_term(e.items[2], sorts::Moment);
          auto cond = parse_formula(e.items[3]);
          auto clause = parse_formula(e.items[4]);
          if (!cond || !clause) return std::nullopt;
          return Formula::ought(std::move(agent), std::move(t), std::move(*cond),
                                std::move(*clause));
        }
        case ModalOp::Says: {
          if (n - 1 != 3 && n - 1 != 4) {
            error(ErrorKind::ArityMismatch, "says expects (says a t f) or (says a b t f)",
                  e.pos, print_sexpr(e));
            return std::nullopt;
          }
          bool two_agents = n - 1 == 4;
          Term speaker = parse_term(e.items[1], sorts::Agent);
          size_t i = 2;
          std::optional<Term> hearer;
          if (two_agents) hearer = parse_term(e.items[i++], sorts::Agent);
          Term t = parse_term(e.items[i++], sorts::Moment);
          auto body = parse_formula(e.items[i]);
          if (!body) return std::nullopt;
          if (two_agents)
            return Formula::says(std::move(speaker), std::move(*hearer), std::move(t),
                                 std::move(*body));
          return Formula::says(std::move(speaker), std::move(t), std::move(*body));
        }
        default: {
          if (!need(3)) return std::nullopt;
          Term agent = parse_term(e.items[1], sorts::Agent);
          Term t = parse_term(e.items[2], sorts::Moment);
          auto body = parse_formula(e.items[3]);
          if (!body) return std::nullopt;
          return Formula::modal(op, {std::move(agent)}, std::move(t), std::move(*body));
        }
      }
    }

    // Predicate atom, possibly with a predicate-variable head.
    std::string name = head;
    bool pv = false;
    if (head[0] == '?') {
      std::string vn, vs;
      if (!split_var_token(head, vn, vs) || !vs.empty()) {
        error(ErrorKind::Syntax, "predicate variable must be written ?Name (no sort)", e.pos,
              head);
        return std::nullopt;
      }
      name = vn;
      pv = true;
    }
    const PredicateDecl* pdecl = sig.predicate(name);
    std::vector<Term> args;
    for (size_t i = 1; i < n; ++i) {
      std::string arg_hint =
          pdecl && i - 1 < pdecl->param_sorts.size() ? pdecl->param_sorts[i - 1] : "";
      args.push_back(parse_term(e.items[i], arg_hint));
    }
    if (pv) return Formula::pred_var_atom(name, std::move(args));
    if (!sig.has_predicate(name)) {
      if (permissive) {
        mutable_sig->declare_predicate(name,
                                       std::vector<std::string>(args.size(), sorts::Object));
      } else {
        error(ErrorKind::UnknownSymbol, "unknown predicate: " + name, e.pos, print_sexpr(e));
        return std::nullopt;
      }
    }
    return Formula::atom(name, std::move(args));
  }
};

Result<Formula> finish_formula(Parser& p, std::optional<Formula> f, const Signature& sig,
                               SourcePos top) {
  if (!f || !p.diags.empty()) {
    if (p.diags.empty())
      p.diags.push_back(make_diag(ErrorKind::Syntax, "unparsable formula", top));
    return Result<Formula>::failure(std::move(p.diags));
  }
  auto checked = check_sorts(*f, sig);
  if (!checked.ok()) {
    for (auto& d : checked.diagnostics)
      if (d.pos.line == 0) d.pos = top;
    return checked;
  }
  return checked;
}

}  // namespace

Result<Formula> parse_formula(const Sexpr& e, const Signature& sig) {
  Parser p{sig, {}, false, nullptr};
  auto f = p.parse_formula(e);
  return finish_formula(p, std::move(f), sig, e.pos);
}

Result<Formula> parse_formula(const std::string& text, const Signature& sig) {
  auto e = read_sexpr(text);
  if (!e.ok()) return Result<Formula>::failure(std::move(e.diagnostics));
  return parse_formula(*e, sig);
}

Result<Term> parse_term(const Sexpr& e, const Signature& sig) {
  Parser p{sig, {}, false, nullptr};
  Term t = p.parse_term(e);
  if (!p.diags.empty()) return Result<Term>::failure(std::move(p.diags));
  auto checked = check_term_sorts(t, sig);
  if (!checked.ok()) {
    for (auto& d : checked.diagnostics)
      if (d.pos.line == 0) d.pos = e.pos;
  }
  return checked;
}

Result<Term> parse_term(const std::string& text, const Signature& sig) {
  auto e = read_sexpr(text);
  if (!e.ok()) return Result<Term>::failure(std::move(e.diagnostics));
  return parse_term(*e, sig);
}

Result<Formula> parse_formula_permissive(const std::string& text, Signature& sig) {
  auto e = read_sexpr(text);
  if (!e.ok()) return Result<Formula>::failure(std::move(e.diagnostics));
  Parser p{sig, {}, false, nullptr};
  p.permissive = true;
  p.mutable_sig = &sig;
  auto f = p.parse_formula(*e);
  return finish_formula(p, std::move(f), sig, e->pos);
}

}  // namespace exemplar
