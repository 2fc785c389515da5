#include "exemplar/sortcheck.hpp"

#include <map>

#include "exemplar/printer.hpp"

namespace exemplar {

namespace {

struct Checker {
  const Signature& sig;
  std::vector<Diagnostic> diags;
  std::map<std::string, std::string> var_sorts;  // name -> sort, consistency across the formula

  void error(ErrorKind kind, std::string msg, const std::string& subject) {
    diags.push_back(make_diag(kind, std::move(msg), {}, subject));
  }

  // Returns the checked term (sorts filled); empty sort on failure.
  Term term(const Term& t) {
    switch (t.kind) {
      case TermKind::Variable: {
        if (!sig.has_sort(t.sort)) {
          error(ErrorKind::UnknownSymbol, "unknown sort on variable: " + t.sort, print_term(t));
          return t;
        }
        auto it = var_sorts.find(t.name);
        if (it == var_sorts.end()) {
          var_sorts[t.name] = t.sort;
        } else if (it->second != t.sort) {
          error(ErrorKind::SortMismatch,
                "variable ?" + t.name + " used at sorts " + it->second + " and " + t.sort,
                print_term(t));
        }
        return t;
      }
      case TermKind::Constant: {
        if (t.moment_value() || (t.sort.empty() && looks_like_int(t.name)))
          return Term::moment(std::stoll(t.name));
        auto declared = sig.constant_sort(t.name);
        if (!declared) {
          if (looks_like_int(t.name)) return Term::moment(std::stoll(t.name));
          error(ErrorKind::UnknownSymbol, "unknown constant: " + t.name, print_term(t));
          return t;
        }
        if (!t.sort.empty() && t.sort != *declared) {
          error(ErrorKind::SortMismatch,
                "constant " + t.name + " declared " + *declared + ", used as " + t.sort,
                print_term(t));
        }
        return Term::constant(t.name, *declared);
      }
      case TermKind::Application: {
        const FunctorDecl* decl = sig.functor(t.name);
        if (!decl) {
          error(ErrorKind::UnknownSymbol, "unknown functor: " + t.name, print_term(t));
          return t;
        }
        if (decl->param_sorts.size() != t.args.size()) {
          error(ErrorKind::ArityMismatch,
                "functor " + t.name + " expects " + std::to_string(decl->param_sorts.size()) +
                    " arguments, got " + std::to_string(t.args.size()),
                print_term(t));
          return t;
        }
        std::vector<Term> args;
        for (size_t i = 0; i < t.args.size(); ++i) {
          Term a = term(t.args[i]);
          if (!a.sort.empty() && !sig.subsort(a.sort, decl->param_sorts[i])) {
            error(ErrorKind::SortMismatch,
                  "argument " + std::to_string(i + 1) + " of " + t.name + " has sort " + a.sort +
                      ", expected " + decl->param_sorts[i],
                  print_term(t));
          }
          args.push_back(std::move(a));
        }
        return Term::app(t.name, decl->result_sort, std::move(args));
      }
    }
    return t;
  }

  static bool looks_like_int(const std::string& s) {
    if (s.empty()) return false;
    size_t i = s[0] == '-' ? 1 : 0;
    if (i == s.size()) return false;
    for (size_t j = i; j < s.size(); ++j)
      if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    return true;
  }

  Term sorted_term(const Term& t, const std::string& expected, const std::string& role) {
    Term out = term(t);
    if (!out.sort.empty() && !sig.subsort(out.sort, expected)) {
      error(ErrorKind::SortMismatch,
            role + " has sort " + out.sort + ", expected " + expected, print_term(t));
    }
    return out;
  }

  Formula formula(const Formula& f) {
    Formula out = f;
    switch (f.kind) {
      case Conn::Atom: {
        if (f.pred == "=") {
          if (f.args.size() != 2) {
            error(ErrorKind::ArityMismatch, "= expects 2 arguments", print_formula(f));
            return out;
          }
          for (auto& a : out.args) a = term(a);
          return out;
        }
        if (f.pred_var) {
          for (auto& a : out.args) a = term(a);
          return out;
        }
        const PredicateDecl* decl = sig.predicate(f.pred);
        if (!decl) {
          error(ErrorKind::UnknownSymbol, "unknown predicate: " + f.pred, print_formula(f));
          return out;
        }
        if (decl->param_sorts.size() != f.args.size()) {
          error(ErrorKind::ArityMismatch,
                "predicate " + f.pred + " expects " + std::to_string(decl->param_sorts.size()) +
                    " arguments, got " + std::to_string(f.args.size()),
                print_formula(f));
          return out;
        }
        for (size_t i = 0; i < f.args.size(); ++i)
          out.args[i] = sorted_term(f.args[i], decl->param_sorts[i],
                                    "argument " + std::to_string(i + 1) + " of " + f.pred);
        return out;
      }
      case Conn::Utility: {
        Term ev = term(f.args[0]);
        if (!ev.sort.empty() && !sig.subsort(ev.sort, sorts::Event) &&
            !sig.subsort(ev.sort, sorts::ActionType)) {
          error(ErrorKind::SortMismatch,
                "nu expects an Event or ActionType term, got sort " + ev.sort,
                print_term(f.args[0]));
        }
        out.args[0] = std::move(ev);
        out.args[1] = sorted_term(f.args[1], sorts::Moment, "nu time");
        return out;
      }
      case Conn::Forall:
      case Conn::Exists:
      case Conn::CountAtLeast:
      case Conn::CountExact: {
        if ((f.kind == Conn::CountAtLeast || f.kind == Conn::CountExact) && f.count < 1)
          error(ErrorKind::Validation, "counting quantifier bound must be >= 1",
                print_formula(f));
        out.binder = term(*f.binder);
        out.kids[0] = formula(f.kids[0]);
        return out;
      }
      case Conn::Modal: {
        size_t want_agents = 1;
        bool want_time = true;
        switch (f.op) {
          case ModalOp::Common: want_agents = 0; break;
          case ModalOp::Trait: want_agents = 1; want_time = false; break;
          case ModalOp::Says: want_agents = f.agents.size() == 2 ? 2 : 1; break;
          default: break;
        }
        if (f.agents.size() != want_agents) {
          error(ErrorKind::ArityMismatch,
                std::string(to_string(f.op)) + " expects " + std::to_string(want_agents) +
                    " agent argument(s)",
                print_formula(f));
        }
        for (auto& a : out.agents) a = sorted_term(a, sorts::Agent, "modal agent");
        if (want_time) {
          if (!f.time) {
            error(ErrorKind::ArityMismatch,
                  std::string(to_string(f.op)) + " requires a time argument", print_formula(f));
          } else {
            out.time = sorted_term(*f.time, sorts::Moment, "modal time");
          }
        } else if (f.time) {
          error(ErrorKind::ArityMismatch,
                std::string(to_string(f.op)) + " takes no time argument", print_formula(f));
        }
        for (auto& k : out.kids) k = formula(k);
        if (f.op == ModalOp::Ought) {
          if (f.kids.size() != 2) {
            error(ErrorKind::ArityMismatch, "ought requires a happens clause", print_formula(f));
          } else {
            const Formula& clause =
                f.kids[1].kind == Conn::Not && !f.kids[1].kids.empty() ? f.kids[1].kids[0]
                                                                       : f.kids[1];
            if (!clause.is_atom("happens"))
              error(ErrorKind::Validation, "ought clause must be (possibly negated) happens",
                    print_formula(f.kids[1]));
          }
        }
        return out;
      }
      default:
        for (auto& k : out.kids) k = formula(k);
        return out;
    }
  }
};

}  // namespace

Result<Formula> check_sorts(const Formula& f, const Signature& sig) {
  Checker c{sig, {}, {}};
  Formula out = c.formula(f);
  if (!c.diags.empty()) return Result<Formula>::failure(std::move(c.diags));
  return Result<Formula>::success(std::move(out));
}

Result<Term> check_term_sorts(const Term& t, const Signature& sig) {
  Checker c{sig, {}, {}};
  Term out = c.term(t);
  if (!c.diags.empty()) return Result<Term>::failure(std::move(c.diags));
  return Result<Term>::success(std::move(out));
}

std::string sort_of(const Term& t) { return t.sort; }

}  // namespace exemplar
