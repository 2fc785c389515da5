#include "exemplar/printer.hpp"

namespace exemplar {

std::string print_term(const Term& t) {
  switch (t.kind) {
    case TermKind::Variable:
      return "?" + t.name + ":" + t.sort;
    case TermKind::Constant:
      return t.name;
    case TermKind::Application: {
      std::string out = "(" + t.name;
      for (const auto& a : t.args) out += " " + print_term(a);
      return out + ")";
    }
  }
  return "?";
}

namespace {

std::string print_quantifier(const char* head, const Formula& f) {
  std::string out = std::string("(") + head + " ";
  if (f.kind == Conn::CountAtLeast || f.kind == Conn::CountExact)
    out += std::to_string(f.count) + " ";
  out += print_term(*f.binder) + " " + print_formula(f.kids[0]) + ")";
  return out;
}

}  // namespace

std::string print_formula(const Formula& f) {
  switch (f.kind) {
    case Conn::Atom: {
      std::string head = f.pred_var ? "?" + f.pred : f.pred;
      if (f.args.empty()) return head;
      std::string out = "(" + head;
      for (const auto& a : f.args) out += " " + print_term(a);
      return out + ")";
    }
    case Conn::Utility:
      return std::string("(") + to_string(f.cmp) + " (nu " + print_term(f.args[0]) + " " +
             print_term(f.args[1]) + ") " + to_string(f.bound) + ")";
    case Conn::Not:
      return "(not " + print_formula(f.kids[0]) + ")";
    case Conn::And:
    case Conn::Or: {
      std::string out = f.kind == Conn::And ? "(and" : "(or";
      for (const auto& k : f.kids) out += " " + print_formula(k);
      return out + ")";
    }
    case Conn::Implies:
      return "(implies " + print_formula(f.kids[0]) + " " + print_formula(f.kids[1]) + ")";
    case Conn::Iff:
      return "(iff " + print_formula(f.kids[0]) + " " + print_formula(f.kids[1]) + ")";
    case Conn::Forall:
      return print_quantifier("forall", f);
    case Conn::Exists:
      return print_quantifier("exists", f);
    case Conn::CountAtLeast:
      return print_quantifier("exists-atleast", f);
    case Conn::CountExact:
      return print_quantifier("exists-exactly", f);
    case Conn::Modal: {
      std::string out = std::string("(") + to_string(f.op);
      if (f.op == ModalOp::Trait) {
        out += " " + print_formula(f.kids[0]) + " " + print_term(f.agents[0]);
        return out + ")";
      }
      for (const auto& a : f.agents) out += " " + print_term(a);
      if (f.time) out += " " + print_term(*f.time);
      out += " " + print_formula(f.kids[0]);
      if (f.op == ModalOp::Ought) out += " " + print_formula(f.kids[1]);
      return out + ")";
    }
  }
  return "?";
}

}  // namespace exemplar
