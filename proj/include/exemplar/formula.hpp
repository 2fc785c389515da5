#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "exemplar/rational.hpp"
#include "exemplar/term.hpp"

namespace exemplar {

enum class Conn {
  Atom,
  Utility,  // cmp(nu(event, time), bound)
  Not,
  And,
  Or,
  Implies,
  Iff,
  Forall,
  Exists,
  CountAtLeast,  // exists^{>=n}
  CountExact,    // exists^{!n}
  Modal,
};

enum class ModalOp {
  Perceives,
  Knows,
  Believes,
  Desires,
  Intends,
  Ought,
  Says,    // two-agent (a,b,t,phi) or one-agent (a,t,phi)
  Common,  // (t, phi)
  Trait,   // (tau, a)
};

const char* to_string(ModalOp op);

enum class CmpOp { Gt, Ge, Lt, Le, Eq };

const char* to_string(CmpOp op);

struct Formula {
  Conn kind = Conn::Atom;

  // Atom: predicate + args; pred_var marks a predicate variable head (from
  // higher-order anti-unification). Utility: args = {event, time}.
  std::string pred;
  bool pred_var = false;
  std::vector<Term> args;

  CmpOp cmp = CmpOp::Gt;
  Rational bound{0};

  // Connective / quantifier / modal children.
  // Not: kids[0]. Implies/Iff: kids[0], kids[1]. And/Or: n-ary (>= 1).
  // Quantifiers: kids[0] = body. Modal: kids[0] = body, Ought also kids[1] =
  // the (possibly negated) happens clause.
  std::vector<Formula> kids;

  std::optional<Term> binder;  // quantifiers
  long long count = 0;         // counting quantifiers

  ModalOp op = ModalOp::Believes;
  std::vector<Term> agents;    // modal agent terms (Says may have two)
  std::optional<Term> time;    // modal time term (absent for Trait)

  static Formula atom(std::string pred, std::vector<Term> args = {});
  static Formula pred_var_atom(std::string name, std::vector<Term> args);
  static Formula utility(Term event, Term time, CmpOp cmp, Rational bound);
  static Formula negation(Formula f);
  static Formula conj(std::vector<Formula> fs);  // flattens singletons
  static Formula disj(std::vector<Formula> fs);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula forall(Term var, Formula body);
  static Formula exists(Term var, Formula body);
  static Formula count_at_least(long long n, Term var, Formula body);
  static Formula count_exact(long long n, Term var, Formula body);
  static Formula modal(ModalOp op, std::vector<Term> agents, std::optional<Term> time,
                       Formula body);
  static Formula believes(Term agent, Term time, Formula body);
  static Formula knows(Term agent, Term time, Formula body);
  static Formula says(Term speaker, Term hearer, Term time, Formula body);
  static Formula says(Term speaker, Term time, Formula body);
  static Formula common(Term time, Formula body);
  static Formula ought(Term agent, Term time, Formula condition, Formula happens_clause);
  static Formula trait(Formula tau, Term agent);
  static Formula equals(Term a, Term b);

  bool is_atom(const std::string& p) const { return kind == Conn::Atom && pred == p; }
  bool is_modal(ModalOp o) const { return kind == Conn::Modal && op == o; }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }
};

// Free variables in first-occurrence order.
std::vector<Term> free_variables(const Formula& f);
// Free predicate variables (name -> arity order of first occurrence).
std::vector<std::pair<std::string, size_t>> free_predicate_variables(const Formula& f);

bool contains_predicate_variables(const Formula& f);

// Constant and functor names occurring anywhere in the formula.
void collect_symbols(const Formula& f, std::set<std::string>& out);

// Conjunction as list (flattens nested And); singletons yield {f}.
std::vector<Formula> conjuncts_of(const Formula& f);

size_t modal_depth(const Formula& f);

}  // namespace exemplar
