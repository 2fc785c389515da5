#pragma once

#include <map>
#include <string>

#include "exemplar/formula.hpp"
#include "exemplar/term.hpp"

namespace exemplar {

struct Substitution {
  std::map<std::string, Term> terms;         // variable name -> term
  std::map<std::string, std::string> preds;  // predicate variable -> predicate symbol

  bool empty() const { return terms.empty() && preds.empty(); }
  void bind(const std::string& var, Term t) { terms.insert_or_assign(var, std::move(t)); }
  void bind_pred(const std::string& pv, std::string p) { preds.insert_or_assign(pv, std::move(p)); }

  bool operator==(const Substitution& other) const = default;
};

Term apply_substitution(const Term& t, const Substitution& s);
// Capture-avoiding: binders whose variable occurs free in the substitution
// range are renamed before descending.
Formula apply_substitution(const Formula& f, const Substitution& s);

// apply(f, compose(s1, s2)) == apply(apply(f, s1), s2)
Substitution compose(const Substitution& s1, const Substitution& s2);

std::string to_string(const Substitution& s);

}  // namespace exemplar
