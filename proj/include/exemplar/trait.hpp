#pragma once

#include <string>
#include <vector>

#include "exemplar/formula.hpp"
#include "exemplar/signature.hpp"
#include "exemplar/subst.hpp"
#include "exemplar/term.hpp"

namespace exemplar {

// One observed exemplar action: the situation snapshot (ground formulas
// describing the learner's view at that moment) plus the performed action.
struct Observation {
  std::vector<Formula> situation;
  Term action_type;  // ground
  long long time = 0;
  std::string performer;
};

// <situation, action type> pair generalized from observations. The situation
// carries free variables including the shared time variable T; the action
// type's variables are covered by the situation's (plus T).
struct Trait {
  std::string owner;
  std::string learned_from;
  std::vector<Formula> situation;
  Term action_type;
  Term time_var;
  long long learned_at = 0;
  std::vector<Observation> observations;
  std::vector<Substitution> witnesses;

  // tau = sigma /\ happens(action(agent, alpha), T)
  Formula single_formula(const std::string& agent, const Signature& sig) const;
  // single_formula with the owner constant abstracted to ?self:Agent, the
  // form trait identity is compared under.
  Formula canonical_formula(const Signature& sig) const;
};

// Replace every occurrence of an Agent constant by a variable.
Formula replace_agent_constant(const Formula& f, const std::string& constant, const Term& var);

}  // namespace exemplar
