#include "exemplar/trait.hpp"

namespace exemplar {

namespace {

Term replace_in_term(const Term& t, const std::string& constant, const Term& repl) {
  if (t.is_const() && t.name == constant) return repl;
  if (!t.is_app()) return t;
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const auto& a : t.args) args.push_back(replace_in_term(a, constant, repl));
  return Term::app(t.name, t.sort, std::move(args));
}

}  // namespace

Formula replace_agent_constant(const Formula& f, const std::string& constant, const Term& repl) {
  Formula out = f;
  for (auto& t : out.args) t = replace_in_term(t, constant, repl);
  for (auto& a : out.agents) a = replace_in_term(a, constant, repl);
  if (out.time) out.time = replace_in_term(*out.time, constant, repl);
  for (auto& k : out.kids) k = replace_agent_constant(k, constant, repl);
  return out;
}

Formula Trait::single_formula(const std::string& agent, const Signature& sig) const {
  Term agent_term = Term::constant(agent, sig.constant_sort(agent).value_or(sorts::Agent));
  std::vector<Formula> parts;
  for (const auto& s : situation)
    parts.push_back(agent == owner ? s : replace_agent_constant(s, owner, agent_term));
  parts.push_back(Formula::atom(
      "happens", {Term::app("action", sorts::Action, {agent_term, action_type}), time_var}));
  return Formula::conj(std::move(parts));
}

Formula Trait::canonical_formula(const Signature& sig) const {
  return replace_agent_constant(single_formula(owner, sig), owner,
                                Term::var("self", sorts::Agent));
}

}  // namespace exemplar
