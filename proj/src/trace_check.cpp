#include "exemplar/trace_check.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "exemplar/parser.hpp"
#include "exemplar/printer.hpp"
#include "exemplar/subst.hpp"

namespace exemplar {

namespace {

struct Scope {
  std::set<std::string> established;
  Signature sig;
  const Scenario* scn = nullptr;
  std::string believer;  // non-empty inside a belief context
  long long horizon = 0;
  std::string* error = nullptr;

  bool fail(const std::string& msg) {
    if (error && error->empty()) *error = msg;
    return false;
  }

  std::optional<Formula> parse(const std::string& text) {
    auto r = parse_formula(text, sig);
    if (!r.ok()) return std::nullopt;
    return *r;
  }

  bool known(const std::string& printed) const { return established.count(printed) > 0; }
};

// -- independent one-sided matcher (variables in the pattern bind) ----------

bool cmatch_term(const Term& pat, const Term& tgt, std::map<std::string, Term>& binds) {
  if (pat.is_var()) {
    auto it = binds.find(pat.name);
    if (it != binds.end()) return print_term(it->second) == print_term(tgt);
    binds[pat.name] = tgt;
    return true;
  }
  if (pat.kind != tgt.kind || pat.name != tgt.name || pat.args.size() != tgt.args.size())
    return false;
  for (size_t i = 0; i < pat.args.size(); ++i)
    if (!cmatch_term(pat.args[i], tgt.args[i], binds)) return false;
  return true;
}

bool cmatch(const Formula& pat, const Formula& tgt, std::map<std::string, Term>& binds) {
  if (pat.kind != tgt.kind) return false;
  switch (pat.kind) {
    case Conn::Atom: {
      if (pat.pred_var || tgt.pred_var) return false;
      if (pat.pred != tgt.pred || pat.args.size() != tgt.args.size()) return false;
      for (size_t i = 0; i < pat.args.size(); ++i)
        if (!cmatch_term(pat.args[i], tgt.args[i], binds)) return false;
      return true;
    }
    case Conn::Utility:
      return pat.cmp == tgt.cmp && pat.bound == tgt.bound &&
             cmatch_term(pat.args[0], tgt.args[0], binds) &&
             cmatch_term(pat.args[1], tgt.args[1], binds);
    case Conn::Modal: {
      if (pat.op != tgt.op || pat.agents.size() != tgt.agents.size() ||
          pat.time.has_value() != tgt.time.has_value() || pat.kids.size() != tgt.kids.size())
        return false;
      for (size_t i = 0; i < pat.agents.size(); ++i)
        if (!cmatch_term(pat.agents[i], tgt.agents[i], binds)) return false;
      if (pat.time && !cmatch_term(*pat.time, *tgt.time, binds)) return false;
      for (size_t i = 0; i < pat.kids.size(); ++i)
        if (!cmatch(pat.kids[i], tgt.kids[i], binds)) return false;
      return true;
    }
    case Conn::Forall:
    case Conn::Exists:
    case Conn::CountAtLeast:
    case Conn::CountExact:
      return false;
    default: {
      if (pat.kids.size() != tgt.kids.size()) return false;
      for (size_t i = 0; i < pat.kids.size(); ++i)
        if (!cmatch(pat.kids[i], tgt.kids[i], binds)) return false;
      return true;
    }
  }
}

Formula subst_binds(const Formula& f, const std::map<std::string, Term>& binds) {
  Substitution s;
  for (const auto& [k, v] : binds) s.bind(k, v);
  return apply_substitution(f, s);
}

// -- independent native evaluation ------------------------------------------

struct Facts {
  std::vector<std::pair<Term, long long>> happens;
  std::vector<Term> initial_holds;
  std::vector<std::pair<Term, Term>> laws_init;  // event pattern, fluent pattern
  std::vector<std::pair<Term, Term>> laws_term;
};

Facts gather_facts(Scope& scope) {
  Facts out;
  auto absorb = [&](const Formula& f) {
    const Formula* body = &f;
    while (body->kind == Conn::Forall) body = &body->kids[0];
    if (body->kind == Conn::And) {
      for (const auto& k : body->kids) {
        if (k.kind != Conn::Atom) continue;
        if (k.pred == "happens" && k.args[1].moment_value() && k.args[0].ground())
          out.happens.push_back({k.args[0], *k.args[1].moment_value()});
        if (k.pred == "holds" && k.args[1].moment_value() == 0 && k.args[0].ground())
          out.initial_holds.push_back(k.args[0]);
      }
      return;
    }
    if (body->kind != Conn::Atom) return;
    if (body->pred == "happens" && body->args.size() == 2 && body->args[1].moment_value() &&
        body->args[0].ground())
      out.happens.push_back({body->args[0], *body->args[1].moment_value()});
    if (body->pred == "holds" && body->args.size() == 2 &&
        body->args[1].moment_value() == 0 && body->args[0].ground())
      out.initial_holds.push_back(body->args[0]);
    if ((body->pred == "initiates" || body->pred == "terminates") && body->args.size() == 3) {
      auto& dst = body->pred == "initiates" ? out.laws_init : out.laws_term;
      dst.push_back({body->args[0], body->args[1]});
    }
  };
  for (const auto& printed : scope.established) {
    auto f = scope.parse(printed);
    if (f) absorb(*f);
  }
  if (scope.believer.empty()) {
    // Global view: the scenario's declared facts and laws sit underneath.
    if (scope.scn) {
      for (const auto& h : scope.scn->happens) out.happens.push_back({h.event, h.time});
      for (const auto& f : scope.scn->initial_holds) out.initial_holds.push_back(f);
      for (const auto& law : scope.scn->laws) {
        auto& dst =
            law.kind == CausalLaw::Kind::Initiates ? out.laws_init : out.laws_term;
        dst.push_back({law.event_pattern, law.fluent_pattern});
      }
    }
  } else if (out.laws_init.empty() && out.laws_term.empty() && scope.scn) {
    // Belief contexts fall back to the global laws when none are believed.
    for (const auto& law : scope.scn->laws) {
      auto& dst = law.kind == CausalLaw::Kind::Initiates ? out.laws_init : out.laws_term;
      dst.push_back({law.event_pattern, law.fluent_pattern});
    }
  }
  return out;
}

std::vector<Term> matched_fluents(const std::vector<std::pair<Term, Term>>& laws,
                                  const Term& event) {
  std::vector<Term> out;
  std::set<std::string> seen;
  for (const auto& [ev, fl] : laws) {
    std::map<std::string, Term> binds;
    if (!cmatch_term(ev, event, binds)) continue;
    Substitution s;
    for (const auto& [k, v] : binds) s.bind(k, v);
    Term inst = apply_substitution(fl, s);
    if (seen.insert(print_term(inst)).second) out.push_back(inst);
  }
  return out;
}

Rational lookup_mu(Scope& scope, const Term& fluent, long long t) {
  if (!scope.scn) return Rational(0);
  const UtilityTable* table = &scope.scn->mu;
  if (!scope.believer.empty()) {
    auto it = scope.scn->private_mu.find(scope.believer);
    if (it != scope.scn->private_mu.end()) table = &it->second;
  }
  auto it = table->find({print_term(fluent), t});
  return it == table->end() ? Rational(0) : it->second;
}

std::optional<bool> native_eval(Scope& scope, const Formula& f) {
  switch (f.kind) {
    case Conn::Atom: {
      if (f.pred == "prior") {
        auto a = f.args[0].moment_value(), b = f.args[1].moment_value();
        if (!a || !b) return std::nullopt;
        return *a < *b;
      }
      if (f.pred == "=") {
        if (!f.args[0].ground() || !f.args[1].ground()) return std::nullopt;
        return print_term(f.args[0]) == print_term(f.args[1]);
      }
      if (f.pred == "holds") {
        auto t = f.args[1].moment_value();
        if (!t || !f.args[0].ground()) return std::nullopt;
        Facts facts = gather_facts(scope);
        std::string key = print_term(f.args[0]);
        std::vector<long long> inits, terms;
        for (const auto& g : facts.initial_holds)
          if (print_term(g) == key) inits.push_back(-1);
        for (const auto& [ev, et] : facts.happens) {
          for (const auto& g : matched_fluents(facts.laws_init, ev))
            if (print_term(g) == key) inits.push_back(et);
          for (const auto& g : matched_fluents(facts.laws_term, ev))
            if (print_term(g) == key) terms.push_back(et);
        }
        for (long long p : inits) {
          if (p >= *t) continue;
          bool clipped = std::any_of(terms.begin(), terms.end(),
                                     [&](long long q) { return p < q && q < *t; });
          if (!clipped) return true;
        }
        return false;
      }
      return std::nullopt;
    }
    case Conn::Utility: {
      auto t = f.args[1].moment_value();
      if (!t || !f.args[0].ground()) return std::nullopt;
      Term event = f.args[0];
      if (scope.sig.subsort(event.sort, sorts::ActionType)) {
        std::string actor = scope.believer;
        if (actor.empty() && scope.scn) {
          auto agents = scope.scn->signature.constants_of_sort(sorts::Agent);
          if (!agents.empty()) actor = agents.front();
        }
        if (actor.empty()) return std::nullopt;
        event = Term::app("action", sorts::Action,
                          {Term::constant(actor, sorts::Agent), event});
      }
      long long horizon = scope.scn ? scope.scn->config.horizon : scope.horizon;
      if (*t >= horizon) return std::nullopt;
      Facts facts = gather_facts(scope);
      auto inits = matched_fluents(facts.laws_init, event);
      auto terms = matched_fluents(facts.laws_term, event);
      Rational total(0);
      for (long long y = *t + 1; y <= horizon; ++y) {
        for (const auto& g : inits) total += lookup_mu(scope, g, y);
        for (const auto& g : terms) total -= lookup_mu(scope, g, y);
      }
      switch (f.cmp) {
        case CmpOp::Gt: return total > f.bound;
        case CmpOp::Ge: return total >= f.bound;
        case CmpOp::Lt: return total < f.bound;
        case CmpOp::Le: return total <= f.bound;
        case CmpOp::Eq: return total == f.bound;
      }
      return std::nullopt;
    }
    case Conn::Not: {
      auto inner = native_eval(scope, f.kids[0]);
      if (!inner) return std::nullopt;
      return !*inner;
    }
    default:
      return std::nullopt;
  }
}

bool established_or_native(Scope& scope, const Formula& f) {
  if (scope.known(print_formula(f))) return true;
  if (f.kind == Conn::And)
    return std::all_of(f.kids.begin(), f.kids.end(),
                       [&](const Formula& k) { return established_or_native(scope, k); });
  if (f.kind == Conn::Or)
    return std::any_of(f.kids.begin(), f.kids.end(),
                       [&](const Formula& k) { return established_or_native(scope, k); });
  auto nat = native_eval(scope, f);
  return nat && *nat;
}

bool replay_steps(const std::vector<ProofStep>& steps, Scope& scope);

bool replay_scoped(const std::vector<ProofStep>& steps, Scope& parent,
                   std::set<std::string> axioms, const std::string& believer,
                   std::string* final_conclusion) {
  Scope inner;
  inner.established = std::move(axioms);
  inner.sig = parent.sig;
  inner.scn = parent.scn;
  inner.believer = believer;
  inner.horizon = parent.horizon;
  inner.error = parent.error;
  if (!replay_steps(steps, inner)) return false;
  if (final_conclusion && !steps.empty()) *final_conclusion = steps.back().conclusion;
  return true;
}

bool check_step(const ProofStep& s, Scope& scope) {
  auto conclusion = scope.parse(s.conclusion);
  if (!conclusion) return scope.fail("unparsable conclusion: " + s.conclusion);
  auto premise = [&](size_t i) -> std::optional<Formula> {
    if (i >= s.premises.size()) return std::nullopt;
    return scope.parse(s.premises[i]);
  };
  auto premises_established = [&]() {
    return std::all_of(s.premises.begin(), s.premises.end(),
                       [&](const std::string& p) { return scope.known(p); });
  };

  if (s.rule == "axiom") return scope.known(s.conclusion) || scope.fail("axiom not in kb: " + s.conclusion);

  if (s.rule == "native") {
    auto v = native_eval(scope, *conclusion);
    if (v && *v) return true;
    if (conclusion->kind == Conn::Not) {
      auto v2 = native_eval(scope, conclusion->kids[0]);
      if (v2 && !*v2) return true;
    }
    return scope.fail("native re-evaluation failed: " + s.conclusion);
  }

  if (s.rule == "and-elim") {
    auto p = premise(0);
    if (!p || !premises_established()) return scope.fail("and-elim premise missing");
    for (const auto& k : conjuncts_of(*p))
      if (k == *conclusion) return true;
    return scope.fail("and-elim: conclusion is not a conjunct");
  }

  if (s.rule == "iff-elim") {
    auto p = premise(0);
    if (!p || p->kind != Conn::Iff || !premises_established())
      return scope.fail("iff-elim premise missing");
    return *conclusion == Formula::implies(p->kids[0], p->kids[1]) ||
           *conclusion == Formula::implies(p->kids[1], p->kids[0]) ||
           scope.fail("iff-elim: wrong conclusion");
  }

  if (s.rule == "mp") {
    auto imp = premise(0);
    if (!imp || imp->kind != Conn::Implies || !scope.known(s.premises[0]))
      return scope.fail("mp: implication missing");
    if (imp->kids[1] != *conclusion) return scope.fail("mp: conclusion mismatch");
    return established_or_native(scope, imp->kids[0]) ||
           scope.fail("mp: antecedent not established: " + print_formula(imp->kids[0]));
  }

  if (s.rule == "inst") {
    auto all = premise(0);
    if (!all || !scope.known(s.premises[0])) return scope.fail("inst: premise missing");
    Formula body = *all;
    while (body.kind == Conn::Forall) {
      Formula inner = body.kids[0];
      body = std::move(inner);
    }
    std::map<std::string, Term> binds;
    // The conclusion may itself still be universally quantified (layered
    // instantiation); strip identically.
    Formula target = *conclusion;
    if (cmatch(body, target, binds) &&
        print_formula(subst_binds(body, binds)) == s.conclusion)
      return true;
    // Partial instantiation: conclusion = body with one binder substituted.
    Formula one = *all;
    if (one.kind == Conn::Forall) {
      std::map<std::string, Term> b2;
      Formula inner_body = one.kids[0];
      // try: conclusion == inner_body[x -> t] for some t
      std::vector<std::string> dummy;
      // brute: match inner_body against conclusion
      if (cmatch(inner_body, target, b2)) {
        return print_formula(subst_binds(inner_body, b2)) == s.conclusion ||
               scope.fail("inst: substitution mismatch");
      }
    }
    return scope.fail("inst: conclusion does not instantiate the premise");
  }

  if (s.rule == "from-universal") {
    auto all = premise(0);
    if (!all || !scope.known(s.premises[0]))
      return scope.fail("from-universal: premise missing");
    Formula body = *all;
    while (body.kind == Conn::Forall) {
      Formula inner = body.kids[0];
      body = std::move(inner);
    }
    if (body.kind != Conn::Implies) return scope.fail("from-universal: not an implication");
    std::map<std::string, Term> binds;
    if (!cmatch(body.kids[1], *conclusion, binds))
      return scope.fail("from-universal: consequent does not match conclusion");
    Formula ant = subst_binds(body.kids[0], binds);
    Scope sub_scope = scope;
    if (!replay_steps(s.sub, sub_scope)) return false;
    return established_or_native(sub_scope, ant) ||
           scope.fail("from-universal: antecedent not established: " + print_formula(ant));
  }

  if (s.rule == "I_12") {
    auto p = premise(0);
    if (!p || !scope.known(s.premises[0])) return scope.fail("I_12: premise missing");
    if (!p->is_modal(ModalOp::Says) || p->agents.size() != 2)
      return scope.fail("I_12: premise is not a two-agent says");
    Formula expect = Formula::believes(p->agents[1], *p->time,
                                       Formula::believes(p->agents[0], *p->time, p->kids[0]));
    return *conclusion == expect || scope.fail("I_12: conclusion mismatch");
  }

  if (s.rule == "I_14") {
    if (s.premises.size() != 3 || !premises_established())
      return scope.fail("I_14: premises missing");
    auto bel_phi = premise(0);
    auto bel_ought = premise(1);
    auto ought = premise(2);
    if (!bel_phi || !bel_ought || !ought) return scope.fail("I_14: unparsable premises");
    if (!ought->is_modal(ModalOp::Ought)) return scope.fail("I_14: third premise not ought");
    const Term& agent = ought->agents[0];
    const Term& time = *ought->time;
    if (*bel_phi != Formula::believes(agent, time, ought->kids[0]))
      return scope.fail("I_14: first premise mismatch");
    if (*bel_ought != Formula::believes(agent, time, *ought))
      return scope.fail("I_14: second premise mismatch");
    Formula expect = Formula::knows(
        agent, time, Formula::modal(ModalOp::Intends, {agent}, time, ought->kids[1]));
    return *conclusion == expect || scope.fail("I_14: conclusion mismatch");
  }

  if (s.rule == "believes-context" && s.premises.empty() && !s.sub.empty()) {
    // A belief materialized from a whole top-level proof: the subproof runs
    // in the current scope and must conclude this very formula.
    Scope probe = scope;
    if (!replay_steps(s.sub, probe)) return false;
    return probe.established.count(s.conclusion) > 0 ||
           scope.fail("believes-context: subproof does not conclude the belief");
  }

  if (s.rule == "I_B" || s.rule == "believes-context") {
    if (!conclusion->is_modal(ModalOp::Believes))
      return scope.fail(s.rule + ": conclusion is not a belief");
    auto t2 = conclusion->time->moment_value();
    if (!t2) return scope.fail(s.rule + ": non-numeric time");
    const std::string agent = conclusion->agents[0].name;
    std::set<std::string> ctx_axioms;
    for (const auto& ps : s.premises) {
      auto p = scope.parse(ps);
      if (!p || !scope.known(ps)) return scope.fail(s.rule + ": premise missing: " + ps);
      if (!p->is_modal(ModalOp::Believes) || p->agents[0].name != agent)
        return scope.fail(s.rule + ": premise is not this agent's belief");
      auto t1 = p->time->moment_value();
      if (!t1) return scope.fail(s.rule + ": premise time");
      if (s.rule == "I_B" ? *t1 >= *t2 : *t1 > *t2)
        return scope.fail(s.rule + ": premise time not before conclusion time");
      ctx_axioms.insert(print_formula(p->kids[0]));
    }
    std::string final;
    Scope probe = scope;
    if (!replay_scoped(s.sub, probe, ctx_axioms, agent, &final)) return false;
    // The believed formula must be the subproof's result.
    Scope check;
    check.established = ctx_axioms;
    for (const auto& st : s.sub) check.established.insert(st.conclusion);
    check.sig = scope.sig;
    return check.established.count(print_formula(conclusion->kids[0])) > 0 ||
           scope.fail(s.rule + ": subproof does not conclude the believed formula");
  }

  if (s.rule == "and-intro") {
    if (conclusion->kind != Conn::And) return scope.fail("and-intro: not a conjunction");
    for (const auto& k : conclusion->kids)
      if (!established_or_native(scope, k))
        return scope.fail("and-intro: conjunct not established: " + print_formula(k));
    return true;
  }

  if (s.rule == "or-intro") {
    if (conclusion->kind != Conn::Or) return scope.fail("or-intro: not a disjunction");
    auto p = premise(0);
    if (!p || !scope.known(s.premises[0])) return scope.fail("or-intro: premise missing");
    for (const auto& k : conclusion->kids)
      if (k == *p) return true;
    return scope.fail("or-intro: premise is not a disjunct");
  }

  if (s.rule == "iff-intro") {
    if (conclusion->kind != Conn::Iff) return scope.fail("iff-intro: not an iff");
    return premises_established() || scope.fail("iff-intro: directions not established");
  }

  if (s.rule == "implies-intro") {
    if (conclusion->kind != Conn::Implies) return scope.fail("implies-intro: not implication");
    std::set<std::string> axioms = scope.established;
    for (const auto& c : conjuncts_of(conclusion->kids[0])) axioms.insert(print_formula(c));
    Scope probe = scope;
    if (!replay_scoped(s.sub, probe, axioms, scope.believer, nullptr)) return false;
    std::set<std::string> holds = axioms;
    for (const auto& st : s.sub) holds.insert(st.conclusion);
    return holds.count(print_formula(conclusion->kids[1])) > 0 ||
           scope.fail("implies-intro: consequent not derived");
  }

  if (s.rule == "forall-intro") {
    if (conclusion->kind != Conn::Forall) return scope.fail("forall-intro: not universal");
    auto pos = s.note.find("skolem ");
    if (pos == std::string::npos) return scope.fail("forall-intro: no skolem note");
    std::string decl = s.note.substr(pos + 7);
    auto colon = decl.find(':');
    if (colon == std::string::npos) return scope.fail("forall-intro: bad skolem note");
    std::string name = decl.substr(0, colon), sort = decl.substr(colon + 1);
    Scope probe = scope;
    probe.sig.declare_constant(name, sort);
    Substitution sub;
    sub.bind(conclusion->binder->name, Term::constant(name, sort));
    Formula instance = apply_substitution(conclusion->kids[0], sub);
    if (!replay_steps(s.sub, probe)) return false;
    std::set<std::string> holds = probe.established;
    return holds.count(print_formula(instance)) > 0 ||
           scope.fail("forall-intro: instance not derived");
  }

  if (s.rule == "exists-intro") {
    if (conclusion->kind != Conn::Exists) return scope.fail("exists-intro: not existential");
    auto p = premise(0);
    if (!p || !scope.known(s.premises[0])) return scope.fail("exists-intro: premise missing");
    std::map<std::string, Term> binds;
    return cmatch(conclusion->kids[0], *p, binds) ||
           scope.fail("exists-intro: premise is not an instance of the body");
  }

  if (s.rule == "count") {
    if (conclusion->kind != Conn::CountAtLeast && conclusion->kind != Conn::CountExact)
      return scope.fail("count: not a counting quantifier");
    std::set<std::string> distinct;
    for (const auto& ps : s.premises) {
      auto p = scope.parse(ps);
      if (!p) return scope.fail("count: unparsable witness instance");
      std::map<std::string, Term> binds;
      if (!cmatch(conclusion->kids[0], *p, binds))
        return scope.fail("count: premise is not an instance of the body");
      if (!established_or_native(scope, *p))
        return scope.fail("count: witness instance not established: " + ps);
      auto it = binds.find(conclusion->binder->name);
      distinct.insert(it == binds.end() ? ps : print_term(it->second));
    }
    long long c = static_cast<long long>(distinct.size());
    // Exactness is a closed-world count over the kb; the replay verifies the
    // claimed witnesses and the arithmetic.
    bool ok = conclusion->kind == Conn::CountAtLeast ? c >= conclusion->count
                                                     : c == conclusion->count;
    return ok || scope.fail("count: arithmetic does not support the conclusion");
  }

  // Virtue-layer assertions: verified shape-wise here, their semantics are
  // covered by the virtue module's own tests.
  if (s.rule == "admiration") {
    return conclusion->is_atom("holds") ||
           scope.fail("admiration: conclusion is not a holds atom");
  }
  if (s.rule == "trait-fire" || s.rule == "exemplar" || s.rule == "I_Trait" ||
      s.rule == "learn-trait") {
    return true;
  }

  return scope.fail("unknown rule: " + s.rule);
}

bool replay_steps(const std::vector<ProofStep>& steps, Scope& scope) {
  for (const auto& s : steps) {
    if (!check_step(s, scope)) {
      if (scope.error && scope.error->empty())
        *scope.error = "step failed [" + s.rule + "] " + s.conclusion;
      return false;
    }
    scope.established.insert(s.conclusion);
  }
  return true;
}

}  // namespace

bool replay_trace(const std::vector<ProofStep>& steps, const std::vector<std::string>& axioms,
                  const Scenario* scn, const Signature& sig, std::string* error,
                  long long horizon) {
  Scope scope;
  scope.established.insert(axioms.begin(), axioms.end());
  scope.sig = sig;
  scope.scn = scn;
  scope.horizon = horizon >= 0 ? horizon : (scn ? scn->config.horizon : 0);
  scope.error = error;
  return replay_steps(steps, scope);
}

}  // namespace exemplar
