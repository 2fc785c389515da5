#include "exemplar/prover.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <map>
#include <set>

#include "exemplar/antiunify.hpp"
#include "exemplar/eventcalc.hpp"
#include "exemplar/printer.hpp"
#include "exemplar/subst.hpp"
#include "exemplar/unify.hpp"

namespace exemplar {

ProverBounds bounds_from_config(const ScenarioConfig& cfg) {
  return ProverBounds{cfg.max_rounds, cfg.max_modal_depth, cfg.max_term_depth, cfg.budget_ms};
}

namespace {

constexpr int kMaxGoalDepth = 32;
constexpr size_t kMaxInstantiations = 512;

// Storage backing a WorldView assembled from a scenario and/or kb content.
struct ViewData {
  std::vector<CausalLaw> laws;
  UtilityTable mu;
  std::vector<HappensFact> happens;
  std::vector<Term> initial_holds;
  long long horizon = 0;

  WorldView view() const { return WorldView{&laws, &mu, &happens, &initial_holds, horizon}; }
};

void collect_fact_atoms(const Formula& f, std::vector<HappensFact>& happens,
                        std::vector<Term>& initial_holds, std::vector<CausalLaw>& laws) {
  if (f.kind == Conn::And) {
    for (const auto& k : f.kids) collect_fact_atoms(k, happens, initial_holds, laws);
    return;
  }
  // Strip universal closure for causal-law shapes.
  const Formula* body = &f;
  while (body->kind == Conn::Forall) body = &body->kids[0];
  if (body->kind != Conn::Atom) return;
  if (body->pred == "happens" && body->args.size() == 2) {
    auto t = body->args[1].moment_value();
    if (t && body->args[0].ground()) happens.push_back({body->args[0], *t});
  } else if (body->pred == "holds" && body->args.size() == 2) {
    auto t = body->args[1].moment_value();
    if (t && *t == 0 && body->args[0].ground()) initial_holds.push_back(body->args[0]);
  } else if ((body->pred == "initiates" || body->pred == "terminates") &&
             body->args.size() == 3) {
    std::set<std::string> ev_vars;
    for (const auto& v : variables_of(body->args[0])) ev_vars.insert(v.name);
    bool covered = true;
    for (const auto& v : variables_of(body->args[1]))
      if (!ev_vars.count(v.name)) covered = false;
    if (covered) {
      CausalLaw law;
      law.kind = body->pred == "initiates" ? CausalLaw::Kind::Initiates
                                           : CausalLaw::Kind::Terminates;
      law.event_pattern = body->args[0];
      law.fluent_pattern = body->args[1];
      laws.push_back(std::move(law));
    }
  }
}

ViewData make_global_view(const Scenario* scn, const KnowledgeBase& kb) {
  ViewData v;
  v.horizon = kb.horizon();
  if (scn) {
    v.laws = scn->laws;
    v.mu = scn->mu;
    v.happens = scn->happens;
    v.initial_holds = scn->initial_holds;
    v.horizon = std::max(v.horizon, scn->config.horizon);
  }
  std::set<std::string> seen;
  for (const auto& h : v.happens) seen.insert(print_term(h.event) + "@" + std::to_string(h.time));
  for (int id : kb.by_head("happens")) {
    const Formula& f = kb.formula(id);
    auto t = f.args[1].moment_value();
    if (!t || !f.args[0].ground()) continue;
    std::string key = print_term(f.args[0]) + "@" + std::to_string(*t);
    if (seen.insert(key).second) v.happens.push_back({f.args[0], *t});
  }
  for (int id : kb.by_head("holds")) {
    const Formula& f = kb.formula(id);
    auto t = f.args[1].moment_value();
    if (t && *t == 0 && f.args[0].ground()) v.initial_holds.push_back(f.args[0]);
  }
  return v;
}

// View through an agent's beliefs: believed laws (global laws when none),
// believed happens/initial facts, private mu when declared.
ViewData make_context_view(const Scenario* scn, const std::string& agent,
                           const std::vector<Formula>& premises, long long horizon) {
  ViewData v;
  v.horizon = horizon;
  for (const auto& p : premises) collect_fact_atoms(p, v.happens, v.initial_holds, v.laws);
  if (scn) {
    v.horizon = std::max(v.horizon, scn->config.horizon);
    if (v.laws.empty()) v.laws = scn->laws;
    auto it = scn->private_mu.find(agent);
    v.mu = it != scn->private_mu.end() ? it->second : scn->mu;
  }
  return v;
}

// One-sided structural matching of quantifier-free formulas; pattern
// variables bind, predicate-variable patterns are rejected.
bool match_formula(const Formula& pattern, const Formula& target, Substitution& s) {
  if (pattern.kind != target.kind) return false;
  auto match_term = [&](const Term& p, const Term& t) {
    auto res = match_pattern(p, t, s);
    if (!res) return false;
    s = *res;
    return true;
  };
  switch (pattern.kind) {
    case Conn::Atom: {
      if (pattern.pred_var || target.pred_var) return false;
      if (pattern.pred != target.pred || pattern.args.size() != target.args.size())
        return false;
      for (size_t i = 0; i < pattern.args.size(); ++i)
        if (!match_term(pattern.args[i], target.args[i])) return false;
      return true;
    }
    case Conn::Utility: {
      if (pattern.cmp != target.cmp || pattern.bound != target.bound) return false;
      return match_term(pattern.args[0], target.args[0]) &&
             match_term(pattern.args[1], target.args[1]);
    }
    case Conn::Modal: {
      if (pattern.op != target.op || pattern.agents.size() != target.agents.size() ||
          pattern.time.has_value() != target.time.has_value() ||
          pattern.kids.size() != target.kids.size())
        return false;
      for (size_t i = 0; i < pattern.agents.size(); ++i)
        if (!match_term(pattern.agents[i], target.agents[i])) return false;
      if (pattern.time && !match_term(*pattern.time, *target.time)) return false;
      for (size_t i = 0; i < pattern.kids.size(); ++i)
        if (!match_formula(pattern.kids[i], target.kids[i], s)) return false;
      return true;
    }
    case Conn::Forall:
    case Conn::Exists:
    case Conn::CountAtLeast:
    case Conn::CountExact:
      return false;  // no matching under binders
    default: {
      if (pattern.kids.size() != target.kids.size()) return false;
      for (size_t i = 0; i < pattern.kids.size(); ++i)
        if (!match_formula(pattern.kids[i], target.kids[i], s)) return false;
      return true;
    }
  }
}

struct Engine {
  const Signature& sig;
  const Scenario* scn;
  ProverBounds bounds;
  std::chrono::steady_clock::time_point deadline;
  mutable bool bound_hit = false;
  mutable std::map<std::string, std::vector<Term>> universe_cache;

  Engine(const Signature& s, const Scenario* sc, ProverBounds b)
      : sig(s), scn(sc), bounds(b) {
    deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(b.budget_ms);
  }

  std::string saturation_key(int modal_budget) const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "r%d/d%d/t%d/b%d/%p", bounds.max_rounds, modal_budget,
                  bounds.max_term_depth, bounds.max_modal_depth,
                  static_cast<const void*>(scn));
    return buf;
  }

  bool expired() const {
    if (std::chrono::steady_clock::now() <= deadline) return false;
    bound_hit = true;
    return true;
  }

  const std::vector<Term>& universe(const std::string& sort, long long horizon) const {
    std::string key = sort + "#" + std::to_string(horizon);
    auto it = universe_cache.find(key);
    if (it != universe_cache.end()) return it->second;
    auto terms = sig.universe(sort, static_cast<size_t>(bounds.max_term_depth), horizon);
    return universe_cache.emplace(key, std::move(terms)).first->second;
  }

  // ---- natives -------------------------------------------------------

  std::optional<bool> eval_native(const KnowledgeBase& kb, const Formula& f,
                                  const std::string& believer,
                                  const std::vector<Formula>* ctx_premises,
                                  std::string* note) const {
    switch (f.kind) {
      case Conn::Atom: {
        if (f.pred == "prior") {
          auto a = f.args[0].moment_value(), b = f.args[1].moment_value();
          if (!a || !b) return std::nullopt;
          if (note) *note = "prior " + std::to_string(*a) + " < " + std::to_string(*b);
          return *a < *b;
        }
        if (f.pred == "=") {
          if (!f.args[0].ground() || !f.args[1].ground()) return std::nullopt;
          bool eq = f.args[0] == f.args[1];
          if (note) *note = "unique-names";
          return eq;
        }
        if (f.pred == "holds") {
          if (!f.args[0].ground()) return std::nullopt;
          auto t = f.args[1].moment_value();
          if (!t) return std::nullopt;
          ViewData v = believer.empty() || !ctx_premises
                           ? make_global_view(scn, kb)
                           : make_context_view(scn, believer, *ctx_premises, kb.horizon());
          if (*t < 0 || *t > v.horizon) return std::nullopt;
          if (note) *note = "event-calculus";
          return holds_at(v.view(), f.args[0], *t);
        }
        return std::nullopt;
      }
      case Conn::Utility: {
        if (!f.args[0].ground()) return std::nullopt;
        auto t = f.args[1].moment_value();
        if (!t) return std::nullopt;
        ViewData v = believer.empty() || !ctx_premises
                         ? make_global_view(scn, kb)
                         : make_context_view(scn, believer, *ctx_premises, kb.horizon());
        Term event = f.args[0];
        // A bare action type is judged as the context agent performing it.
        if (sig.subsort(event.sort, sorts::ActionType)) {
          std::string actor = believer.empty() ? first_agent() : believer;
          if (actor.empty()) return std::nullopt;
          event = Term::app("action", sorts::Action,
                            {Term::constant(actor, sorts::Agent), event});
        }
        if (*t >= v.horizon) return std::nullopt;
        Rational val = event_utility(v.view(), event, *t);
        bool ok = false;
        switch (f.cmp) {
          case CmpOp::Gt: ok = val > f.bound; break;
          case CmpOp::Ge: ok = val >= f.bound; break;
          case CmpOp::Lt: ok = val < f.bound; break;
          case CmpOp::Le: ok = val <= f.bound; break;
          case CmpOp::Eq: ok = val == f.bound; break;
        }
        if (note)
          *note = "nu(" + print_term(event) + ", " + std::to_string(*t) + ") = " +
                  to_string(val) + (believer.empty() ? "" : " in context of " + believer);
        return ok;
      }
      case Conn::Not: {
        auto inner = eval_native(kb, f.kids[0], believer, ctx_premises, note);
        if (!inner) return std::nullopt;
        return !*inner;
      }
      default:
        return std::nullopt;
    }
  }

  std::string first_agent() const {
    if (!scn) return "";
    auto agents = scn->signature.constants_of_sort(sorts::Agent);
    return agents.empty() ? "" : agents.front();
  }

  // Quick establishment for saturation-side modus ponens.
  bool established(const KnowledgeBase& kb, const Formula& f, const std::string& believer,
                   const std::vector<Formula>* ctx, std::vector<int>* witness_ids) const {
    if (int id = kb.id_of(f); id >= 0) {
      if (witness_ids) witness_ids->push_back(id);
      return true;
    }
    switch (f.kind) {
      case Conn::And:
        return std::all_of(f.kids.begin(), f.kids.end(), [&](const Formula& k) {
          return established(kb, k, believer, ctx, witness_ids);
        });
      case Conn::Or:
        return std::any_of(f.kids.begin(), f.kids.end(), [&](const Formula& k) {
          return established(kb, k, believer, ctx, witness_ids);
        });
      default: {
        auto nat = eval_native(kb, f, believer, ctx, nullptr);
        return nat && *nat;
      }
    }
  }

  // ---- saturation ----------------------------------------------------

  void saturate(KnowledgeBase& kb, int modal_budget, const std::string& believer,
                const std::vector<Formula>* ctx, SaturationStats* stats) const {
    const std::string key = saturation_key(modal_budget) + believer;
    if (kb.saturated_under(key)) return;
    std::map<std::string, size_t> closure_cache;  // agent|t1 -> premise count
    int round = 0;
    while (round < bounds.max_rounds) {
      if (expired()) break;
      ++round;
      size_t before = kb.size();
      size_t snapshot = kb.size();
      for (size_t id = 0; id < snapshot; ++id) {
        if (expired()) break;
        const Formula f = kb.formula(static_cast<int>(id));
        switch (f.kind) {
          case Conn::And: {
            for (const auto& k : f.kids)
              kb.assert_derived(k, {"and-elim", {static_cast<int>(id)}, {}, ""});
            break;
          }
          case Conn::Iff: {
            kb.assert_derived(Formula::implies(f.kids[0], f.kids[1]),
                              {"iff-elim", {static_cast<int>(id)}, {}, ""});
            kb.assert_derived(Formula::implies(f.kids[1], f.kids[0]),
                              {"iff-elim", {static_cast<int>(id)}, {}, ""});
            break;
          }
          case Conn::Implies: {
            std::vector<int> wits;
            if (established(kb, f.kids[0], believer, ctx, &wits)) {
              Derivation d{"mp", {static_cast<int>(id)}, {}, ""};
              for (int w : wits) d.premises.push_back(w);
              kb.assert_derived(f.kids[1], std::move(d));
            }
            break;
          }
          case Conn::Forall: {
            const auto& u = universe(f.binder->sort, kb.horizon());
            if (u.size() > kMaxInstantiations) {
              bound_hit = true;
              break;
            }
            for (const auto& t : u) {
              Substitution s;
              s.bind(f.binder->name, t);
              Formula inst = apply_substitution(f.kids[0], s);
              kb.assert_derived(inst, {"inst",
                                       {static_cast<int>(id)},
                                       {},
                                       "?" + f.binder->name + " -> " + print_term(t)});
            }
            break;
          }
          case Conn::Modal: {
            if (f.op == ModalOp::Says && f.agents.size() == 2) {
              Formula inner = Formula::believes(f.agents[0], *f.time, f.kids[0]);
              kb.assert_derived(Formula::believes(f.agents[1], *f.time, std::move(inner)),
                                {"I_12", {static_cast<int>(id)}, {}, ""});
            } else if (f.op == ModalOp::Ought) {
              Formula bel_phi = Formula::believes(f.agents[0], *f.time, f.kids[0]);
              Formula bel_ought = Formula::believes(f.agents[0], *f.time, f);
              int p1 = kb.id_of(bel_phi);
              int p2 = kb.id_of(bel_ought);
              if (p1 >= 0 && p2 >= 0) {
                Formula intends =
                    Formula::modal(ModalOp::Intends, {f.agents[0]}, f.time, f.kids[1]);
                kb.assert_derived(
                    Formula::knows(f.agents[0], *f.time, std::move(intends)),
                    {"I_14", {p1, p2, static_cast<int>(id)}, {}, ""});
              }
            }
            break;
          }
          default:
            break;
        }
      }
      materialize_beliefs(kb, modal_budget, closure_cache);
      if (kb.size() == before) {
        if (stats) stats->rounds = round;
        kb.mark_saturated(key);
        return;
      }
    }
    if (stats) {
      stats->rounds = round;
      stats->bound_exceeded = true;
    }
    bound_hit = true;
  }

  // I_B: close each agent's belief context and replay new conclusions at
  // strictly later moments.
  void materialize_beliefs(KnowledgeBase& kb, int modal_budget,
                           std::map<std::string, size_t>& closure_cache) const {
    if (modal_budget <= 0) {
      if (!kb.by_head("believes").empty()) bound_hit = true;
      return;
    }
    struct AgentTimes {
      std::map<long long, std::vector<int>> by_time;  // believes formula ids
    };
    std::map<std::string, AgentTimes> agents;
    for (int id : kb.by_head("believes")) {
      const Formula& f = kb.formula(id);
      if (f.agents.size() != 1 || !f.agents[0].is_const()) continue;
      auto t = f.time ? f.time->moment_value() : std::nullopt;
      if (!t) continue;
      agents[f.agents[0].name].by_time[*t].push_back(id);
    }
    for (const auto& [agent, times] : agents) {
      std::vector<int> premise_ids;
      std::vector<Formula> premise_bodies;
      std::set<std::string> believed;
      for (const auto& [t1, ids] : times.by_time) {
        for (int id : ids) {
          premise_ids.push_back(id);
          premise_bodies.push_back(kb.formula(id).kids[0]);
          believed.insert(print_formula(kb.formula(id).kids[0]));
        }
        if (expired()) return;
        // Re-closing a context whose premise set has not grown since the
        // last round cannot add anything (the kb is monotone).
        std::string cache_key = agent + "|" + std::to_string(t1);
        auto cached = closure_cache.find(cache_key);
        if (cached != closure_cache.end() && cached->second == premise_ids.size()) continue;
        closure_cache[cache_key] = premise_ids.size();
        KnowledgeBase ctx(kb.horizon());
        for (const auto& b : premise_bodies) ctx.assert_axiom(b);
        saturate(ctx, modal_budget - 1, agent, &premise_bodies, nullptr);
        for (size_t cid = 0; cid < ctx.size(); ++cid) {
          if (ctx.is_axiom(static_cast<int>(cid))) continue;
          const Formula& derived = ctx.formula(static_cast<int>(cid));
          if (believed.count(print_formula(derived))) continue;
          std::vector<ProofStep> chain;
          std::set<int> emitted;
          emit_chain(ctx, static_cast<int>(cid), emitted, chain);
          for (long long t2 = t1 + 1; t2 <= kb.horizon(); ++t2) {
            Term agent_term = kb.formula(premise_ids.front()).agents[0];
            kb.assert_derived(
                Formula::believes(agent_term, Term::moment(t2), derived),
                {"I_B", premise_ids, chain,
                 "agent=" + agent + " t1=" + std::to_string(t1) +
                     " t2=" + std::to_string(t2)});
          }
        }
      }
    }
  }

  // ---- trace assembly -------------------------------------------------

  void emit_chain(const KnowledgeBase& kb, int id, std::set<int>& emitted,
                  std::vector<ProofStep>& out) const {
    if (emitted.count(id)) return;
    emitted.insert(id);
    const Derivation& d = kb.derivation(id);
    for (int p : d.premises) emit_chain(kb, p, emitted, out);
    ProofStep step;
    step.rule = d.rule;
    step.conclusion = kb.printed(id);
    for (int p : d.premises) step.premises.push_back(kb.printed(p));
    step.sub = d.sub;
    step.note = d.note;
    out.push_back(std::move(step));
  }

  // ---- goal decomposition ---------------------------------------------

  bool try_goal(KnowledgeBase& kb, const Formula& goal, int modal_budget, int depth,
                const std::string& believer, const std::vector<Formula>* ctx,
                std::vector<ProofStep>& trace) const {
    if (expired()) return false;
    if (depth <= 0) {
      bound_hit = true;
      return false;
    }
    if (contains_predicate_variables(goal)) {
      bound_hit = true;  // rejected as a goal, second-class formulas
      return false;
    }
    if (int id = kb.id_of(goal); id >= 0) {
      std::set<int> emitted;
      emit_chain(kb, id, emitted, trace);
      return true;
    }
    std::string note;
    if (auto nat = eval_native(kb, goal, believer, ctx, &note); nat && *nat) {
      trace.push_back({"native", print_formula(goal), {}, {}, note});
      return true;
    }
    switch (goal.kind) {
      case Conn::And: {
        ProofStep step{"and-intro", print_formula(goal), {}, {}, ""};
        std::vector<ProofStep> subtrace;
        for (const auto& k : goal.kids) {
          if (!try_goal(kb, k, modal_budget, depth - 1, believer, ctx, subtrace)) return false;
          step.premises.push_back(print_formula(k));
        }
        trace.insert(trace.end(), subtrace.begin(), subtrace.end());
        trace.push_back(std::move(step));
        return true;
      }
      case Conn::Or: {
        for (const auto& k : goal.kids) {
          std::vector<ProofStep> subtrace;
          if (try_goal(kb, k, modal_budget, depth - 1, believer, ctx, subtrace)) {
            trace.insert(trace.end(), subtrace.begin(), subtrace.end());
            trace.push_back({"or-intro", print_formula(goal), {print_formula(k)}, {}, ""});
            return true;
          }
        }
        return from_universal(kb, goal, modal_budget, depth, believer, ctx, trace);
      }
      case Conn::Implies: {
        KnowledgeBase assumed = kb;
        for (const auto& c : conjuncts_of(goal.kids[0])) assumed.assert_axiom(c);
        saturate(assumed, modal_budget, believer, ctx, nullptr);
        std::vector<ProofStep> subtrace;
        if (!try_goal(assumed, goal.kids[1], modal_budget, depth - 1, believer, ctx, subtrace))
          return false;
        trace.push_back({"implies-intro",
                         print_formula(goal),
                         {print_formula(goal.kids[0])},
                         std::move(subtrace),
                         "assume antecedent"});
        return true;
      }
      case Conn::Iff: {
        std::vector<ProofStep> subtrace;
        Formula fwd = Formula::implies(goal.kids[0], goal.kids[1]);
        Formula bwd = Formula::implies(goal.kids[1], goal.kids[0]);
        if (!try_goal(kb, fwd, modal_budget, depth - 1, believer, ctx, subtrace)) return false;
        if (!try_goal(kb, bwd, modal_budget, depth - 1, believer, ctx, subtrace)) return false;
        trace.insert(trace.end(), subtrace.begin(), subtrace.end());
        trace.push_back({"iff-intro",
                         print_formula(goal),
                         {print_formula(fwd), print_formula(bwd)},
                         {},
                         ""});
        return true;
      }
      case Conn::Forall: {
        static std::atomic<int> skolem_counter{0};
        Term sk = Term::constant("sk" + std::to_string(++skolem_counter), goal.binder->sort);
        Substitution s;
        s.bind(goal.binder->name, sk);
        std::vector<ProofStep> subtrace;
        if (!try_goal(kb, apply_substitution(goal.kids[0], s), modal_budget, depth - 1,
                      believer, ctx, subtrace))
          return false;
        trace.push_back({"forall-intro", print_formula(goal), {}, std::move(subtrace),
                         "skolem " + sk.name + ":" + sk.sort});
        return true;
      }
      case Conn::Exists: {
        for (const auto& u : universe(goal.binder->sort, kb.horizon())) {
          Substitution s;
          s.bind(goal.binder->name, u);
          std::vector<ProofStep> subtrace;
          if (try_goal(kb, apply_substitution(goal.kids[0], s), modal_budget, depth - 1,
                       believer, ctx, subtrace)) {
            trace.insert(trace.end(), subtrace.begin(), subtrace.end());
            trace.push_back({"exists-intro", print_formula(goal),
                             {print_formula(apply_substitution(goal.kids[0], s))}, {},
                             "witness " + print_term(u)});
            return true;
          }
        }
        return false;
      }
      case Conn::CountAtLeast:
      case Conn::CountExact: {
        // Witnesses are counted against the finite KB (membership or native
        // truth), not by proof search.
        std::vector<std::string> witnesses;
        ProofStep step{"count", print_formula(goal), {}, {}, ""};
        for (const auto& u : universe(goal.binder->sort, kb.horizon())) {
          Substitution s;
          s.bind(goal.binder->name, u);
          Formula inst = apply_substitution(goal.kids[0], s);
          if (count_established(kb, inst, modal_budget, believer, ctx)) {
            witnesses.push_back(print_term(u));
            step.premises.push_back(print_formula(inst));
          }
        }
        bool ok = goal.kind == Conn::CountAtLeast
                      ? static_cast<long long>(witnesses.size()) >= goal.count
                      : static_cast<long long>(witnesses.size()) == goal.count;
        if (!ok) return false;
        std::string w;
        for (const auto& x : witnesses) w += (w.empty() ? "" : ", ") + x;
        step.note = "witnesses: " + w;
        trace.push_back(std::move(step));
        return true;
      }
      case Conn::Modal: {
        if (goal.op == ModalOp::Believes && goal.agents[0].is_const() && goal.time &&
            goal.time->moment_value()) {
          if (modal_budget <= 0) {
            bound_hit = true;
            return false;
          }
          if (prove_context_goal(kb, goal.agents[0], *goal.time->moment_value(), goal.kids[0],
                                 modal_budget, depth, trace))
            return true;
        }
        return from_universal(kb, goal, modal_budget, depth, believer, ctx, trace);
      }
      case Conn::Not: {
        return from_universal(kb, goal, modal_budget, depth, believer, ctx, trace);
      }
      default:
        return from_universal(kb, goal, modal_budget, depth, believer, ctx, trace);
    }
  }

  // Membership-or-native truth with shallow counting quantifier support;
  // used by the counting quantifiers.
  bool count_established(const KnowledgeBase& kb, const Formula& f, int modal_budget,
                         const std::string& believer, const std::vector<Formula>* ctx) const {
    if (kb.contains(f)) return true;
    if (f.kind == Conn::And)
      return std::all_of(f.kids.begin(), f.kids.end(), [&](const Formula& k) {
        return count_established(kb, k, modal_budget, believer, ctx);
      });
    if (f.kind == Conn::Exists) {
      for (const auto& u : universe(f.binder->sort, kb.horizon())) {
        Substitution s;
        s.bind(f.binder->name, u);
        if (count_established(kb, apply_substitution(f.kids[0], s), modal_budget, believer,
                              ctx))
          return true;
      }
      return false;
    }
    auto nat = eval_native(kb, f, believer, ctx, nullptr);
    return nat && *nat;
  }

  bool prove_context_goal(const KnowledgeBase& kb, const Term& agent_term, long long t,
                          const Formula& inner, int modal_budget, int depth,
                          std::vector<ProofStep>& trace) const {
    const std::string agent = agent_term.name;
    std::vector<int> premise_ids;
    std::vector<std::string> premise_printed;
    std::vector<Formula> premise_bodies;
    for (int id : kb.by_head("believes")) {
      const Formula& f = kb.formula(id);
      if (f.agents.size() != 1 || !f.agents[0].is_const() || f.agents[0].name != agent)
        continue;
      auto bt = f.time ? f.time->moment_value() : std::nullopt;
      if (!bt || *bt > t) continue;
      premise_ids.push_back(id);
      premise_printed.push_back(kb.printed(id));
      premise_bodies.push_back(f.kids[0]);
    }
    if (premise_bodies.empty()) return false;
    KnowledgeBase ctxkb(kb.horizon());
    for (const auto& b : premise_bodies) ctxkb.assert_axiom(b);
    saturate(ctxkb, modal_budget - 1, agent, &premise_bodies, nullptr);
    std::vector<ProofStep> subtrace;
    if (!try_goal(ctxkb, inner, modal_budget - 1, depth - 1, agent, &premise_bodies, subtrace))
      return false;
    std::set<int> emitted;
    for (int id : premise_ids) emit_chain(kb, id, emitted, trace);
    Formula conclusion = Formula::believes(agent_term, Term::moment(t), inner);
    trace.push_back({"believes-context", print_formula(conclusion), premise_printed,
                     std::move(subtrace), "agent=" + agent + " t=" + std::to_string(t)});
    return true;
  }

  bool from_universal(KnowledgeBase& kb, const Formula& goal, int modal_budget, int depth,
                      const std::string& believer, const std::vector<Formula>* ctx,
                      std::vector<ProofStep>& trace) const {
    for (int id : kb.by_head("forall")) {
      if (expired()) return false;
      Formula body = kb.formula(id);
      std::vector<Term> binders;
      while (body.kind == Conn::Forall) {
        binders.push_back(*body.binder);
        Formula inner = body.kids[0];
        body = std::move(inner);
      }
      auto all_bound = [&](const Substitution& s) {
        return std::all_of(binders.begin(), binders.end(),
                           [&](const Term& b) { return s.terms.count(b.name) > 0; });
      };
      Substitution s;
      if (match_formula(body, goal, s) && all_bound(s)) {
        std::set<int> emitted;
        emit_chain(kb, id, emitted, trace);
        trace.push_back({"inst", print_formula(goal), {kb.printed(id)}, {}, ""});
        return true;
      }
      if (body.kind == Conn::Implies) {
        Substitution s2;
        if (!match_formula(body.kids[1], goal, s2) || !all_bound(s2)) continue;
        Formula ant = apply_substitution(body.kids[0], s2);
        std::vector<ProofStep> subtrace;
        if (!try_goal(kb, ant, modal_budget, depth - 1, believer, ctx, subtrace)) continue;
        std::set<int> emitted;
        emit_chain(kb, id, emitted, trace);
        trace.push_back({"from-universal", print_formula(goal), {kb.printed(id)},
                         std::move(subtrace), "antecedent " + print_formula(ant)});
        return true;
      }
    }
    return false;
  }
};

}  // namespace

Reasoner::Reasoner(const Signature& sig, ProverBounds bounds, const Scenario* scn)
    : sig_(sig), bounds_(bounds), scn_(scn) {}

SaturationStats Reasoner::saturate(KnowledgeBase& kb) const {
  Engine eng(sig_, scn_, bounds_);
  SaturationStats stats;
  eng.saturate(kb, bounds_.max_modal_depth, "", nullptr, &stats);
  stats.bound_exceeded = stats.bound_exceeded || eng.bound_hit;
  return stats;
}

ProofResult Reasoner::prove(const KnowledgeBase& kb, const Formula& goal) const {
  Engine eng(sig_, scn_, bounds_);
  ProofResult out;
  if (contains_predicate_variables(goal)) {
    out.trace.push_back(
        {"rejected", print_formula(goal), {}, {}, "predicate-variable goals are second-class"});
    return out;
  }
  KnowledgeBase work = kb;
  eng.saturate(work, bounds_.max_modal_depth, "", nullptr, nullptr);
  std::vector<ProofStep> trace;
  if (eng.try_goal(work, goal, bounds_.max_modal_depth, kMaxGoalDepth, "", nullptr, trace)) {
    out.verdict = Verdict::Proved;
    out.trace = std::move(trace);
  }
  out.bound_hit = eng.bound_hit;
  return out;
}

ProofResult Reasoner::prove_in_context(const KnowledgeBase& kb, const std::string& agent,
                                       long long t, const Formula& goal) const {
  Term agent_term = Term::constant(agent, sig_.constant_sort(agent).value_or(sorts::Agent));
  return prove(kb, Formula::believes(agent_term, Term::moment(t), goal));
}

Result<Trait> check_trait_schema(const std::vector<Observation>& observations, long long m,
                                 const Signature& sig) {
  using R = Result<Trait>;
  if (static_cast<long long>(observations.size()) < m)
    return R::failure(make_diag(ErrorKind::Validation,
                                "InsufficientObservations: need at least " + std::to_string(m) +
                                    ", got " + std::to_string(observations.size())));
  const size_t k = observations.size();
  AntiUnifier au(sig, k);
  std::vector<Term> times;
  for (const auto& o : observations) times.push_back(Term::moment(o.time));
  au.seed(times, "T");

  std::vector<std::vector<Formula>> sets;
  for (const auto& o : observations) sets.push_back(o.situation);
  std::string err;
  auto sigma = align_generalize(sets, au, &err);
  if (!sigma) return R::failure(make_diag(ErrorKind::Validation, "NoAlignment: " + err));

  std::vector<Term> actions;
  for (const auto& o : observations) actions.push_back(o.action_type);
  auto alpha = au.terms(actions);
  if (!alpha)
    return R::failure(
        make_diag(ErrorKind::Validation, "NoAlignment: action types cannot be generalized"));

  Trait trait;
  trait.situation = *sigma;
  trait.action_type = *alpha;
  trait.time_var = Term::var("T", sorts::Moment);
  trait.observations = observations;
  trait.witnesses = au.witnesses();

  // vars(alpha) must be covered by vars(sigma) + {T}.
  std::set<std::string> sigma_vars = {"T"};
  for (const auto& f : *sigma)
    for (const auto& v : free_variables(f)) sigma_vars.insert(v.name);
  for (const auto& v : variables_of(*alpha)) {
    if (!sigma_vars.count(v.name))
      return R::failure(make_diag(
          ErrorKind::Validation,
          "NoAlignment: action variable ?" + v.name + " not grounded by the situation"));
  }

  // Witness soundness: substituting each observation back must reproduce its
  // situation set and action exactly (alignment may have permuted members).
  for (size_t i = 0; i < k; ++i) {
    const Substitution& w = trait.witnesses[i];
    for (const auto& g : *sigma) {
      Formula inst = apply_substitution(g, w);
      bool found = std::any_of(observations[i].situation.begin(),
                               observations[i].situation.end(),
                               [&](const Formula& f) { return f == inst; });
      if (!found)
        return R::failure(make_diag(ErrorKind::Internal,
                                    "generalization witness failed to reproduce a situation"));
    }
    if (apply_substitution(*alpha, w) != observations[i].action_type)
      return R::failure(make_diag(ErrorKind::Internal,
                                  "generalization witness failed to reproduce an action"));
  }
  return R::success(std::move(trait));
}

}  // namespace exemplar
