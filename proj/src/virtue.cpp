#include "exemplar/virtue.hpp"

#include <algorithm>
#include <set>

#include "exemplar/alpha.hpp"
#include "exemplar/eventcalc.hpp"
#include "exemplar/printer.hpp"
#include "exemplar/subst.hpp"
#include "exemplar/unify.hpp"

namespace exemplar {

namespace {

Term agent_term(const Signature& sig, const std::string& name) {
  return Term::constant(name, sig.constant_sort(name).value_or(sorts::Agent));
}

void flatten_conjuncts(const Formula& f, std::vector<Formula>& out) {
  if (f.kind == Conn::And) {
    for (const auto& k : f.kids) flatten_conjuncts(k, out);
  } else {
    out.push_back(f);
  }
}

struct BelievedFact {
  long long believed_at;
  Formula body;
};

// All conjuncts the agent believes at or before t.
std::vector<BelievedFact> believed_facts(const KnowledgeBase& kb, const std::string& agent,
                                         long long t) {
  std::vector<BelievedFact> out;
  for (int id : kb.by_head("believes")) {
    const Formula& f = kb.formula(id);
    if (f.agents.size() != 1 || !f.agents[0].is_const() || f.agents[0].name != agent) continue;
    auto bt = f.time ? f.time->moment_value() : std::nullopt;
    if (!bt || *bt > t) continue;
    std::vector<Formula> parts;
    flatten_conjuncts(f.kids[0], parts);
    for (auto& p : parts) out.push_back({*bt, std::move(p)});
  }
  return out;
}

}  // namespace

VirtueEngine::VirtueEngine(const Scenario& scn, KnowledgeBase& kb, const Reasoner& reasoner)
    : scn_(scn), kb_(kb), reasoner_(reasoner) {}

std::vector<std::string> VirtueEngine::agents() const {
  return scn_.signature.constants_of_sort(sorts::Agent);
}

bool VirtueEngine::record_known(const AdmirationRecord& r) const {
  return std::any_of(records_.begin(), records_.end(), [&](const AdmirationRecord& q) {
    return q.admirer == r.admirer && q.admired == r.admired &&
           q.action_time == r.action_time &&
           print_term(q.action_type) == print_term(r.action_type);
  });
}

std::vector<AdmirationRecord> VirtueEngine::detect_admiration(const std::string& agent,
                                                              long long t,
                                                              bool skip_recorded) {
  std::vector<AdmirationRecord> found;
  std::set<std::string> seen;
  Term admirer = agent_term(scn_.signature, agent);

  for (const auto& bf : believed_facts(kb_, agent, t)) {
    const Formula& f = bf.body;
    if (!f.is_atom("happens") || f.args.size() != 2) continue;
    const Term& event = f.args[0];
    if (!event.is_app() || event.name != "action" || event.args.size() != 2) continue;
    if (!event.ground()) continue;
    const Term& performer = event.args[0];
    const Term& action_type = event.args[1];
    if (!performer.is_const()) continue;
    auto tp = f.args[1].moment_value();
    if (!tp || *tp >= t) continue;  // t' < t
    if (performer.name == agent) continue;  // admires only other agents
    std::string key = performer.name + "|" + print_term(action_type) + "|" +
                      std::to_string(*tp);
    if (seen.count(key)) continue;
    seen.insert(key);
    if (skip_recorded &&
        record_known(AdmirationRecord{agent, performer.name, action_type, *tp, t}))
      continue;

    bool pleased = std::any_of(scn_.pleased.begin(), scn_.pleased.end(),
                               [&](const PleasedFact& p) {
                                 return p.agent == agent && p.time == *tp;
                               });
    if (!pleased) continue;

    Formula conj = Formula::conj(
        {Formula::negation(Formula::equals(admirer, performer)),
         Formula::atom("prior", {Term::moment(*tp), Term::moment(t)}),
         f,
         Formula::utility(event, Term::moment(*tp), CmpOp::Gt, Rational(0))});
    ProofResult proof = reasoner_.prove_in_context(kb_, agent, t, conj);
    if (!proof.proved()) continue;

    AdmirationRecord rec{agent, performer.name, action_type, *tp, t};
    found.push_back(rec);
    if (!record_known(rec)) records_.push_back(rec);

    int pleased_id = kb_.assert_axiom(
        Formula::atom("pleased", {admirer, Term::moment(*tp)}));
    Formula believed = Formula::believes(admirer, Term::moment(t), conj);
    int belief_id = kb_.assert_derived(believed, {"believes-context",
                                                  {},
                                                  proof.trace,
                                                  "agent=" + agent +
                                                      " t=" + std::to_string(t)});
    Term admires_fluent =
        Term::app("admires", sorts::Fluent, {admirer, performer, action_type});
    kb_.assert_derived(
        Formula::atom("holds", {admires_fluent, Term::moment(t)}),
        {"admiration", {pleased_id, belief_id}, {}, "R1"});
  }
  std::sort(found.begin(), found.end(), [](const AdmirationRecord& a, const AdmirationRecord& b) {
    return std::tie(a.admired, a.action_time) < std::tie(b.admired, b.action_time);
  });
  return found;
}

void VirtueEngine::detect_all() {
  for (long long t = 1; t <= scn_.config.horizon; ++t)
    for (const auto& a : agents()) detect_admiration(a, t, /*skip_recorded=*/true);
}

bool VirtueEngine::is_exemplar(const std::string& exemplar, const std::string& learner,
                               long long n) const {
  std::set<std::pair<long long, std::string>> witnesses;
  for (const auto& r : records_) {
    if (r.admirer == learner && r.admired == exemplar)
      witnesses.insert({r.action_time, print_term(r.action_type)});
  }
  return static_cast<long long>(witnesses.size()) >= n;
}

std::vector<Formula> VirtueEngine::situation_snapshot(const std::string& learner, long long t,
                                                      const Term& event,
                                                      const Term& action_type) const {
  std::set<std::string> reachable;
  collect_symbols(event, reachable);

  // Believed holds literals whose inner moment is exactly t.
  std::vector<Formula> candidates;
  for (const auto& bf : believed_facts(kb_, learner, t)) {
    const Formula& f = bf.body;
    if (!f.is_atom("holds") || f.args.size() != 2) continue;
    auto ft = f.args[1].moment_value();
    if (!ft || *ft != t || !f.args[0].ground()) continue;
    // Skip admiration bookkeeping fluents.
    if (f.args[0].is_app() && f.args[0].name == "admires") continue;
    candidates.push_back(f);
  }

  // Connected-symbol slice: grow from the event's symbols.
  std::vector<Formula> selected;
  std::set<std::string> selected_keys;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& c : candidates) {
      std::string key = print_formula(c);
      if (selected_keys.count(key)) continue;
      std::set<std::string> syms;
      collect_symbols(c.args[0], syms);
      bool connected = std::any_of(syms.begin(), syms.end(),
                                   [&](const std::string& s) { return reachable.count(s) > 0; });
      if (!connected) continue;
      reachable.insert(syms.begin(), syms.end());
      selected_keys.insert(key);
      selected.push_back(c);
      changed = true;
    }
  }
  std::sort(selected.begin(), selected.end(), [](const Formula& a, const Formula& b) {
    return print_formula(a) < print_formula(b);
  });
  selected.push_back(Formula::utility(action_type, Term::moment(t), CmpOp::Gt, Rational(0)));

  Formula wrapped = Formula::believes(agent_term(scn_.signature, learner), Term::moment(t),
                                      Formula::conj(std::move(selected)));
  return {std::move(wrapped)};
}

std::vector<Trait> VirtueEngine::learn_traits(const std::string& learner, long long t,
                                              long long m, long long n) {
  std::vector<Trait> learned;
  for (const auto& e : agents()) {
    if (e == learner || !is_exemplar(e, learner, n)) continue;

    std::vector<AdmirationRecord> obs_records;
    for (const auto& r : records_)
      if (r.admirer == learner && r.admired == e && r.judgment_time <= t)
        obs_records.push_back(r);
    std::sort(obs_records.begin(), obs_records.end(),
              [](const AdmirationRecord& a, const AdmirationRecord& b) {
                return std::tie(a.action_time, a.judgment_time) <
                       std::tie(b.action_time, b.judgment_time);
              });

    std::vector<Observation> observations;
    long long learned_at = 0;
    for (const auto& r : obs_records) {
      Term event = Term::app("action", sorts::Action,
                             {agent_term(scn_.signature, e), r.action_type});
      Observation o;
      o.situation = situation_snapshot(learner, r.action_time, event, r.action_type);
      o.action_type = r.action_type;
      o.time = r.action_time;
      o.performer = e;
      observations.push_back(std::move(o));
      learned_at = std::max(learned_at, r.judgment_time);
    }

    auto result = check_trait_schema(observations, m, scn_.signature);
    if (!result.ok()) continue;
    Trait trait = *result;
    trait.owner = learner;
    trait.learned_from = e;
    trait.learned_at = learned_at;

    Formula canon = trait.canonical_formula(scn_.signature);
    bool duplicate = std::any_of(traits_.begin(), traits_.end(), [&](const Trait& existing) {
      return existing.owner == learner &&
             alpha_equivalent(existing.canonical_formula(scn_.signature), canon);
    });
    if (duplicate) continue;

    Term learner_term = agent_term(scn_.signature, learner);
    Formula tau_exemplar = trait.single_formula(e, scn_.signature);
    Formula tau_own = trait.single_formula(learner, scn_.signature);
    int belief_id = kb_.assert_derived(
        Formula::believes(learner_term, Term::moment(learned_at),
                          Formula::trait(tau_exemplar, agent_term(scn_.signature, e))),
        {"I_Trait", {}, {}, "m=" + std::to_string(m) + " observations=" +
                                std::to_string(observations.size())});
    kb_.assert_derived(Formula::trait(tau_own, learner_term),
                       {"learn-trait", {belief_id}, {}, "exemplar=" + e});

    traits_.push_back(trait);
    learned.push_back(std::move(trait));
  }
  return learned;
}

std::vector<FiredAction> VirtueEngine::fire_traits(const std::string& learner, long long t) {
  std::vector<FiredAction> fired;
  std::set<std::string> fired_keys;

  for (const auto& trait : traits_) {
    if (trait.owner != learner || trait.learned_at > t) continue;

    Substitution theta0;
    theta0.bind(trait.time_var.name, Term::moment(t));
    std::vector<Formula> sigma;
    for (const auto& s : trait.situation) sigma.push_back(apply_substitution(s, theta0));
    Term alpha = apply_substitution(trait.action_type, theta0);

    // Candidate bindings come from matching the situation's non-native
    // literals against believed facts; each full grounding is then verified
    // by the prover.
    struct PatternSlot {
      Formula pattern;              // atom to match
      std::vector<Formula> facts;   // candidate ground facts
    };
    std::vector<PatternSlot> slots;
    for (const auto& s : sigma) {
      const Formula* body = &s;
      std::string believer;
      if (s.kind == Conn::Modal && s.op == ModalOp::Believes && s.agents[0].is_const()) {
        believer = s.agents[0].name;
        body = &s.kids[0];
      }
      std::vector<Formula> parts;
      flatten_conjuncts(*body, parts);
      for (const auto& p : parts) {
        if (p.kind != Conn::Atom) continue;  // natives verified later
        if (p.pred == "prior" || p.pred == "=") continue;
        if (free_variables(p).empty()) continue;
        PatternSlot slot;
        slot.pattern = p;
        if (!believer.empty()) {
          for (const auto& bf : believed_facts(kb_, believer, t)) {
            if (bf.body.kind == Conn::Atom && bf.body.pred == p.pred &&
                bf.body.args.size() == p.args.size())
              slot.facts.push_back(bf.body);
          }
        } else {
          for (int id : kb_.by_head(p.pred)) slot.facts.push_back(kb_.formula(id));
        }
        slots.push_back(std::move(slot));
      }
    }
    std::vector<Term> vars;
    for (const auto& s : sigma)
      for (const auto& v : free_variables(s)) {
        bool seen = std::any_of(vars.begin(), vars.end(),
                                [&](const Term& q) { return q.name == v.name; });
        if (!seen) vars.push_back(v);
      }
    // Backtracking over slots; unconstrained variables fail the grounding.
    std::vector<Substitution> groundings;
    std::function<void(size_t, Substitution)> enumerate = [&](size_t i, Substitution acc) {
      if (i == slots.size()) {
        bool complete = std::all_of(vars.begin(), vars.end(), [&](const Term& v) {
          return acc.terms.count(v.name) > 0;
        });
        if (complete) groundings.push_back(std::move(acc));
        return;
      }
      const auto& slot = slots[i];
      Formula pat = apply_substitution(slot.pattern, acc);
      if (free_variables(pat).empty()) {
        enumerate(i + 1, std::move(acc));
        return;
      }
      for (const auto& fact : slot.facts) {
        Substitution trial = acc;
        bool ok = true;
        for (size_t a = 0; a < pat.args.size() && ok; ++a) {
          auto r = match_pattern(pat.args[a], fact.args[a], trial);
          if (!r) ok = false;
          else trial = *r;
        }
        if (ok) enumerate(i + 1, std::move(trial));
      }
    };
    enumerate(0, {});

    std::sort(groundings.begin(), groundings.end(),
              [](const Substitution& a, const Substitution& b) {
                return to_string(a) < to_string(b);
              });
    std::set<std::string> tried;
    for (const auto& theta : groundings) {
      if (!tried.insert(to_string(theta)).second) continue;
      bool established = true;
      for (const auto& s : sigma) {
        Formula inst = apply_substitution(s, theta);
        if (!free_variables(inst).empty() || !reasoner_.prove(kb_, inst).proved()) {
          established = false;
          break;
        }
      }
      if (!established) continue;
      Term alpha_inst = apply_substitution(alpha, theta);
      if (!alpha_inst.ground()) continue;
      Term event = Term::app("action", sorts::Action,
                             {agent_term(scn_.signature, learner), alpha_inst});
      std::string key = print_term(event) + "@" + std::to_string(t);
      if (!fired_keys.insert(key).second) continue;
      kb_.assert_derived(Formula::atom("happens", {event, Term::moment(t)}),
                         {"trait-fire", {}, {}, "owner=" + learner});
      fired.push_back({learner, alpha_inst, event, t});
    }
  }
  std::sort(fired.begin(), fired.end(), [](const FiredAction& a, const FiredAction& b) {
    return print_term(a.event) < print_term(b.event);
  });
  return fired;
}

bool VirtueEngine::virtuous(const std::string& agent, long long n) const {
  long long count = 0;
  for (const auto& l : agents()) {
    if (l == agent) continue;
    if (is_exemplar(agent, l, scn_.config.exemplar_threshold_n)) ++count;
  }
  return count >= n;
}

VirtueEngine::VirtueCounts VirtueEngine::virtue_counts(const Formula& tau) const {
  VirtueCounts counts;
  for (const auto& trait : traits_) {
    if (!alpha_equivalent(trait.canonical_formula(scn_.signature), tau)) continue;
    ++counts.total;
    if (virtuous(trait.owner, scn_.config.virtuous_threshold)) ++counts.virtuous_restricted;
  }
  return counts;
}

bool VirtueEngine::is_virtue(const Formula& tau, long long n) const {
  return virtue_counts(tau).virtuous_restricted >= n;
}

}  // namespace exemplar
