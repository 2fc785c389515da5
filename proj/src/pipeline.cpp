#include "exemplar/pipeline.hpp"

#include <chrono>
#include <set>

#include "exemplar/log.hpp"
#include "exemplar/printer.hpp"

namespace exemplar {

Scenario apply_overrides(Scenario scn, const RunOverrides& o) {
  if (o.horizon) scn.config.horizon = *o.horizon;
  if (o.m) scn.config.trait_threshold_m = *o.m;
  if (o.n) scn.config.exemplar_threshold_n = *o.n;
  if (o.max_rounds) scn.config.max_rounds = *o.max_rounds;
  if (o.max_depth) scn.config.max_modal_depth = *o.max_depth;
  return scn;
}

KnowledgeBase initial_kb(const Scenario& scn) {
  KnowledgeBase kb(scn.config.horizon);
  for (const auto& h : scn.happens)
    kb.assert_axiom(Formula::atom("happens", {h.event, Term::moment(h.time)}));
  for (const auto& f : scn.initial_holds)
    kb.assert_axiom(Formula::atom("holds", {f, Term::moment(0)}));
  for (const auto& p : scn.pleased) {
    Term agent = Term::constant(
        p.agent, scn.signature.constant_sort(p.agent).value_or(sorts::Agent));
    kb.assert_axiom(Formula::atom("pleased", {agent, Term::moment(p.time)}));
  }
  for (const auto& f : scn.assertions) kb.assert_axiom(f);
  return kb;
}

RunResult run_pipeline(const Scenario& scn) {
  auto start = std::chrono::steady_clock::now();
  RunResult out;

  KnowledgeBase kb = initial_kb(scn);
  Reasoner reasoner(scn.signature, bounds_from_config(scn.config), &scn);
  out.saturation = reasoner.saturate(kb);
  LOG_DEBUG("saturation: %d rounds, %zu formulas", out.saturation.rounds, kb.size());

  VirtueEngine engine(scn, kb, reasoner);
  engine.detect_all();
  out.admirations = engine.records();
  LOG_DEBUG("admiration records: %zu", out.admirations.size());

  const long long n = scn.config.exemplar_threshold_n;
  const long long m = scn.config.trait_threshold_m;
  auto agents = engine.agents();
  for (const auto& e : agents) {
    for (const auto& l : agents) {
      if (e == l || !engine.is_exemplar(e, l, n)) continue;
      std::set<std::pair<long long, std::string>> witnesses;
      for (const auto& r : engine.records())
        if (r.admirer == l && r.admired == e)
          witnesses.insert({r.action_time, print_term(r.action_type)});
      out.exemplars.push_back({e, l, static_cast<long long>(witnesses.size())});
      Term et = Term::constant(e, scn.signature.constant_sort(e).value_or(sorts::Agent));
      Term lt = Term::constant(l, scn.signature.constant_sort(l).value_or(sorts::Agent));
      kb.assert_derived(Formula::atom("exemplar", {et, lt}),
                        {"exemplar", {}, {}, "n=" + std::to_string(n)});
    }
  }

  for (const auto& l : agents) {
    auto learned = engine.learn_traits(l, scn.config.horizon, m, n);
    for (auto& t : learned) out.traits.push_back(std::move(t));
  }
  LOG_DEBUG("learned traits: %zu", out.traits.size());

  std::set<std::string> fired_keys;
  for (long long t = 0; t <= scn.config.horizon; ++t) {
    for (const auto& l : agents) {
      for (auto& f : engine.fire_traits(l, t)) {
        std::string key = print_term(f.event) + "@" + std::to_string(f.time);
        if (fired_keys.insert(key).second) out.actions.push_back(std::move(f));
      }
    }
  }
  LOG_DEBUG("fired actions: %zu", out.actions.size());

  for (const auto& q : scn.queries) {
    QueryOutcome o;
    switch (q.kind) {
      case ScenarioQuery::Kind::Virtuous: {
        o.kind = "virtuous";
        o.description = q.agent + " n=" + std::to_string(q.n);
        o.verdict = engine.virtuous(q.agent, q.n);
        break;
      }
      case ScenarioQuery::Kind::Virtue: {
        o.kind = "virtue";
        o.description = print_formula(q.formula) + " n=" + std::to_string(q.n);
        auto counts = engine.virtue_counts(q.formula);
        o.count_total = counts.total;
        o.count_restricted = counts.virtuous_restricted;
        o.verdict = counts.virtuous_restricted >= q.n;
        break;
      }
      case ScenarioQuery::Kind::Prove: {
        o.kind = "prove";
        o.description = print_formula(q.formula);
        auto proof = reasoner.prove(kb, q.formula);
        o.verdict = proof.proved();
        o.trace = print_trace(proof.trace);
        break;
      }
    }
    out.queries.push_back(std::move(o));
  }

  out.duration_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  return out;
}

Result<RunResult> run_scenario_file(const std::string& path, const RunOverrides& overrides) {
  auto scn = load_scenario(path);
  if (!scn.ok()) return Result<RunResult>::failure(std::move(scn.diagnostics));
  Scenario adjusted = apply_overrides(std::move(*scn), overrides);
  return Result<RunResult>::success(run_pipeline(adjusted));
}

}  // namespace exemplar
