// Acceptance suite: one pass/fail line per criterion, non-zero exit on any
// failure. Scenario directory comes in argv[1].

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "exemplar/report.hpp"
#include "exemplar/trace_check.hpp"
#include "testutil.hpp"

using namespace exemplar;
using testutil::AdmirationCase;
using testutil::FormulaGen;
using testutil::PipelineHarness;
using testutil::Rng;
using testutil::admiration_scenario;
using testutil::crowd_scenario;
using testutil::must_parse;
using testutil::nu_oracle;
using testutil::random_nu_scenario;
using testutil::test_signature;

namespace {

int g_failures = 0;
uint64_t g_seed = 0;  // offset for the property-test generators

void report(int criterion, const std::string& name, bool ok, const std::string& detail = "") {
  std::printf("%s  criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

std::string g_scenario_dir;

// --- 1: marketplace reproduction -------------------------------------------

void criterion_marketplace() {
  auto t0 = std::chrono::steady_clock::now();
  auto scn = load_scenario(g_scenario_dir + "/marketplace.scn");
  if (!scn.ok()) {
    report(1, "marketplace reproduction", false, "scenario failed to load");
    return;
  }
  RunResult result = run_pipeline(*scn);
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  Formula golden = must_parse(
      "(and (believes d ?T:Moment (and (holds ?X:Fluent ?T:Moment)"
      " (> (nu (utter ?X:Fluent) ?T:Moment) 0)))"
      " (happens (action d (utter ?X:Fluent)) ?T:Moment))",
      scn->signature);

  bool one_trait = result.traits.size() == 1 && result.traits[0].owner == "d";
  bool trait_matches =
      one_trait && alpha_equivalent(result.traits[0].single_formula("d", scn->signature),
                                    golden);
  bool accurate_response = false;
  for (const auto& act : result.actions) {
    if (act.agent == "d" && print_term(act.event) == "(action d (utter (new u)))" &&
        holds_at(*scn, act.action_type.args[0], act.time))
      accurate_response = true;
  }
  bool fast = secs < 10.0;
  char buf[160];
  std::snprintf(buf, sizeof buf, "traits=%zu match=%d response=%d wall=%.2fs",
                result.traits.size(), trait_matches ? 1 : 0, accurate_response ? 1 : 0,
                secs);
  report(1, "marketplace reproduction", one_trait && trait_matches && accurate_response && fast,
         buf);
}

// --- 2: anti-unification goldens -------------------------------------------

void criterion_antiunify_goldens() {
  Signature sig = test_signature();
  bool ok = true;
  std::string detail;

  auto ho = [&](const char* a, const char* b) {
    return anti_unify_ho(must_parse(a, sig), must_parse(b, sig), sig);
  };

  auto g1 = ho("(hungry jack)", "(hungry jill)");
  if (!g1.ok() ||
      !alpha_equivalent(g1->g, Formula::atom("hungry", {Term::var("X", sorts::Agent)}))) {
    ok = false;
    detail += "[hungry] ";
  }

  auto g2 = ho("(likes jill jack)", "(likes jill jim)");
  Formula expect2 = Formula::atom(
      "likes", {Term::constant("jill", sorts::Agent), Term::var("X", sorts::Agent)});
  if (!g2.ok() || !alpha_equivalent(g2->g, expect2)) {
    ok = false;
    detail += "[likes] ";
  }

  auto g3 = ho("(likes jill jack)", "(loves jill jim)");
  Formula expect3 = Formula::pred_var_atom(
      "P", {Term::constant("jill", sorts::Agent), Term::var("X", sorts::Agent)});
  if (!g3.ok() || !alpha_equivalent(g3->g, expect3)) {
    ok = false;
    detail += "[P-abstraction] ";
  }

  EntailmentCheck entails = [&sig](const std::vector<Formula>& phi, const Formula& psi) {
    KnowledgeBase kb(4);
    for (const auto& f : phi) kb.assert_axiom(f);
    return Reasoner(sig, ProverBounds{8, 4, 3, 5000}).prove(kb, psi).proved();
  };
  auto g4 = generalize_formula_set(
      {{must_parse("(implies (talkingWith jack) Honesty)", sig)},
       {must_parse("(implies (talkingWith jill) Honesty)", sig)}},
      sig, entails);
  Formula expect4 =
      must_parse("(forall ?x:Agent (implies (talkingWith ?x:Agent) Honesty))", sig);
  if (!g4.ok() || g4->phi.size() != 1 || !alpha_equivalent(g4->phi[0], expect4)) {
    ok = false;
    detail += "[formula-set] ";
  }
  report(2, "anti-unification goldens", ok, detail);
}

// --- 3: nu oracle equivalence ----------------------------------------------

void criterion_nu_oracle() {
  Rng rng(0xACCE9 + g_seed);
  int mismatches = 0, comparisons = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Scenario scn = random_nu_scenario(rng);
    for (const auto& h : scn.happens) {
      ++comparisons;
      if (event_utility(scn, h.event, h.time) != nu_oracle(scn, h.event, h.time))
        ++mismatches;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d comparisons over 500 scenarios, %d mismatches",
                comparisons, mismatches);
  report(3, "nu oracle equivalence", mismatches == 0 && comparisons >= 500, buf);
}

// --- 4: generalization contract --------------------------------------------

void criterion_generalization_contract() {
  auto t0 = std::chrono::steady_clock::now();
  Rng rng(0xC04 + g_seed);
  Signature sig = test_signature();
  EntailmentCheck entails = [&sig](const std::vector<Formula>& phi, const Formula& psi) {
    KnowledgeBase kb(4);
    for (const auto& f : phi) kb.assert_axiom(f);
    return Reasoner(sig, ProverBounds{8, 4, 3, 5000}).prove(kb, psi).proved();
  };

  const std::vector<std::string> agents = {"jack", "jill", "jim", "alice", "bob", "charlie"};
  auto shape = [&](int which, const std::string& agent) -> Formula {
    switch (which) {
      case 0: return must_parse("(talkingWith " + agent + ")", sig);
      case 1: return must_parse("(implies (talkingWith " + agent + ") Honesty)", sig);
      case 2: return must_parse("(hungry " + agent + ")", sig);
      case 3: return must_parse("(likes " + agent + " jack)", sig);
      case 4: return must_parse("(believes " + agent + " 1 (hungry " + agent + "))", sig);
      default: return must_parse("(implies (hungry " + agent + ") (talkingWith " + agent +
                                     "))",
                                 sig);
    }
  };

  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    int set_size = rng.range(1, 3);
    std::string a1 = rng.pick(agents), a2 = rng.pick(agents);
    std::vector<Formula> s1, s2;
    std::set<int> used;
    for (int i = 0; i < set_size; ++i) {
      int which = rng.range(0, 5);
      if (!used.insert(which).second) continue;
      s1.push_back(shape(which, a1));
      s2.push_back(shape(which, a2));
    }
    auto g = generalize_formula_set({s1, s2}, sig, entails);
    if (!g.ok()) ++failures;
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  char buf[96];
  std::snprintf(buf, sizeof buf, "100 pairs, %d contract failures, %.1fs", failures, secs);
  report(4, "generalization contract", failures == 0 && secs < 60.0, buf);
}

// --- 5: admiration biconditional -------------------------------------------

void criterion_admiration_biconditional() {
  Rng rng(0xB1C + g_seed);
  int cases = 0, wrong = 0;
  for (int trial = 0; trial < 40; ++trial) {
    AdmirationCase base;
    base.action_time = rng.range(0, 3);
    base.judgment_time = base.action_time + rng.range(1, 2);

    {  // all conjuncts present => detected
      PipelineHarness h(admiration_scenario(base));
      if (h.engine.detect_admiration("lrn", base.judgment_time).empty()) ++wrong;
      ++cases;
    }
    for (int ablation = 0; ablation < 4; ++ablation) {
      AdmirationCase c = base;
      switch (ablation) {
        case 0: c.drop_pleased = true; break;
        case 1: c.drop_believed_happens = true; break;
        case 2: c.self_action = true; break;
        case 3: c.negative_utility = true; break;
      }
      PipelineHarness h(admiration_scenario(c));
      if (!h.engine.detect_admiration("lrn", c.judgment_time).empty()) ++wrong;
      ++cases;
    }
    {  // t' < t ablation: judge at the action's own moment
      AdmirationCase c = base;
      c.action_not_prior = true;
      PipelineHarness h(admiration_scenario(c));
      if (!h.engine.detect_admiration("lrn", c.judgment_time).empty()) ++wrong;
      ++cases;
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d cases, %d wrong", cases, wrong);
  report(5, "admiration biconditional", cases >= 200 && wrong == 0, buf);
}

// --- 6: threshold monotonicity ----------------------------------------------

void criterion_threshold_monotonicity() {
  Rng rng(0x604 + g_seed);
  int scenarios = 0, checks = 0, violations = 0;
  for (; scenarios < 1000; ++scenarios) {
    Scenario scn = crowd_scenario(rng.range(1, 2), rng.range(1, 3), rng.range(0, 3));
    PipelineHarness h(std::move(scn));
    h.engine.detect_all();
    std::vector<Trait> learned;
    for (const auto& l : h.engine.agents()) {
      auto ts = h.engine.learn_traits(l, h.scn.config.horizon, 2, 1);
      learned.insert(learned.end(), ts.begin(), ts.end());
    }
    for (const auto& e : h.engine.agents()) {
      for (const auto& l : h.engine.agents()) {
        for (long long n = 1; n < 5; ++n) {
          if (h.engine.is_exemplar(e, l, n + 1) && !h.engine.is_exemplar(e, l, n))
            ++violations;
          ++checks;
        }
      }
      for (long long n = 1; n < 5; ++n) {
        if (h.engine.virtuous(e, n + 1) && !h.engine.virtuous(e, n)) ++violations;
        ++checks;
      }
    }
    for (const auto& t : learned) {
      Formula canon = t.canonical_formula(h.scn.signature);
      for (long long n = 1; n < 4; ++n) {
        if (h.engine.is_virtue(canon, n + 1) && !h.engine.is_virtue(canon, n)) ++violations;
        ++checks;
      }
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d scenario trials, %d checks, %d violations", scenarios,
                checks, violations);
  report(6, "threshold monotonicity", scenarios >= 1000 && violations == 0, buf);
}

// --- 7: prover soundness by replay ------------------------------------------

void criterion_replay() {
  Rng rng(0x7EB1A + g_seed);
  Signature sig = test_signature();
  int proved = 0, replay_failures = 0;

  for (int trial = 0; trial < 300; ++trial) {
    FormulaGen gen(rng, sig);
    gen.allow_vars = false;
    KnowledgeBase kb(4);
    std::vector<Formula> pool;
    for (int i = 0; i < rng.range(2, 6); ++i) {
      Formula f = gen.formula(rng.range(0, 2));
      pool.push_back(f);
      kb.assert_axiom(f);
    }
    Formula goal = rng.pick(pool);
    switch (rng.range(0, 3)) {
      case 0: goal = Formula::conj({rng.pick(pool), rng.pick(pool)}); break;
      case 1: goal = Formula::disj({gen.formula(0), rng.pick(pool)}); break;
      case 2: goal = Formula::implies(gen.formula(0), rng.pick(pool)); break;
      default: break;
    }
    Reasoner r(sig, ProverBounds{6, 3, 3, 2000});
    ProofResult proof = r.prove(kb, goal);
    if (!proof.proved()) continue;
    ++proved;
    std::string err;
    if (!replay_trace(proof.trace, kb.printed_all(), nullptr, sig, &err, kb.horizon())) {
      ++replay_failures;
      std::printf("  random replay failure (trial %d): %s\n%s", trial, err.c_str(),
                  print_trace(proof.trace).c_str());
    }
  }

  // Belief-context and native-heavy proofs from the marketplace.
  auto scn = load_scenario(g_scenario_dir + "/marketplace.scn");
  if (scn.ok()) {
    KnowledgeBase kb = initial_kb(*scn);
    Reasoner r(scn->signature, bounds_from_config(scn->config), &*scn);
    r.saturate(kb);
    const char* goals[] = {
        "(believes d 2 (happens (action a (utter (new x))) 1))",
        "(believes d 2 (and (not (= d a)) (prior 1 2)"
        " (happens (action a (utter (new x))) 1)"
        " (> (nu (action a (utter (new x))) 1) 0)))",
        "(holds (new x) 0)",
        "(prior 1 2)",
        "(> (nu (action a (utter (old y))) 2) 0)",
        "(exists-atleast 2 ?t:Moment (pleased d ?t:Moment))",
    };
    for (const char* text : goals) {
      ProofResult proof = r.prove(kb, must_parse(text, scn->signature));
      if (!proof.proved()) {
        ++replay_failures;
        continue;
      }
      ++proved;
      std::string err;
      if (!replay_trace(proof.trace, kb.printed_all(), &*scn, scn->signature, &err)) {
        ++replay_failures;
        std::printf("  replay failure on %s: %s\n", text, err.c_str());
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%d proved, %d replay failures", proved, replay_failures);
  report(7, "prover soundness by replay", proved > 100 && replay_failures == 0, buf);
}

// --- 8: consistency and stability -------------------------------------------

void criterion_consistency_stability() {
  Rng rng(0x8CA + g_seed);
  int scenarios = 0, missed = 0, unstable = 0;
  for (int trial = 0; trial < 25; ++trial) {
    Scenario scn = crowd_scenario(1, 1, 2);
    scn.config.horizon = 12;
    std::vector<long long> query_times;
    int extra = 3 + rng.range(0, 2);
    long long t = 4;
    for (int k = 0; k < extra; ++k, ++t) {
      std::string item = "q" + std::to_string(k);
      scn.signature.declare_constant(item, "Item");
      Term fresh = Term::app("state", sorts::Fluent, {Term::constant(item, "Item")});
      scn.assertions.push_back(Formula::believes(
          Term::constant("obs0", sorts::Agent), Term::moment(t),
          Formula::atom("holds", {fresh, Term::moment(t)})));
      for (long long y = 1; y <= scn.config.horizon; ++y)
        scn.mu[{print_term(Term::app("told", sorts::Fluent, {fresh})), y}] = Rational(1);
      query_times.push_back(t);
    }
    PipelineHarness h(std::move(scn));
    h.engine.detect_all();
    if (h.engine.learn_traits("obs0", h.scn.config.horizon, 2, 2).size() != 1) {
      ++missed;
      continue;
    }
    ++scenarios;
    std::vector<std::string> first;
    for (long long qt : query_times) {
      auto fired = h.engine.fire_traits("obs0", qt);
      if (fired.size() != 1) ++missed;
      first.push_back(fired.empty() ? "" : print_term(fired[0].event));
    }
    for (size_t i = 0; i < query_times.size(); ++i) {
      auto again = h.engine.fire_traits("obs0", query_times[i]);
      if (again.size() != 1 || print_term(again[0].event) != first[i]) ++unstable;
    }
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%d scenarios (>=3 situations each), %d missed, %d unstable",
                scenarios, missed, unstable);
  report(8, "consistency and stability", scenarios >= 20 && missed == 0 && unstable == 0,
         buf);
}

// --- 9: parser round-trip ----------------------------------------------------

void criterion_round_trip() {
  Rng rng(0x909 + g_seed);
  Signature sig = test_signature();
  int failures = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    FormulaGen gen(rng, sig);
    Formula f = gen.formula(rng.range(0, 4));
    auto back = parse_formula(print_formula(f), sig);
    if (!back.ok() || *back != f) ++failures;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "1000 formulas, %d failures", failures);
  report(9, "parser round-trip", failures == 0, buf);
}

}  // namespace

int main(int argc, char** argv) {
  g_scenario_dir = argc > 1 ? argv[1] : "scenarios";
  if (argc > 2) g_seed = std::strtoull(argv[2], nullptr, 10);
  if (g_seed) std::printf("generator seed offset: %llu\n", (unsigned long long)g_seed);
  criterion_marketplace();
  criterion_antiunify_goldens();
  criterion_nu_oracle();
  criterion_generalization_contract();
  criterion_admiration_biconditional();
  criterion_threshold_monotonicity();
  criterion_replay();
  criterion_consistency_stability();
  criterion_round_trip();
  if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
  else std::printf("all acceptance criteria passed\n");
  return g_failures == 0 ? 0 : 1;
}
