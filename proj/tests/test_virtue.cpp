#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

using namespace exemplar;
using testutil::AdmirationCase;
using testutil::PipelineHarness;
using testutil::Rng;
using testutil::admiration_scenario;
using testutil::crowd_scenario;
using testutil::must_parse;

namespace {

}  // namespace

TEST_CASE("no admiration for one's own action") {
  AdmirationCase c;
  c.self_action = true;
  PipelineHarness h(admiration_scenario(c));
  CHECK(h.engine.detect_admiration("lrn", c.judgment_time).empty());
}

TEST_CASE("admiration detected when every conjunct is established") {
  // Hand-built: one law initiates flx, mu(flx, y) = 1 for y in 1..6, action
  // at t'=1, so nu = 5 > 0 judged at t=2.
  PipelineHarness h(admiration_scenario({}));
  CHECK(event_utility(h.scn,
                      testutil::must_parse_term("(action per atx)", h.scn.signature), 1) ==
        Rational(5));
  auto records = h.engine.detect_admiration("lrn", 2);
  REQUIRE(records.size() == 1);
  CHECK(records[0].admirer == "lrn");
  CHECK(records[0].admired == "per");
  CHECK(records[0].action_time == 1);
  CHECK(records[0].judgment_time == 2);
  // The admires fluent lands in the kb.
  CHECK(h.kb.contains(must_parse("(holds (admires lrn per atx) 2)", h.scn.signature)));
}

TEST_CASE("each missing conjunct blocks admiration") {
  SUBCASE("no pleased fact") {
    AdmirationCase c;
    c.drop_pleased = true;
    PipelineHarness h(admiration_scenario(c));
    CHECK(h.engine.detect_admiration("lrn", 2).empty());
  }
  SUBCASE("no believed happens") {
    AdmirationCase c;
    c.drop_believed_happens = true;
    PipelineHarness h(admiration_scenario(c));
    CHECK(h.engine.detect_admiration("lrn", 2).empty());
  }
  SUBCASE("action not prior to judgment") {
    AdmirationCase c;
    c.action_not_prior = true;
    PipelineHarness h(admiration_scenario(c));
    CHECK(h.engine.detect_admiration("lrn", c.judgment_time).empty());
  }
  SUBCASE("utility not positive") {
    AdmirationCase c;
    c.negative_utility = true;
    PipelineHarness h(admiration_scenario(c));
    CHECK(h.engine.detect_admiration("lrn", 2).empty());
  }
}

TEST_CASE("stripping every causal law removes all admiration") {
  Scenario scn = admiration_scenario({});
  scn.laws.clear();  // nu becomes 0 everywhere
  PipelineHarness h(std::move(scn));
  h.engine.detect_all();
  CHECK(h.engine.records().empty());
}

TEST_CASE("admirer and admired are never the same agent") {
  Rng rng(0x1F1E);
  for (int trial = 0; trial < 30; ++trial) {
    Scenario scn = crowd_scenario(rng.range(1, 2), rng.range(1, 2), rng.range(1, 2));
    PipelineHarness h(std::move(scn));
    h.engine.detect_all();
    for (const auto& r : h.engine.records()) CHECK(r.admirer != r.admired);
  }
}

TEST_CASE("exemplar status counts distinct admiration witnesses") {
  PipelineHarness h(crowd_scenario(1, 1, 2));
  h.engine.detect_all();
  REQUIRE(h.engine.records().size() == 2);
  CHECK(h.engine.is_exemplar("perf0", "obs0", 1));
  CHECK(h.engine.is_exemplar("perf0", "obs0", 2));
  CHECK(!h.engine.is_exemplar("perf0", "obs0", 3));
  CHECK(!h.engine.is_exemplar("obs0", "perf0", 1));

  SUBCASE("zero records refute any positive threshold") {
    PipelineHarness empty(crowd_scenario(1, 1, 0));
    empty.engine.detect_all();
    CHECK(!empty.engine.is_exemplar("perf0", "obs0", 1));
  }
}

TEST_CASE("learning produces a trait whose witnesses reproduce the observations") {
  PipelineHarness h(crowd_scenario(1, 1, 3));
  h.engine.detect_all();
  auto traits = h.engine.learn_traits("obs0", h.scn.config.horizon, 2, 2);
  REQUIRE(traits.size() == 1);
  const Trait& t = traits[0];
  CHECK(t.owner == "obs0");
  CHECK(t.learned_from == "perf0");
  CHECK(t.observations.size() == 3);
  for (size_t i = 0; i < t.observations.size(); ++i) {
    Formula reproduced = apply_substitution(t.situation[0], t.witnesses[i]);
    CHECK(reproduced == t.observations[i].situation[0]);
    CHECK(apply_substitution(t.action_type, t.witnesses[i]) ==
          t.observations[i].action_type);
  }
}

TEST_CASE("no exemplar or too few observations yields no traits") {
  SUBCASE("nobody admires") {
    PipelineHarness h(crowd_scenario(1, 1, 0));
    h.engine.detect_all();
    CHECK(h.engine.learn_traits("obs0", 6, 2, 2).empty());
  }
  SUBCASE("one observation under m=2") {
    PipelineHarness h(crowd_scenario(1, 1, 1));
    h.engine.detect_all();
    CHECK(h.engine.is_exemplar("perf0", "obs0", 1));
    CHECK(h.engine.learn_traits("obs0", 6, 2, 1).empty());
  }
}

TEST_CASE("a learned trait fires on a new matching situation") {
  Scenario scn = crowd_scenario(1, 1, 2);
  // A fresh item the observer believes in at a later moment.
  long long t_query = 4;
  Term fresh = Term::app("state", sorts::Fluent, {Term::constant("item2", "Item")});
  scn.assertions.push_back(Formula::believes(
      Term::constant("obs0", sorts::Agent), Term::moment(t_query),
      Formula::atom("holds", {fresh, Term::moment(t_query)})));
  for (long long y = 1; y <= scn.config.horizon; ++y)
    scn.mu[{print_term(Term::app("told", sorts::Fluent, {fresh})), y}] = Rational(1);

  PipelineHarness h(std::move(scn));
  h.engine.detect_all();
  REQUIRE(h.engine.learn_traits("obs0", h.scn.config.horizon, 2, 2).size() == 1);

  SUBCASE("the matching moment fires exactly one action") {
    auto fired = h.engine.fire_traits("obs0", t_query);
    REQUIRE(fired.size() == 1);
    CHECK(print_term(fired[0].event) == "(action obs0 (tell (state item2)))");
    CHECK(h.kb.contains(must_parse("(happens (action obs0 (tell (state item2))) 4)",
                                   h.scn.signature)));
  }
  SUBCASE("moments without an established situation fire nothing") {
    CHECK(h.engine.fire_traits("obs0", h.scn.config.horizon).empty());
  }
  SUBCASE("moments before learning fire nothing") {
    CHECK(h.engine.fire_traits("obs0", 1).empty());
  }
}

TEST_CASE("two groundings fire two actions") {
  Scenario scn = crowd_scenario(1, 1, 2);
  long long t_query = 4;
  for (const char* item : {"item2", "item3"}) {
    scn.signature.declare_constant(item, "Item");
  }
  for (const char* item : {"item2", "item3"}) {
    Term fresh = Term::app("state", sorts::Fluent, {Term::constant(item, "Item")});
    scn.assertions.push_back(Formula::believes(
        Term::constant("obs0", sorts::Agent), Term::moment(t_query),
        Formula::atom("holds", {fresh, Term::moment(t_query)})));
    for (long long y = 1; y <= scn.config.horizon; ++y)
      scn.mu[{print_term(Term::app("told", sorts::Fluent, {fresh})), y}] = Rational(1);
  }
  PipelineHarness h(std::move(scn));
  h.engine.detect_all();
  REQUIRE(h.engine.learn_traits("obs0", h.scn.config.horizon, 2, 2).size() == 1);
  auto fired = h.engine.fire_traits("obs0", t_query);
  CHECK(fired.size() == 2);
}

TEST_CASE("consistency: every established situation fires, repeatedly and stably") {
  Scenario scn = crowd_scenario(1, 1, 2);
  scn.config.horizon = 9;  // room for utility past the last query moment
  std::vector<long long> query_times = {4, 5, 6};
  int item_idx = 2;
  for (long long t : query_times) {
    std::string item = "item_q" + std::to_string(item_idx++);
    scn.signature.declare_constant(item, "Item");
    Term fresh = Term::app("state", sorts::Fluent, {Term::constant(item, "Item")});
    scn.assertions.push_back(Formula::believes(
        Term::constant("obs0", sorts::Agent), Term::moment(t),
        Formula::atom("holds", {fresh, Term::moment(t)})));
    for (long long y = 1; y <= scn.config.horizon; ++y)
      scn.mu[{print_term(Term::app("told", sorts::Fluent, {fresh})), y}] = Rational(1);
  }
  PipelineHarness h(std::move(scn));
  h.engine.detect_all();
  REQUIRE(h.engine.learn_traits("obs0", h.scn.config.horizon, 2, 2).size() == 1);

  std::vector<std::string> first_pass;
  for (long long t : query_times) {
    auto fired = h.engine.fire_traits("obs0", t);
    REQUIRE(fired.size() == 1);  // no matching situation skipped
    first_pass.push_back(print_term(fired[0].event));
  }
  // Re-querying the same moments later in the run behaves identically.
  for (size_t i = 0; i < query_times.size(); ++i) {
    auto again = h.engine.fire_traits("obs0", query_times[i]);
    REQUIRE(again.size() == 1);
    CHECK(print_term(again[0].event) == first_pass[i]);
  }
}

TEST_CASE("virtuous counts the agents holding someone as exemplar") {
  PipelineHarness h(crowd_scenario(1, 3, 2));
  h.engine.detect_all();
  CHECK(h.engine.virtuous("perf0", 1));
  CHECK(h.engine.virtuous("perf0", 3));
  CHECK(!h.engine.virtuous("perf0", 4));
  CHECK(!h.engine.virtuous("obs0", 1));
}

TEST_CASE("a trait held by enough virtuous agents is a virtue") {
  PipelineHarness h(crowd_scenario(1, 2, 2));
  h.engine.detect_all();
  auto t0 = h.engine.learn_traits("obs0", h.scn.config.horizon, 2, 2);
  auto t1 = h.engine.learn_traits("obs1", h.scn.config.horizon, 2, 2);
  REQUIRE(t0.size() == 1);
  REQUIRE(t1.size() == 1);
  Formula canon = t0[0].canonical_formula(h.scn.signature);
  // Both observers hold alpha-equivalent traits, but neither observer is
  // anyone's exemplar, so the virtuous-restricted count stays zero.
  auto counts = h.engine.virtue_counts(canon);
  CHECK(counts.total == 2);
  CHECK(counts.virtuous_restricted == 0);
  CHECK(!h.engine.is_virtue(canon, 1));
}

TEST_CASE("virtue counting restricted to virtuous holders") {
  // Observers learn from perf0; then obs agents are themselves admired by
  // two watchers each, making them virtuous.
  Scenario scn = crowd_scenario(1, 2, 2);
  scn.config.horizon = 12;
  scn.signature.declare_constant("w1", sorts::Agent);
  scn.signature.declare_constant("w2", sorts::Agent);
  long long t = 5;
  int item = 10;
  for (const char* obs : {"obs0", "obs1"}) {
    for (int k = 0; k < 2; ++k, ++t, ++item) {
      scn.signature.declare_constant("itemw" + std::to_string(item), "Item");
      Term fluent = Term::app("state", sorts::Fluent,
                              {Term::constant("itemw" + std::to_string(item), "Item")});
      Term event = Term::app(
          "action", sorts::Action,
          {Term::constant(obs, sorts::Agent),
           Term::app("tell", sorts::ActionType, {fluent})});
      scn.happens.push_back({event, t});
      for (long long y = 1; y <= scn.config.horizon; ++y)
        scn.mu[{print_term(Term::app("told", sorts::Fluent, {fluent})), y}] = Rational(1);
      for (const char* w : {"w1", "w2"}) {
        scn.pleased.push_back({w, t});
        scn.assertions.push_back(Formula::believes(
            Term::constant(w, sorts::Agent), Term::moment(t),
            Formula::atom("happens", {event, Term::moment(t)})));
      }
    }
  }
  PipelineHarness h(std::move(scn));
  h.engine.detect_all();
  auto t0 = h.engine.learn_traits("obs0", h.scn.config.horizon, 2, 2);
  auto t1 = h.engine.learn_traits("obs1", h.scn.config.horizon, 2, 2);
  REQUIRE(t0.size() == 1);
  REQUIRE(t1.size() == 1);
  CHECK(h.engine.virtuous("obs0", 2));
  CHECK(h.engine.virtuous("obs1", 2));
  Formula canon = t0[0].canonical_formula(h.scn.signature);
  auto counts = h.engine.virtue_counts(canon);
  CHECK(counts.total == 2);
  CHECK(counts.virtuous_restricted == 2);
  CHECK(h.engine.is_virtue(canon, 2));
  CHECK(!h.engine.is_virtue(canon, 3));
}

TEST_CASE("thresholds are antitone in n") {
  Rng rng(0xA171);
  for (int trial = 0; trial < 60; ++trial) {
    Scenario scn = crowd_scenario(rng.range(1, 2), rng.range(1, 3), rng.range(0, 3));
    PipelineHarness h(std::move(scn));
    h.engine.detect_all();
    for (const auto& e : h.engine.agents()) {
      for (const auto& l : h.engine.agents()) {
        for (long long n = 1; n < 5; ++n) {
          // true at n+1 implies true at n
          if (h.engine.is_exemplar(e, l, n + 1)) CHECK(h.engine.is_exemplar(e, l, n));
        }
      }
      for (long long n = 1; n < 5; ++n)
        if (h.engine.virtuous(e, n + 1)) CHECK(h.engine.virtuous(e, n));
    }
  }
}

TEST_CASE("re-learning yields no alpha-variant duplicates") {
  PipelineHarness h(crowd_scenario(1, 1, 2));
  h.engine.detect_all();
  REQUIRE(h.engine.learn_traits("obs0", h.scn.config.horizon, 2, 2).size() == 1);
  CHECK(h.engine.learn_traits("obs0", h.scn.config.horizon, 2, 2).empty());
  CHECK(h.engine.traits().size() == 1);
}

TEST_CASE("a private utility table overrides the global one inside beliefs") {
  Scenario scn = admiration_scenario({});
  // Globally the action is valuable, but the admirer's own table disagrees.
  for (long long y = 1; y <= scn.config.horizon; ++y)
    scn.private_mu["lrn"][{"flx", y}] = Rational(-1);
  PipelineHarness h(std::move(scn));
  CHECK(h.engine.detect_admiration("lrn", 2).empty());
}

TEST_CASE("believed causal laws replace the global ones inside beliefs") {
  Scenario scn = admiration_scenario({});
  scn.signature.declare_constant("fly", sorts::Fluent);
  // The admirer believes the action initiates a worthless fluent instead.
  Term law_event = Term::app("action", sorts::Action,
                             {Term::var("A", sorts::Agent),
                              Term::constant("atx", sorts::ActionType)});
  Formula believed_law = Formula::forall(
      Term::var("A", sorts::Agent),
      Formula::forall(Term::var("T", sorts::Moment),
                      Formula::atom("initiates", {law_event,
                                                  Term::constant("fly", sorts::Fluent),
                                                  Term::var("T", sorts::Moment)})));
  scn.assertions.push_back(Formula::believes(Term::constant("lrn", sorts::Agent),
                                             Term::moment(0), believed_law));
  PipelineHarness h(std::move(scn));
  // Under the believed law nu sums mu(fly, .) = 0, which is not positive.
  CHECK(h.engine.detect_admiration("lrn", 2).empty());
}

TEST_CASE("admiration reaches happens facts derived inside the belief context") {
  // The learner never directly believes the happens fact; it follows from a
  // believed implication, is materialized at later moments, and then feeds
  // the admiration conjunction.
  Scenario scn = admiration_scenario({});
  scn.assertions.clear();  // drop the direct believed happens
  scn.pleased.clear();
  scn.pleased.push_back({"lrn", 1});
  scn.signature.declare_predicate("rumor", {});
  Term event = testutil::must_parse_term("(action per atx)", scn.signature);
  Formula happens = Formula::atom("happens", {event, Term::moment(1)});
  Term lrn = Term::constant("lrn", sorts::Agent);
  scn.assertions.push_back(
      Formula::believes(lrn, Term::moment(1), Formula::atom("rumor")));
  scn.assertions.push_back(Formula::believes(
      lrn, Term::moment(1), Formula::implies(Formula::atom("rumor"), happens)));
  PipelineHarness h(std::move(scn));
  auto records = h.engine.detect_admiration("lrn", 2);
  REQUIRE(records.size() == 1);
  CHECK(records[0].action_time == 1);
}
