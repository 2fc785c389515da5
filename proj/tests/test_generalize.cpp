#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

using namespace exemplar;
using testutil::Rng;
using testutil::must_parse;
using testutil::test_signature;

namespace {

// Tiny term vocabulary for lgg properties: f/1, g/2, constants c1 c2.
Signature tiny_signature() {
  Signature sig;
  sig.declare_constant("c1", sorts::Object);
  sig.declare_constant("c2", sorts::Object);
  sig.declare_functor("f", {sorts::Object}, sorts::Object);
  sig.declare_functor("g", {sorts::Object, sorts::Object}, sorts::Object);
  return sig;
}

Term random_tiny_term(Rng& rng, int depth, bool with_vars = false) {
  Signature sig = tiny_signature();
  if (depth <= 1 || rng.flip(0.35)) {
    if (with_vars && rng.flip(0.3))
      return Term::var(rng.flip() ? "V" : "W", sorts::Object);
    return Term::constant(rng.flip() ? "c1" : "c2", sorts::Object);
  }
  if (rng.flip())
    return Term::app("f", sorts::Object, {random_tiny_term(rng, depth - 1, with_vars)});
  return Term::app("g", sorts::Object,
                   {random_tiny_term(rng, depth - 1, with_vars),
                    random_tiny_term(rng, depth - 1, with_vars)});
}

// All terms (with variables X, Y) up to the given node depth.
std::vector<Term> all_tiny_terms(int depth) {
  std::vector<Term> layer = {
      Term::constant("c1", sorts::Object), Term::constant("c2", sorts::Object),
      Term::var("X", sorts::Object), Term::var("Y", sorts::Object)};
  std::vector<Term> all = layer;
  for (int d = 2; d <= depth; ++d) {
    std::vector<Term> next;
    for (const auto& a : all)
      if (static_cast<int>(a.depth()) == d - 1)
        next.push_back(Term::app("f", sorts::Object, {a}));
    for (const auto& a : all)
      for (const auto& b : all)
        if (static_cast<int>(std::max(a.depth(), b.depth())) == d - 1)
          next.push_back(Term::app("g", sorts::Object, {a, b}));
    all.insert(all.end(), next.begin(), next.end());
  }
  return all;
}

Term fnew_of(const std::string& item) {
  return Term::app("fnew", sorts::Fluent, {Term::constant(item, "Item")});
}

EntailmentCheck reasoner_entails(const Signature& sig) {
  return [&sig](const std::vector<Formula>& phi, const Formula& psi) {
    KnowledgeBase kb(4);
    for (const auto& f : phi) kb.assert_axiom(f);
    Reasoner r(sig, ProverBounds{8, 4, 3, 4000});
    return r.prove(kb, psi).proved();
  };
}

}  // namespace

TEST_CASE("unify binds a variable to a constant") {
  Signature sig = test_signature();
  Term t1 = Term::app("fnew", sorts::Fluent, {Term::var("X", "Item")});
  Term t2 = fnew_of("it1");
  auto s = unify(t1, t2, sig);
  REQUIRE(s.has_value());
  CHECK(apply_substitution(t1, *s) == t2);
}

TEST_CASE("unify fails on a doubled variable against distinct constants") {
  Signature sig = test_signature();
  // likes(X, X) vs likes(jack, jill) modeled on terms via g(X, X).
  Signature tiny = tiny_signature();
  Term lhs = Term::app("g", sorts::Object,
                       {Term::var("X", sorts::Object), Term::var("X", sorts::Object)});
  Term rhs = Term::app("g", sorts::Object,
                       {Term::constant("c1", sorts::Object),
                        Term::constant("c2", sorts::Object)});
  CHECK(!unify(lhs, rhs, tiny).has_value());
}

TEST_CASE("unify respects the occurs check") {
  Signature tiny = tiny_signature();
  Term x = Term::var("X", sorts::Object);
  Term fx = Term::app("f", sorts::Object, {x});
  CHECK(!unify(x, fx, tiny).has_value());
}

TEST_CASE("unify respects sorts when binding variables") {
  Signature sig = test_signature();
  Term agent_var = Term::var("A", sorts::Agent);
  Term item = Term::constant("it1", "Item");
  CHECK(!unify(agent_var, item, sig).has_value());
  Term obj_var = Term::var("O", sorts::Object);
  CHECK(unify(obj_var, item, sig).has_value());  // Item widens to Object
}

TEST_CASE("anti-unification of hungry(jack)/hungry(jill) shaped terms") {
  Signature sig = test_signature();
  TermGeneralization g = *anti_unify_terms(fnew_of("it1"), fnew_of("it2"), sig);
  CHECK(alpha_equivalent(g.g, Term::app("fnew", sorts::Fluent, {Term::var("Z", "Item")})));
  CHECK(apply_substitution(g.g, g.witnesses[0]) == fnew_of("it1"));
  CHECK(apply_substitution(g.g, g.witnesses[1]) == fnew_of("it2"));
}

TEST_CASE("anti-unification keeps the common left argument") {
  // likes(jill, jack) vs likes(jill, jim) -> likes(jill, X), as terms.
  Signature tiny = tiny_signature();
  auto mk = [&](const char* right) {
    return Term::app("g", sorts::Object,
                     {Term::constant("c1", sorts::Object),
                      Term::constant(right, sorts::Object)});
  };
  TermGeneralization g = *anti_unify_terms(mk("c1"), mk("c2"), tiny);
  REQUIRE(g.g.is_app());
  CHECK(g.g.args[0] == Term::constant("c1", sorts::Object));
  CHECK(g.g.args[1].is_var());
}

TEST_CASE("anti-unification of identical terms introduces no variables") {
  Signature sig = test_signature();
  Term t = fnew_of("it1");
  TermGeneralization g = *anti_unify_terms(t, t, sig);
  CHECK(g.g == t);
  CHECK(g.witnesses[0].empty());
}

TEST_CASE("mismatched tuples share one fresh variable per distinct pair") {
  Signature tiny = tiny_signature();
  // g(c1, c1) vs g(c2, c2): both positions mismatch with the SAME pair, so
  // one shared variable covers both.
  Term t1 = Term::app("g", sorts::Object, {Term::constant("c1", sorts::Object),
                                           Term::constant("c1", sorts::Object)});
  Term t2 = Term::app("g", sorts::Object, {Term::constant("c2", sorts::Object),
                                           Term::constant("c2", sorts::Object)});
  TermGeneralization g = *anti_unify_terms(t1, t2, tiny);
  REQUIRE(g.g.args[0].is_var());
  CHECK(g.g.args[0] == g.g.args[1]);
}

TEST_CASE("higher-order anti-unification abstracts differing predicates") {
  Signature sig = test_signature();
  Formula likes = must_parse("(likes jill jack)", sig);
  Formula loves = must_parse("(loves jill jim)", sig);
  auto g = anti_unify_ho(likes, loves, sig);
  REQUIRE(g.ok());
  Formula expect = Formula::pred_var_atom(
      "P", {Term::constant("jill", sorts::Agent), Term::var("X", sorts::Agent)});
  CHECK(alpha_equivalent(g->g, expect));
  CHECK(apply_substitution(g->g, g->witnesses[0]) == likes);
  CHECK(apply_substitution(g->g, g->witnesses[1]) == loves);
}

TEST_CASE("higher-order anti-unification of identical atoms is the atom") {
  Signature sig = test_signature();
  Formula likes = must_parse("(likes jill jack)", sig);
  auto g = anti_unify_ho(likes, likes, sig);
  REQUIRE(g.ok());
  CHECK(g->g == likes);
}

TEST_CASE("predicate-only mismatch abstracts just the head") {
  // likes(a,b) vs loves(a,b) -> P(a,b); verified by applying the witnesses.
  Signature sig = test_signature();
  Formula likes = must_parse("(likes jack jill)", sig);
  Formula loves = must_parse("(loves jack jill)", sig);
  auto g = anti_unify_ho(likes, loves, sig);
  REQUIRE(g.ok());
  REQUIRE(g->g.pred_var);
  CHECK(g->g.args[0] == Term::constant("jack", sorts::Agent));
  CHECK(g->g.args[1] == Term::constant("jill", sorts::Agent));
  CHECK(apply_substitution(g->g, g->witnesses[0]) == likes);
  CHECK(apply_substitution(g->g, g->witnesses[1]) == loves);
}

TEST_CASE("higher-order anti-unification requires equal arities") {
  Signature sig = test_signature();
  auto g = anti_unify_ho(must_parse("(likes jill jack)", sig),
                         must_parse("(hungry jill)", sig), sig);
  REQUIRE(!g.ok());
  CHECK(g.diagnostics[0].kind == ErrorKind::ArityMismatch);
}

TEST_CASE("formula-set generalization reproduces the talkingWith example") {
  Signature sig = test_signature();
  std::vector<std::vector<Formula>> sets = {
      {must_parse("(implies (talkingWith jack) Honesty)", sig)},
      {must_parse("(implies (talkingWith jill) Honesty)", sig)},
  };
  auto g = generalize_formula_set(sets, sig, reasoner_entails(sig));
  REQUIRE(g.ok());
  REQUIRE(g->phi.size() == 1);
  Formula expect =
      must_parse("(forall ?x:Agent (implies (talkingWith ?x:Agent) Honesty))", sig);
  CHECK(alpha_equivalent(g->phi[0], expect));
}

TEST_CASE("generalizing identical singleton sets is the identity") {
  Signature sig = test_signature();
  Formula p = must_parse("(hungry jack)", sig);
  auto g = generalize_formula_set({{p}, {p}}, sig, reasoner_entails(sig));
  REQUIRE(g.ok());
  CHECK(g->phi_open[0] == p);
  CHECK(g->phi[0] == p);  // no variables introduced, no closure
}

TEST_CASE("three talking situations generalize to one agent variable") {
  Signature sig = test_signature();
  std::vector<std::vector<Formula>> sets = {
      {must_parse("(talkingWith alice)", sig)},
      {must_parse("(talkingWith bob)", sig)},
      {must_parse("(talkingWith charlie)", sig)},
  };
  auto g = generalize_formula_set(sets, sig, reasoner_entails(sig));
  REQUIRE(g.ok());
  CHECK(alpha_equivalent(g->phi_open[0], must_parse("(talkingWith ?x:Agent)", sig)));
  REQUIRE(g->witnesses.size() == 3);
  CHECK(apply_substitution(g->phi_open[0], g->witnesses[1]) ==
        must_parse("(talkingWith bob)", sig));
}

TEST_CASE("different-sized sets cannot align") {
  Signature sig = test_signature();
  Formula p = must_parse("(hungry jack)", sig);
  Formula q = must_parse("(hungry jill)", sig);
  auto g = generalize_formula_set({{p, q}, {p}}, sig, nullptr);
  REQUIRE(!g.ok());
  CHECK(g.diagnostics[0].message.find("alignment") != std::string::npos);
}

TEST_CASE("structurally incompatible sets cannot align") {
  Signature sig = test_signature();
  auto g = generalize_formula_set({{must_parse("(hungry jack)", sig)},
                                   {must_parse("(not (hungry jack))", sig)}},
                                  sig, nullptr);
  REQUIRE(!g.ok());
}

TEST_CASE("witness soundness on random term pairs") {
  Rng rng(0xB0B);
  Signature tiny = tiny_signature();
  for (int trial = 0; trial < 400; ++trial) {
    Term t1 = random_tiny_term(rng, rng.range(1, 4));
    Term t2 = random_tiny_term(rng, rng.range(1, 4));
    TermGeneralization g = *anti_unify_terms(t1, t2, tiny);
    CHECK(apply_substitution(g.g, g.witnesses[0]) == t1);
    CHECK(apply_substitution(g.g, g.witnesses[1]) == t2);
  }
}

TEST_CASE("anti-unification commutes up to renaming") {
  Rng rng(0xC0 + 1);
  Signature tiny = tiny_signature();
  for (int trial = 0; trial < 300; ++trial) {
    Term t1 = random_tiny_term(rng, rng.range(1, 4));
    Term t2 = random_tiny_term(rng, rng.range(1, 4));
    Term g12 = anti_unify_terms(t1, t2, tiny)->g;
    Term g21 = anti_unify_terms(t2, t1, tiny)->g;
    CHECK(alpha_equivalent(g12, g21));
  }
}

TEST_CASE("anti-unification is idempotent") {
  Rng rng(0x1DE);
  Signature tiny = tiny_signature();
  for (int trial = 0; trial < 200; ++trial) {
    Term t = random_tiny_term(rng, rng.range(1, 4), /*with_vars=*/true);
    CHECK(anti_unify_terms(t, t, tiny)->g == t);
  }
}

TEST_CASE("the lgg is least general among enumerated common generalizations") {
  Rng rng(0x1E657);
  Signature tiny = tiny_signature();
  auto candidates = all_tiny_terms(3);
  for (int trial = 0; trial < 60; ++trial) {
    Term t1 = random_tiny_term(rng, 3);
    Term t2 = random_tiny_term(rng, 3);
    Term lgg = anti_unify_terms(t1, t2, tiny)->g;
    for (const auto& c : candidates) {
      bool common = match_pattern(c, t1).has_value() && match_pattern(c, t2).has_value();
      if (!common) continue;
      // Every common generalization must generalize the lgg itself.
      CHECK(match_pattern(c, lgg).has_value());
    }
  }
}
