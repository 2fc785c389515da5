#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "testutil.hpp"

using namespace exemplar;
using testutil::FormulaGen;
using testutil::Rng;
using testutil::must_parse;
using testutil::test_signature;

namespace {

Signature marketish_signature() {
  Signature sig;
  sig.declare_constant("x", sorts::Object);
  sig.declare_constant("a", sorts::Agent);
  sig.declare_functor("new", {sorts::Object}, sorts::Fluent);
  sig.declare_functor("utter", {sorts::Object}, sorts::ActionType);
  return sig;
}

}  // namespace

TEST_CASE("check_sorts accepts a holds atom over a declared fluent functor") {
  Signature sig = marketish_signature();
  Formula f = Formula::atom(
      "holds", {Term::app("new", "", {Term::constant("x", "")}), Term::moment(1)});
  auto checked = check_sorts(f, sig);
  REQUIRE(checked.ok());
  CHECK(checked->args[0].sort == sorts::Fluent);
}

TEST_CASE("check_sorts rejects a fluent where an event is required") {
  Signature sig = marketish_signature();
  Formula f = Formula::atom(
      "happens", {Term::app("new", "", {Term::constant("x", "")}), Term::moment(1)});
  auto checked = check_sorts(f, sig);
  REQUIRE(!checked.ok());
  CHECK(checked.diagnostics[0].kind == ErrorKind::SortMismatch);
  CHECK(checked.diagnostics[0].subject.find("new") != std::string::npos);
}

TEST_CASE("action(a, utter(x)) is an Action term") {
  Signature sig = marketish_signature();
  Term t = Term::app("action", "",
                     {Term::constant("a", ""),
                      Term::app("utter", "", {Term::constant("x", "")})});
  auto checked = check_term_sorts(t, sig);
  REQUIRE(checked.ok());
  CHECK(checked->sort == sorts::Action);
  CHECK(sig.subsort(checked->sort, sorts::Event));
}

TEST_CASE("check_sorts reports unknown symbols and arity mismatches") {
  Signature sig = marketish_signature();
  auto unknown = check_sorts(Formula::atom("holds", {Term::constant("ghost", ""),
                                                     Term::moment(0)}),
                             sig);
  REQUIRE(!unknown.ok());
  CHECK(unknown.diagnostics[0].kind == ErrorKind::UnknownSymbol);

  auto arity = check_sorts(Formula::atom("holds", {Term::moment(0)}), sig);
  REQUIRE(!arity.ok());
  CHECK(arity.diagnostics[0].kind == ErrorKind::ArityMismatch);
}

TEST_CASE("check_sorts accepts the calculus fragment transcribed") {
  Signature sig = test_signature();
  sig.declare_constant("running", sorts::ActionType);
  const char* fragment[] = {
      "(holds fl1 1)",
      "(happens (action jack running) 0)",
      "(prior 1 2)",
      "p",
      "(not p)",
      "(and p q)",
      "(or p q)",
      "(forall ?x:Agent (hungry ?x:Agent))",
      "(perceives jack 1 p)",
      "(knows jack 1 p)",
      "(common 1 p)",
      "(says jack jill 1 p)",
      "(says jack 1 p)",
      "(believes jack 1 p)",
      "(desires jack 1 p)",
      "(intends jack 1 p)",
      "(ought jack 1 p (happens (action jack running) 2))",
      "(ought jack 1 p (not (happens (action jack running) 2)))",
      "(believes jack 2 (> (nu (action jack running) 2) 0))",
      "(exists-atleast 2 ?t:Moment (holds fl1 ?t:Moment))",
      "(exists-exactly 1 ?t:Moment (holds fl1 ?t:Moment))",
      "(trait (and p q) jack)",
  };
  for (const char* text : fragment) {
    CAPTURE(text);
    auto r = parse_formula(text, sig);
    CHECK(r.ok());
  }
}

TEST_CASE("substitution examples") {
  Signature sig = test_signature();
  Formula hungry_x = Formula::atom("hungry", {Term::var("X", sorts::Agent)});
  Substitution s;
  s.bind("X", Term::constant("jack", sorts::Agent));
  CHECK(apply_substitution(hungry_x, s) ==
        Formula::atom("hungry", {Term::constant("jack", sorts::Agent)}));

  SUBCASE("empty substitution is the identity") {
    CHECK(apply_substitution(hungry_x, Substitution{}) == hungry_x);
  }

  SUBCASE("predicate variables instantiate to predicate symbols") {
    Formula pv = Formula::pred_var_atom(
        "P", {Term::constant("jill", sorts::Agent), Term::var("X", sorts::Agent)});
    Substitution hs;
    hs.bind_pred("P", "likes");
    hs.bind("X", Term::constant("jack", sorts::Agent));
    Formula expect = Formula::atom("likes", {Term::constant("jill", sorts::Agent),
                                             Term::constant("jack", sorts::Agent)});
    CHECK(apply_substitution(pv, hs) == expect);
  }
}

TEST_CASE("substitution is capture-avoiding") {
  // (forall ?y (likes ?x ?y)) with x -> y must rename the binder.
  Formula f = Formula::forall(
      Term::var("y", sorts::Agent),
      Formula::atom("likes", {Term::var("x", sorts::Agent), Term::var("y", sorts::Agent)}));
  Substitution s;
  s.bind("x", Term::var("y", sorts::Agent));
  Formula out = apply_substitution(f, s);
  REQUIRE(out.kind == Conn::Forall);
  CHECK(out.binder->name != "y");
  const Formula& atom = out.kids[0];
  CHECK(atom.args[0] == Term::var("y", sorts::Agent));
  CHECK(atom.args[1] == *out.binder);
}

TEST_CASE("substitution composition agrees with sequential application") {
  Rng rng(0xC0FFEE);
  Signature sig = test_signature();
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    FormulaGen gen(rng, sig);
    Formula f = gen.formula(rng.range(0, 3));
    // Domains drawn from the formula's free variables; ranges are ground, so
    // domain and introduced variables stay disjoint.
    auto vars = free_variables(f);
    if (vars.empty()) continue;
    FormulaGen ground(rng, sig);
    ground.allow_vars = false;
    Substitution s1, s2;
    for (const auto& v : vars) {
      if (rng.flip()) s1.bind(v.name, ground.term(v.sort, 2));
      else s2.bind(v.name, ground.term(v.sort, 2));
    }
    Formula sequential = apply_substitution(apply_substitution(f, s1), s2);
    Formula composed = apply_substitution(f, compose(s1, s2));
    CHECK(sequential == composed);
    ++checked;
  }
  CHECK(checked > 100);
}

TEST_CASE("alpha equivalence examples") {
  Signature sig = test_signature();
  Formula f1 = must_parse("(forall ?x:Agent (implies (talkingWith ?x:Agent) Honesty))", sig);
  Formula f2 = must_parse("(forall ?y:Agent (implies (talkingWith ?y:Agent) Honesty))", sig);
  CHECK(alpha_equivalent(f1, f2));

  CHECK(!alpha_equivalent(must_parse("(hungry ?X:Agent)", sig),
                          must_parse("(hungry jack)", sig)));

  CHECK(!alpha_equivalent(must_parse("(likes jill ?X:Agent)", sig),
                          must_parse("(likes ?X:Agent jill)", sig)));

  SUBCASE("sorts must match for renamed variables") {
    Formula a = Formula::atom("onitem", {Term::var("X", "Item")});
    Formula b = Formula::atom("onitem", {Term::var("Y", sorts::Object)});
    CHECK(!alpha_equivalent(a, b));
  }

  SUBCASE("the variable bijection is consistent across occurrences") {
    CHECK(!alpha_equivalent(must_parse("(likes ?X:Agent ?X:Agent)", sig),
                            must_parse("(likes ?X:Agent ?Y:Agent)", sig)));
    CHECK(alpha_equivalent(must_parse("(likes ?X:Agent ?Y:Agent)", sig),
                           must_parse("(likes ?Y:Agent ?X:Agent)", sig)));
  }
}

TEST_CASE("alpha equivalence is an equivalence relation on a generated corpus") {
  Rng rng(0xA11CE);
  Signature sig = test_signature();
  for (int trial = 0; trial < 200; ++trial) {
    FormulaGen gen(rng, sig);
    Formula f = gen.formula(rng.range(0, 3));
    CHECK(alpha_equivalent(f, f));  // reflexive

    // A renamed variant stays equivalent both ways (symmetric), and two
    // independent renamings are equivalent to each other (transitive).
    auto rename = [&](const Formula& base, const std::string& prefix) {
      Substitution s;
      for (const auto& v : free_variables(base))
        s.bind(v.name, Term::var(prefix + v.name, v.sort));
      return apply_substitution(base, s);
    };
    Formula g = rename(f, "g_");
    Formula h = rename(f, "h_");
    CHECK(alpha_equivalent(f, g));
    CHECK(alpha_equivalent(g, f));
    CHECK(alpha_equivalent(g, h));
  }
}

TEST_CASE("variables carry exactly one sort per formula") {
  Signature sig = test_signature();
  auto r = parse_formula("(and (hungry ?X:Agent) (onitem ?X:Item))", sig);
  REQUIRE(!r.ok());
  CHECK(r.diagnostics[0].kind == ErrorKind::SortMismatch);
}
