#pragma once

#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "exemplar/diagnostics.hpp"
#include "exemplar/formula.hpp"
#include "exemplar/signature.hpp"
#include "exemplar/subst.hpp"

namespace exemplar {

struct TermGeneralization {
  Term g;
  std::vector<Substitution> witnesses;  // apply(g, witnesses[i]) == input i
};

struct AtomGeneralization {
  Formula g;
  std::vector<Substitution> witnesses;
};

struct SetGeneralization {
  std::vector<Formula> phi;       // universally closed
  std::vector<Formula> phi_open;  // before closure; witnesses apply to these
  std::vector<Substitution> witnesses;
};

// K-ary least general generalization with a shared fresh-variable store, so
// the same mismatch tuple maps to the same variable across several terms and
// formulas. Fresh variables are X1, X2, ... in first-occurrence order;
// predicate variables are P1, P2, ...
class AntiUnifier {
 public:
  AntiUnifier(const Signature& sig, size_t arity);

  // Pre-register a tuple -> variable mapping (the trait learner forces the
  // observation times onto a shared T even when they coincide).
  void seed(const std::vector<Term>& tuple, const std::string& var_name);

  // Least general generalization of a tuple of terms (size == arity).
  // Returns nullopt when some mismatch tuple has no common supersort.
  std::optional<Term> terms(const std::vector<Term>& tuple);

  // Structure-parallel generalization; atoms fall back to a predicate
  // variable at equal arity. nullopt when the tuple is not alignable.
  std::optional<Formula> formulas(const std::vector<Formula>& tuple);

  std::vector<Substitution> witnesses() const;
  std::vector<Term> introduced_variables() const { return intro_order_; }
  const std::optional<Diagnostic>& sort_error() const { return sort_error_; }
  const Signature& signature() const { return sig_; }

 private:
  const Signature& sig_;
  size_t arity_;
  std::map<std::vector<std::string>, Term> var_for_tuple_;
  std::map<std::vector<std::string>, std::string> pred_for_tuple_;
  std::map<std::string, std::vector<Term>> tuple_for_var_;
  std::map<std::string, std::vector<std::string>> preds_for_var_;
  std::vector<Term> intro_order_;
  int next_var_ = 1;
  int next_pred_ = 1;
  std::optional<Diagnostic> sort_error_;
};

// First-order anti-unification of two terms (Plotkin lgg).
Result<TermGeneralization> anti_unify_terms(const Term& t1, const Term& t2,
                                            const Signature& sig);

// Higher-order variant over atoms: differing predicate symbols of equal arity
// are abstracted into a predicate variable.
Result<AtomGeneralization> anti_unify_ho(const Formula& a1, const Formula& a2,
                                         const Signature& sig);

// Align the k sets' formulas by shape (exact-name shapes preferred,
// minimal-variable tie-break) and generalize every aligned tuple through the
// shared store. Returns the open generalizations in sets[0] order, or nullopt
// with a message.
std::optional<std::vector<Formula>> align_generalize(
    const std::vector<std::vector<Formula>>& sets, AntiUnifier& au, std::string* error);

using EntailmentCheck =
    std::function<bool(const std::vector<Formula>& phi, const Formula& psi)>;

// Generalization of k formula sets: align formulas across the sets by shape,
// anti-unify each aligned tuple with a shared store, universally close the
// introduced variables, then verify the defining condition (phi proves every
// input formula) through the supplied prover hook.
Result<SetGeneralization> generalize_formula_set(
    const std::vector<std::vector<Formula>>& sets, const Signature& sig,
    const EntailmentCheck& entails);

}  // namespace exemplar
