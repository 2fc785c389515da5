#pragma once

#include "exemplar/diagnostics.hpp"
#include "exemplar/kb.hpp"
#include "exemplar/scenario.hpp"
#include "exemplar/trace.hpp"
#include "exemplar/trait.hpp"

namespace exemplar {

struct ProverBounds {
  int max_rounds = 12;
  int max_modal_depth = 8;
  int max_term_depth = 4;
  int budget_ms = 8000;
};

ProverBounds bounds_from_config(const ScenarioConfig& cfg);

struct SaturationStats {
  int rounds = 0;
  bool bound_exceeded = false;
};

enum class Verdict { Proved, Unknown };

struct ProofResult {
  Verdict verdict = Verdict::Unknown;
  std::vector<ProofStep> trace;
  bool bound_hit = false;

  bool proved() const { return verdict == Verdict::Proved; }
};

// Bounded forward chaining over a KnowledgeBase plus goal-directed
// decomposition. Saturation applies and-elimination, iff-splitting, modus
// ponens, finite-universe instantiation, the says-to-belief schema, the
// obligation-to-intention schema, and belief-context closure (derived
// context formulas materialize at later moments).
class Reasoner {
 public:
  Reasoner(const Signature& sig, ProverBounds bounds, const Scenario* scn = nullptr);

  SaturationStats saturate(KnowledgeBase& kb) const;

  // Saturates a copy of kb first. Goals with predicate variables yield
  // Unknown. Proved results carry a replayable trace.
  ProofResult prove(const KnowledgeBase& kb, const Formula& goal) const;

  // Proves Believes(agent, t, goal) through the agent's belief context.
  ProofResult prove_in_context(const KnowledgeBase& kb, const std::string& agent, long long t,
                               const Formula& goal) const;

  const ProverBounds& bounds() const { return bounds_; }
  const Signature& signature() const { return sig_; }
  const Scenario* scenario() const { return scn_; }

 private:
  const Signature& sig_;
  ProverBounds bounds_;
  const Scenario* scn_;
};

// I_Trait: generalize >= m observed (situation, action) pairs into a Trait.
// The observation times are forced onto the shared time variable T. Fails
// with InsufficientObservations or NoAlignment diagnostics.
Result<Trait> check_trait_schema(const std::vector<Observation>& observations, long long m,
                                 const Signature& sig);

}  // namespace exemplar
