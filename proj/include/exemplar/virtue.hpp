#pragma once

#include <string>
#include <vector>

#include "exemplar/kb.hpp"
#include "exemplar/prover.hpp"
#include "exemplar/scenario.hpp"
#include "exemplar/trait.hpp"

namespace exemplar {

struct AdmirationRecord {
  std::string admirer;
  std::string admired;
  Term action_type;         // ground
  long long action_time = 0;    // t'
  long long judgment_time = 0;  // t (earliest detection)
};

struct FiredAction {
  std::string agent;
  Term action_type;
  Term event;  // action(agent, action_type)
  long long time = 0;
};

// Admiration detection, exemplar identification, trait learning and firing,
// and the virtuous-person / virtue queries, layered over a saturated KB.
class VirtueEngine {
 public:
  VirtueEngine(const Scenario& scn, KnowledgeBase& kb, const Reasoner& reasoner);

  // Records whose full right-hand side is established at judgment time t:
  // pleased fact, believed happens at t' < t of another agent's action, and
  // strictly positive believed utility. Each detected record asserts the
  // admires fluent into the kb.
  std::vector<AdmirationRecord> detect_admiration(const std::string& agent, long long t,
                                                  bool skip_recorded = false);

  // Convenience: detection swept over every agent and judgment moment.
  void detect_all();

  bool is_exemplar(const std::string& exemplar, const std::string& learner, long long n) const;

  std::vector<Trait> learn_traits(const std::string& learner, long long t, long long m,
                                  long long n);

  std::vector<FiredAction> fire_traits(const std::string& learner, long long t);

  bool virtuous(const std::string& agent, long long n) const;

  struct VirtueCounts {
    long long total = 0;
    long long virtuous_restricted = 0;
  };
  // tau is compared in canonical ?self:Agent form against each learned
  // trait. The restricted count only admits owners that are virtuous at the
  // scenario's virtuous threshold.
  VirtueCounts virtue_counts(const Formula& tau) const;
  bool is_virtue(const Formula& tau, long long n) const;

  const std::vector<AdmirationRecord>& records() const { return records_; }
  const std::vector<Trait>& traits() const { return traits_; }
  std::vector<std::string> agents() const;

  // Situation snapshot backing an observation: the learner's believed holds
  // literals at that moment restricted to symbols connected to the event,
  // plus the positive-utility judgment.
  std::vector<Formula> situation_snapshot(const std::string& learner, long long t,
                                          const Term& event, const Term& action_type) const;

 private:
  const Scenario& scn_;
  KnowledgeBase& kb_;
  const Reasoner& reasoner_;
  std::vector<AdmirationRecord> records_;
  std::vector<Trait> traits_;

  bool record_known(const AdmirationRecord& r) const;
};

}  // namespace exemplar
