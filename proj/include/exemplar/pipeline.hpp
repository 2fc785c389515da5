#pragma once

#include <optional>
#include <string>
#include <vector>

#include "exemplar/kb.hpp"
#include "exemplar/prover.hpp"
#include "exemplar/scenario.hpp"
#include "exemplar/virtue.hpp"

namespace exemplar {

struct RunOverrides {
  std::optional<long long> horizon;
  std::optional<long long> m;
  std::optional<long long> n;
  std::optional<int> max_rounds;
  std::optional<int> max_depth;
};

struct QueryOutcome {
  std::string kind;
  std::string description;
  bool verdict = false;
  long long count_total = -1;
  long long count_restricted = -1;
  std::string trace;
};

struct RunResult {
  std::vector<Trait> traits;
  std::vector<AdmirationRecord> admirations;
  struct ExemplarPair {
    std::string exemplar;
    std::string learner;
    long long count = 0;
  };
  std::vector<ExemplarPair> exemplars;
  std::vector<FiredAction> actions;
  std::vector<QueryOutcome> queries;
  SaturationStats saturation;
  double duration_ms = 0;
};

Scenario apply_overrides(Scenario scn, const RunOverrides& overrides);

// Scenario facts as axioms: happens, initial holds, pleased, assertions.
KnowledgeBase initial_kb(const Scenario& scn);

// saturate -> detect admiration -> exemplars -> learn traits -> fire traits
// -> scenario queries.
RunResult run_pipeline(const Scenario& scn);

Result<RunResult> run_scenario_file(const std::string& path, const RunOverrides& overrides);

}  // namespace exemplar
