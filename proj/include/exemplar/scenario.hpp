#pragma once

#include <map>
#include <string>
#include <vector>

#include "exemplar/diagnostics.hpp"
#include "exemplar/formula.hpp"
#include "exemplar/rational.hpp"
#include "exemplar/signature.hpp"

namespace exemplar {

struct CausalLaw {
  enum class Kind { Initiates, Terminates } kind = Kind::Initiates;
  Term event_pattern;   // may contain variables
  Term fluent_pattern;  // variables must be a subset of the event pattern's
  std::optional<long long> from_time;  // optional guard: applies for from <= t
  std::optional<long long> to_time;    // ... <= to

  bool applies_at(long long t) const {
    return (!from_time || t >= *from_time) && (!to_time || t <= *to_time);
  }
};

struct HappensFact {
  Term event;  // ground
  long long time = 0;
};

struct PleasedFact {
  std::string agent;
  long long time = 0;
};

struct ScenarioConfig {
  long long horizon = 10;
  long long trait_threshold_m = 2;     // min observations for a trait
  long long exemplar_threshold_n = 2;  // min admirations for exemplar status
  long long virtuous_threshold = 1;    // V_n default
  long long virtue_threshold = 1;      // G_n default
  int max_rounds = 12;
  int max_modal_depth = 8;
  int max_term_depth = 4;
  int budget_ms = 8000;
};

struct ScenarioQuery {
  enum class Kind { Virtuous, Virtue, Prove } kind = Kind::Prove;
  std::string agent;   // Virtuous
  Formula formula;     // Virtue (trait formula) / Prove (goal)
  long long n = 1;     // thresholds
};

// μ keyed by (printed ground fluent, moment); unlisted pairs default to 0.
using UtilityTable = std::map<std::pair<std::string, long long>, Rational>;

struct Scenario {
  Signature signature;
  ScenarioConfig config;
  std::vector<CausalLaw> laws;
  UtilityTable mu;
  std::map<std::string, UtilityTable> private_mu;  // per-agent believed utilities
  std::vector<HappensFact> happens;
  std::vector<Term> initial_holds;  // ground fluents holding at moment 0
  std::vector<PleasedFact> pleased;
  std::vector<Formula> assertions;  // belief/knowledge/general facts
  std::vector<ScenarioQuery> queries;
  std::string source_path;
};

Result<Scenario> load_scenario(const std::string& path);
Result<Scenario> parse_scenario(const std::string& text, std::string source_name = "<string>");

// Canonical textual form of all declarations and facts (the `parse` command).
std::string print_scenario(const Scenario& scn);

}  // namespace exemplar
