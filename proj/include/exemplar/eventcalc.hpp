#pragma once

#include <stdexcept>
#include <vector>

#include "exemplar/rational.hpp"
#include "exemplar/scenario.hpp"
#include "exemplar/term.hpp"

namespace exemplar {

struct EventCalcError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The lens a utility/state computation runs through: the global scenario, or
// an agent's belief context (believed laws / happens / private mu).
struct WorldView {
  const std::vector<CausalLaw>* laws = nullptr;
  const UtilityTable* mu = nullptr;
  const std::vector<HappensFact>* happens = nullptr;
  const std::vector<Term>* initial_holds = nullptr;
  long long horizon = 0;
};

WorldView global_view(const Scenario& scn);

Rational mu_value(const WorldView& view, const Term& fluent, long long t);

// Ground fluent instances some initiates/terminates law yields for (event, t).
std::vector<Term> initiated_fluents(const WorldView& view, const Term& event, long long t);
std::vector<Term> terminated_fluents(const WorldView& view, const Term& event, long long t);
std::vector<Term> initiated_fluents(const Scenario& scn, const Term& event, long long t);
std::vector<Term> terminated_fluents(const Scenario& scn, const Term& event, long long t);

// nu(e, t): horizon-summed value of the fluents the event initiates minus the
// fluents it terminates, over moments t+1..H. Throws HorizonExceeded (as
// EventCalcError) when t >= H and NonGroundEvent for non-ground events.
Rational event_utility(const WorldView& view, const Term& event, long long t);
Rational event_utility(const Scenario& scn, const Term& event, long long t);

// Inertial holds: true iff some initiation point p < t (an initiating event,
// or the initial declaration taken as p = -1) has no terminating event
// strictly between p and t.
bool holds_at(const WorldView& view, const Term& fluent, long long t);
bool holds_at(const Scenario& scn, const Term& fluent, long long t);

}  // namespace exemplar
