#pragma once

#include <string>
#include <vector>

#include "exemplar/scenario.hpp"
#include "exemplar/trace.hpp"

namespace exemplar {

// Independent step-by-step replay of a proof trace: every step's rule is
// re-verified locally (structural rules structurally, natives by
// re-evaluation with its own matching and summation code). `axioms` are the
// printed formulas of the knowledge base the proof ran against.
bool replay_trace(const std::vector<ProofStep>& steps, const std::vector<std::string>& axioms,
                  const Scenario* scn, const Signature& sig, std::string* error = nullptr,
                  long long horizon = -1);

}  // namespace exemplar
