#pragma once

#include <string>
#include <vector>

namespace exemplar {

// One replayable inference step. Formulas travel as canonical printed strings
// so a checker can re-parse and re-verify them independently. `sub` holds
// scoped subproofs (belief contexts, conditional proofs).
struct ProofStep {
  std::string rule;
  std::string conclusion;
  std::vector<std::string> premises;
  std::vector<ProofStep> sub;
  std::string note;
};

std::string print_trace(const std::vector<ProofStep>& steps, int indent = 0);

}  // namespace exemplar
