#pragma once

#include "exemplar/diagnostics.hpp"
#include "exemplar/formula.hpp"
#include "exemplar/signature.hpp"

namespace exemplar {

// Validates a formula against the signature and returns it with every
// application's result sort and every constant's sort filled in. Diagnostics
// name the offending subterm (UnknownSymbol / ArityMismatch / SortMismatch).
Result<Formula> check_sorts(const Formula& f, const Signature& sig);
Result<Term> check_term_sorts(const Term& t, const Signature& sig);

// Sort of a checked term.
std::string sort_of(const Term& t);

}  // namespace exemplar
