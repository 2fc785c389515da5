#pragma once

#include "exemplar/formula.hpp"

namespace exemplar {

// Equality up to a consistent bijective renaming of variables (bound and
// free, sorts must agree) and of predicate variables. Constants and
// predicate symbols must match exactly.
bool alpha_equivalent(const Formula& f1, const Formula& f2);
bool alpha_equivalent(const Term& t1, const Term& t2);

}  // namespace exemplar
