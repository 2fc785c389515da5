#pragma once

#include <optional>

#include "exemplar/signature.hpp"
#include "exemplar/subst.hpp"
#include "exemplar/term.hpp"

namespace exemplar {

// Most general unifier with occurs check; failure is a value. Bindings
// respect sorts: ?x:S binds only terms whose sort widens to S.
std::optional<Substitution> unify(const Term& t1, const Term& t2, const Signature& sig);

// One-sided matching: variables may only be bound in `pattern`.
std::optional<Substitution> match_pattern(const Term& pattern, const Term& target);
std::optional<Substitution> match_pattern(const Term& pattern, const Term& target,
                                          const Substitution& seed);

}  // namespace exemplar
