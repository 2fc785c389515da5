#pragma once

#include <string>

#include "exemplar/diagnostics.hpp"
#include "exemplar/formula.hpp"
#include "exemplar/sexpr.hpp"
#include "exemplar/signature.hpp"

namespace exemplar {

// Parses the documented prefix grammar against a signature; results are
// sort-checked. Diagnostics carry positions.
Result<Formula> parse_formula(const std::string& text, const Signature& sig);
Result<Formula> parse_formula(const Sexpr& e, const Signature& sig);

Result<Term> parse_term(const std::string& text, const Signature& sig);
Result<Term> parse_term(const Sexpr& e, const Signature& sig);

// Like parse_formula, but auto-declares unknown symbols (constants and
// functor/predicate heads default to Object shapes). Used for ad-hoc CLI
// input without a scenario.
Result<Formula> parse_formula_permissive(const std::string& text, Signature& sig);

}  // namespace exemplar
