#pragma once

#include <string>

#include "exemplar/formula.hpp"
#include "exemplar/term.hpp"

namespace exemplar {

// Canonical prefix notation; parse_formula(print_formula(f)) round-trips to a
// structurally identical AST.
std::string print_term(const Term& t);
std::string print_formula(const Formula& f);

}  // namespace exemplar
