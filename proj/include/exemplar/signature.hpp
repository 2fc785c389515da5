#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "exemplar/diagnostics.hpp"
#include "exemplar/term.hpp"

namespace exemplar {

struct FunctorDecl {
  std::vector<std::string> param_sorts;
  std::string result_sort;
};

struct PredicateDecl {
  std::vector<std::string> param_sorts;
};

// Sort hierarchy plus constant/functor/predicate declarations. Built-ins are
// installed by the constructor: the eight base sorts with Action under Event,
// the action/admires functors and the event-calculus predicates.
class Signature {
 public:
  Signature();

  std::optional<Diagnostic> declare_sort(const std::string& name, const std::string& parent);
  std::optional<Diagnostic> declare_constant(const std::string& name, const std::string& sort);
  std::optional<Diagnostic> declare_functor(const std::string& name,
                                            std::vector<std::string> param_sorts,
                                            const std::string& result_sort);
  std::optional<Diagnostic> declare_predicate(const std::string& name,
                                              std::vector<std::string> param_sorts);

  bool has_sort(const std::string& name) const;
  bool has_constant(const std::string& name) const;
  bool has_functor(const std::string& name) const;
  bool has_predicate(const std::string& name) const;

  std::optional<std::string> constant_sort(const std::string& name) const;
  const FunctorDecl* functor(const std::string& name) const;
  const PredicateDecl* predicate(const std::string& name) const;

  // Reflexive-transitive subsort check.
  bool subsort(const std::string& sub, const std::string& super) const;
  // Least common supersort, if the two sorts share an ancestor chain.
  std::optional<std::string> lub(const std::string& a, const std::string& b) const;

  // All ground terms of sort `sort` (widening allowed) constructible from the
  // declared constants and functors, up to node depth `max_depth`. Moments
  // enumerate 0..horizon.
  std::vector<Term> universe(const std::string& sort, size_t max_depth, long long horizon) const;

  std::vector<std::string> constants_of_sort(const std::string& sort) const;

  const std::map<std::string, std::string>& constants() const { return constants_; }
  const std::map<std::string, FunctorDecl>& functors() const { return functors_; }
  const std::map<std::string, PredicateDecl>& predicates() const { return predicates_; }
  const std::map<std::string, std::optional<std::string>>& sorts() const { return sorts_; }

 private:
  std::map<std::string, std::optional<std::string>> sorts_;  // name -> parent
  std::map<std::string, std::string> constants_;             // name -> sort
  std::map<std::string, FunctorDecl> functors_;
  std::map<std::string, PredicateDecl> predicates_;
};

}  // namespace exemplar
