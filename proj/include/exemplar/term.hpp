#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace exemplar {

// Built-in sort names.
namespace sorts {
inline const std::string Agent = "Agent";
inline const std::string ActionType = "ActionType";
inline const std::string Action = "Action";
inline const std::string Event = "Event";
inline const std::string Moment = "Moment";
inline const std::string Fluent = "Fluent";
inline const std::string Boolean = "Boolean";
inline const std::string Object = "Object";
}  // namespace sorts

enum class TermKind { Variable, Constant, Application };

// Immutable after construction (all mutation goes through the factories).
struct Term {
  TermKind kind = TermKind::Constant;
  std::string name;        // variable / constant / functor name
  std::string sort;        // leaf sort; for applications, the functor's result sort
  std::vector<Term> args;  // applications only

  static Term var(std::string name, std::string sort);
  static Term constant(std::string name, std::string sort);
  static Term app(std::string functor, std::string result_sort, std::vector<Term> args);
  static Term moment(long long t);

  bool is_var() const { return kind == TermKind::Variable; }
  bool is_const() const { return kind == TermKind::Constant; }
  bool is_app() const { return kind == TermKind::Application; }

  bool ground() const;
  size_t depth() const;
  std::optional<long long> moment_value() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
};

// Free variables in first-occurrence order (terms have no binders).
void collect_variables(const Term& t, std::vector<Term>& out);
std::vector<Term> variables_of(const Term& t);

// Constant and functor names.
void collect_symbols(const Term& t, std::set<std::string>& out);

bool contains_variable(const Term& t, const std::string& var_name);

}  // namespace exemplar
