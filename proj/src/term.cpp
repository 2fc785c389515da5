#include "exemplar/term.hpp"

#include <algorithm>

namespace exemplar {

Term Term::var(std::string name, std::string sort) {
  Term t;
  t.kind = TermKind::Variable;
  t.name = std::move(name);
  t.sort = std::move(sort);
  return t;
}

Term Term::constant(std::string name, std::string sort) {
  Term t;
  t.kind = TermKind::Constant;
  t.name = std::move(name);
  t.sort = std::move(sort);
  return t;
}

Term Term::app(std::string functor, std::string result_sort, std::vector<Term> args) {
  Term t;
  t.kind = TermKind::Application;
  t.name = std::move(functor);
  t.sort = std::move(result_sort);
  t.args = std::move(args);
  return t;
}

Term Term::moment(long long m) { return constant(std::to_string(m), sorts::Moment); }

bool Term::ground() const {
  if (is_var()) return false;
  return std::all_of(args.begin(), args.end(), [](const Term& a) { return a.ground(); });
}

size_t Term::depth() const {
  size_t d = 0;
  for (const auto& a : args) d = std::max(d, a.depth());
  return d + 1;
}

std::optional<long long> Term::moment_value() const {
  if (!is_const() || sort != sorts::Moment) return std::nullopt;
  if (name.empty()) return std::nullopt;
  size_t i = (name[0] == '-') ? 1 : 0;
  if (i == name.size()) return std::nullopt;
  for (size_t j = i; j < name.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(name[j]))) return std::nullopt;
  return std::stoll(name);
}

bool Term::operator==(const Term& other) const {
  return kind == other.kind && name == other.name && sort == other.sort && args == other.args;
}

void collect_variables(const Term& t, std::vector<Term>& out) {
  if (t.is_var()) {
    for (const auto& v : out)
      if (v.name == t.name) return;
    out.push_back(t);
    return;
  }
  for (const auto& a : t.args) collect_variables(a, out);
}

std::vector<Term> variables_of(const Term& t) {
  std::vector<Term> out;
  collect_variables(t, out);
  return out;
}

void collect_symbols(const Term& t, std::set<std::string>& out) {
  if (!t.is_var()) out.insert(t.name);
  for (const auto& a : t.args) collect_symbols(a, out);
}

bool contains_variable(const Term& t, const std::string& var_name) {
  if (t.is_var()) return t.name == var_name;
  return std::any_of(t.args.begin(), t.args.end(),
                     [&](const Term& a) { return contains_variable(a, var_name); });
}

}  // namespace exemplar
