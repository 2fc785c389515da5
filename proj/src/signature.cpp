#include "exemplar/signature.hpp"

#include <algorithm>

#include "exemplar/printer.hpp"

namespace exemplar {

Signature::Signature() {
  for (const auto& s : {sorts::Agent, sorts::ActionType, sorts::Action, sorts::Event,
                        sorts::Moment, sorts::Fluent, sorts::Boolean, sorts::Object})
    sorts_[s] = std::nullopt;
  sorts_[sorts::Action] = sorts::Event;

  functors_["action"] = {{sorts::Agent, sorts::ActionType}, sorts::Action};
  functors_["admires"] = {{sorts::Agent, sorts::Agent, sorts::ActionType}, sorts::Fluent};

  predicates_["holds"] = {{sorts::Fluent, sorts::Moment}};
  predicates_["happens"] = {{sorts::Event, sorts::Moment}};
  predicates_["prior"] = {{sorts::Moment, sorts::Moment}};
  predicates_["initiates"] = {{sorts::Event, sorts::Fluent, sorts::Moment}};
  predicates_["terminates"] = {{sorts::Event, sorts::Fluent, sorts::Moment}};
  predicates_["pleased"] = {{sorts::Agent, sorts::Moment}};
  predicates_["exemplar"] = {{sorts::Agent, sorts::Agent}};
}

std::optional<Diagnostic> Signature::declare_sort(const std::string& name,
                                                  const std::string& parent) {
  if (sorts_.count(name))
    return make_diag(ErrorKind::Validation, "sort already declared: " + name);
  if (!sorts_.count(parent))
    return make_diag(ErrorKind::UnknownSymbol, "unknown parent sort: " + parent);
  sorts_[name] = parent;
  return std::nullopt;
}

std::optional<Diagnostic> Signature::declare_constant(const std::string& name,
                                                      const std::string& sort) {
  if (constants_.count(name))
    return make_diag(ErrorKind::Validation, "constant already declared: " + name);
  if (!sorts_.count(sort))
    return make_diag(ErrorKind::UnknownSymbol, "unknown sort: " + sort);
  constants_[name] = sort;
  return std::nullopt;
}

std::optional<Diagnostic> Signature::declare_functor(const std::string& name,
                                                     std::vector<std::string> param_sorts,
                                                     const std::string& result_sort) {
  if (functors_.count(name))
    return make_diag(ErrorKind::Validation, "functor already declared: " + name);
  for (const auto& p : param_sorts)
    if (!sorts_.count(p)) return make_diag(ErrorKind::UnknownSymbol, "unknown sort: " + p);
  if (!sorts_.count(result_sort))
    return make_diag(ErrorKind::UnknownSymbol, "unknown sort: " + result_sort);
  functors_[name] = {std::move(param_sorts), result_sort};
  return std::nullopt;
}

std::optional<Diagnostic> Signature::declare_predicate(const std::string& name,
                                                       std::vector<std::string> param_sorts) {
  if (predicates_.count(name))
    return make_diag(ErrorKind::Validation, "predicate already declared: " + name);
  for (const auto& p : param_sorts)
    if (!sorts_.count(p)) return make_diag(ErrorKind::UnknownSymbol, "unknown sort: " + p);
  predicates_[name] = {std::move(param_sorts)};
  return std::nullopt;
}

bool Signature::has_sort(const std::string& name) const { return sorts_.count(name) > 0; }
bool Signature::has_constant(const std::string& name) const { return constants_.count(name) > 0; }
bool Signature::has_functor(const std::string& name) const { return functors_.count(name) > 0; }
bool Signature::has_predicate(const std::string& name) const {
  return predicates_.count(name) > 0;
}

std::optional<std::string> Signature::constant_sort(const std::string& name) const {
  auto it = constants_.find(name);
  if (it == constants_.end()) return std::nullopt;
  return it->second;
}

const FunctorDecl* Signature::functor(const std::string& name) const {
  auto it = functors_.find(name);
  return it == functors_.end() ? nullptr : &it->second;
}

const PredicateDecl* Signature::predicate(const std::string& name) const {
  auto it = predicates_.find(name);
  return it == predicates_.end() ? nullptr : &it->second;
}

bool Signature::subsort(const std::string& sub, const std::string& super) const {
  std::string cur = sub;
  while (true) {
    if (cur == super) return true;
    auto it = sorts_.find(cur);
    if (it == sorts_.end() || !it->second) return false;
    cur = *it->second;
  }
}

std::optional<std::string> Signature::lub(const std::string& a, const std::string& b) const {
  std::string cur = a;
  while (true) {
    if (subsort(b, cur)) return cur;
    auto it = sorts_.find(cur);
    if (it == sorts_.end() || !it->second) break;
    cur = *it->second;
  }
  // b's chain may still dominate a.
  cur = b;
  while (true) {
    if (subsort(a, cur)) return cur;
    auto it = sorts_.find(cur);
    if (it == sorts_.end() || !it->second) break;
    cur = *it->second;
  }
  return std::nullopt;
}

std::vector<Term> Signature::universe(const std::string& sort, size_t max_depth,
                                      long long horizon) const {
  std::vector<Term> pool;
  if (subsort(sorts::Moment, sort) || sort == sorts::Moment) {
    for (long long t = 0; t <= horizon; ++t) pool.push_back(Term::moment(t));
  }
  for (const auto& [name, csort] : constants_) {
    if (subsort(csort, sort)) pool.push_back(Term::constant(name, csort));
  }
  if (max_depth <= 1) return pool;

  // Layered construction: terms of depth d from args of depth < d.
  std::map<std::string, std::vector<Term>> by_depth_sort;  // all ground terms so far
  std::vector<Term> all;
  for (const auto& [name, csort] : constants_) all.push_back(Term::constant(name, csort));
  for (long long t = 0; t <= horizon; ++t) all.push_back(Term::moment(t));

  for (size_t d = 2; d <= max_depth; ++d) {
    std::vector<Term> added;
    for (const auto& [fname, decl] : functors_) {
      // Enumerate argument tuples from `all` matching the parameter sorts.
      std::vector<std::vector<const Term*>> choices(decl.param_sorts.size());
      bool feasible = true;
      for (size_t i = 0; i < decl.param_sorts.size(); ++i) {
        for (const auto& t : all)
          if (subsort(t.sort, decl.param_sorts[i])) choices[i].push_back(&t);
        if (choices[i].empty()) feasible = false;
      }
      if (!feasible || decl.param_sorts.empty()) continue;
      std::vector<size_t> idx(choices.size(), 0);
      while (true) {
        std::vector<Term> args;
        size_t arg_depth = 0;
        for (size_t i = 0; i < idx.size(); ++i) {
          args.push_back(*choices[i][idx[i]]);
          arg_depth = std::max(arg_depth, args.back().depth());
        }
        if (arg_depth + 1 == d) {  // exactly depth d; shallower ones already built
          added.push_back(Term::app(fname, decl.result_sort, std::move(args)));
        }
        size_t k = 0;
        for (; k < idx.size(); ++k) {
          if (++idx[k] < choices[k].size()) break;
          idx[k] = 0;
        }
        if (k == idx.size()) break;
      }
    }
    for (auto& t : added) all.push_back(std::move(t));
    if (added.empty()) break;
  }
  for (const auto& t : all) {
    if (t.is_app() && subsort(t.sort, sort)) pool.push_back(t);
  }
  std::sort(pool.begin(), pool.end(),
            [](const Term& a, const Term& b) { return print_term(a) < print_term(b); });
  pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
  return pool;
}

std::vector<std::string> Signature::constants_of_sort(const std::string& sort) const {
  std::vector<std::string> out;
  for (const auto& [name, csort] : constants_)
    if (subsort(csort, sort)) out.push_back(name);
  return out;
}

}  // namespace exemplar
