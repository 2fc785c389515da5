#include "exemplar/unify.hpp"

namespace exemplar {

namespace {

bool unify_rec(Term a, Term b, const Signature& sig, Substitution& s) {
  a = apply_substitution(a, s);
  b = apply_substitution(b, s);
  if (a == b) return true;
  if (a.is_var()) {
    if (contains_variable(b, a.name)) return false;  // occurs check
    if (!b.sort.empty() && !sig.subsort(b.sort, a.sort)) {
      // Try the symmetric binding for variable-variable pairs.
      if (b.is_var() && sig.subsort(a.sort, b.sort)) {
        s.bind(b.name, a);
        return true;
      }
      return false;
    }
    s.bind(a.name, b);
    return true;
  }
  if (b.is_var()) return unify_rec(b, a, sig, s);
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
  for (size_t i = 0; i < a.args.size(); ++i)
    if (!unify_rec(a.args[i], b.args[i], sig, s)) return false;
  return true;
}

bool match_rec(const Term& pattern, const Term& target, Substitution& s) {
  if (pattern.is_var()) {
    auto it = s.terms.find(pattern.name);
    if (it != s.terms.end()) return it->second == target;
    s.bind(pattern.name, target);
    return true;
  }
  if (pattern.kind != target.kind || pattern.name != target.name ||
      pattern.args.size() != target.args.size())
    return false;
  for (size_t i = 0; i < pattern.args.size(); ++i)
    if (!match_rec(pattern.args[i], target.args[i], s)) return false;
  return true;
}

}  // namespace

std::optional<Substitution> unify(const Term& t1, const Term& t2, const Signature& sig) {
  Substitution s;
  if (!unify_rec(t1, t2, sig, s)) return std::nullopt;
  // Normalize to an idempotent substitution.
  Substitution out;
  for (const auto& [v, t] : s.terms) out.terms[v] = apply_substitution(t, s);
  return out;
}

std::optional<Substitution> match_pattern(const Term& pattern, const Term& target) {
  return match_pattern(pattern, target, Substitution{});
}

std::optional<Substitution> match_pattern(const Term& pattern, const Term& target,
                                          const Substitution& seed) {
  Substitution s = seed;
  if (!match_rec(pattern, target, s)) return std::nullopt;
  return s;
}

}  // namespace exemplar
