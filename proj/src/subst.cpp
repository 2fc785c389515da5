#include "exemplar/subst.hpp"

#include <algorithm>

#include "exemplar/printer.hpp"

namespace exemplar {

Term apply_substitution(const Term& t, const Substitution& s) {
  switch (t.kind) {
    case TermKind::Variable: {
      auto it = s.terms.find(t.name);
      return it == s.terms.end() ? t : it->second;
    }
    case TermKind::Constant:
      return t;
    case TermKind::Application: {
      std::vector<Term> args;
      args.reserve(t.args.size());
      for (const auto& a : t.args) args.push_back(apply_substitution(a, s));
      return Term::app(t.name, t.sort, std::move(args));
    }
  }
  return t;
}

namespace {

bool range_mentions(const Substitution& s, const std::string& var) {
  for (const auto& [dom, t] : s.terms)
    if (contains_variable(t, var)) return true;
  return false;
}

std::string fresh_name(const std::string& base, const Substitution& s, const Formula& body) {
  int i = 0;
  while (true) {
    std::string cand = base + "_" + std::to_string(++i);
    if (s.terms.count(cand) || range_mentions(s, cand)) continue;
    bool used = false;
    for (const auto& v : free_variables(body))
      if (v.name == cand) used = true;
    if (!used) return cand;
  }
}

}  // namespace

Formula apply_substitution(const Formula& f, const Substitution& s) {
  Formula out = f;
  if (f.kind == Conn::Atom && f.pred_var) {
    auto it = s.preds.find(f.pred);
    if (it != s.preds.end()) {
      out.pred = it->second;
      out.pred_var = false;
    }
  }
  if (f.binder) {
    Substitution inner = s;
    inner.terms.erase(f.binder->name);  // shadowed
    Term binder = *f.binder;
    if (range_mentions(inner, binder.name)) {
      // Bound name collides with a variable introduced by the substitution:
      // rename the binder before descending.
      std::string fresh = fresh_name(binder.name, inner, f.kids[0]);
      Substitution rename;
      rename.bind(binder.name, Term::var(fresh, binder.sort));
      Formula renamed_body = apply_substitution(f.kids[0], rename);
      binder = Term::var(fresh, binder.sort);
      out.binder = binder;
      out.kids[0] = apply_substitution(renamed_body, inner);
    } else {
      out.kids[0] = apply_substitution(f.kids[0], inner);
    }
    return out;
  }
  for (auto& t : out.args) t = apply_substitution(t, s);
  for (auto& a : out.agents) a = apply_substitution(a, s);
  if (out.time) out.time = apply_substitution(*out.time, s);
  for (auto& k : out.kids) k = apply_substitution(k, s);
  return out;
}

Substitution compose(const Substitution& s1, const Substitution& s2) {
  Substitution out;
  for (const auto& [v, t] : s1.terms) out.terms[v] = apply_substitution(t, s2);
  for (const auto& [v, t] : s2.terms)
    if (!out.terms.count(v)) out.terms[v] = t;
  for (const auto& [p, q] : s1.preds) out.preds[p] = q;
  for (const auto& [p, q] : s2.preds)
    if (!out.preds.count(p)) out.preds[p] = q;
  return out;
}

std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [v, t] : s.terms) {
    if (!first) out += ", ";
    out += "?" + v + " -> " + print_term(t);
    first = false;
  }
  for (const auto& [p, q] : s.preds) {
    if (!first) out += ", ";
    out += "?" + p + " -> " + q;
    first = false;
  }
  return out + "}";
}

}  // namespace exemplar
