#include "exemplar/antiunify.hpp"

#include <algorithm>

#include "exemplar/printer.hpp"

namespace exemplar {

namespace {

std::vector<std::string> tuple_key(const std::vector<Term>& tuple) {
  std::vector<std::string> key;
  key.reserve(tuple.size());
  for (const auto& t : tuple) key.push_back(print_term(t));
  return key;
}

bool all_equal(const std::vector<Term>& tuple) {
  return std::all_of(tuple.begin(), tuple.end(), [&](const Term& t) { return t == tuple[0]; });
}

}  // namespace

AntiUnifier::AntiUnifier(const Signature& sig, size_t arity) : sig_(sig), arity_(arity) {}

void AntiUnifier::seed(const std::vector<Term>& tuple, const std::string& var_name) {
  std::string sort = tuple[0].sort;
  for (const auto& t : tuple) {
    auto l = sig_.lub(sort, t.sort);
    if (l) sort = *l;
  }
  Term v = Term::var(var_name, sort);
  var_for_tuple_[tuple_key(tuple)] = v;
  tuple_for_var_[var_name] = tuple;
  intro_order_.push_back(v);
}

std::optional<Term> AntiUnifier::terms(const std::vector<Term>& tuple) {
  auto key = tuple_key(tuple);
  if (auto it = var_for_tuple_.find(key); it != var_for_tuple_.end()) return it->second;
  if (all_equal(tuple)) return tuple[0];

  bool same_shape =
      std::all_of(tuple.begin(), tuple.end(), [&](const Term& t) {
        return t.is_app() && t.name == tuple[0].name && t.args.size() == tuple[0].args.size();
      });
  if (same_shape) {
    std::vector<Term> args;
    for (size_t i = 0; i < tuple[0].args.size(); ++i) {
      std::vector<Term> sub;
      sub.reserve(arity_);
      for (const auto& t : tuple) sub.push_back(t.args[i]);
      auto g = terms(sub);
      if (!g) return std::nullopt;
      args.push_back(std::move(*g));
    }
    return Term::app(tuple[0].name, tuple[0].sort, std::move(args));
  }

  // Mismatch: one shared fresh variable per distinct subterm tuple.
  std::optional<std::string> sort = tuple[0].sort;
  for (const auto& t : tuple) {
    if (!sort) break;
    sort = sig_.lub(*sort, t.sort);
  }
  if (!sort) {
    sort_error_ = make_diag(ErrorKind::SortMismatch,
                            "no common supersort for mismatched subterms", {},
                            print_term(tuple[0]));
    return std::nullopt;
  }
  Term v = Term::var("X" + std::to_string(next_var_++), *sort);
  var_for_tuple_[key] = v;
  tuple_for_var_[v.name] = tuple;
  intro_order_.push_back(v);
  return v;
}

std::optional<Formula> AntiUnifier::formulas(const std::vector<Formula>& tuple) {
  const Formula& f0 = tuple[0];
  for (const auto& f : tuple)
    if (f.kind != f0.kind) return std::nullopt;

  auto term_slot = [&](auto proj) -> std::optional<Term> {
    std::vector<Term> sub;
    sub.reserve(arity_);
    for (const auto& f : tuple) sub.push_back(proj(f));
    return terms(sub);
  };

  switch (f0.kind) {
    case Conn::Atom: {
      for (const auto& f : tuple)
        if (f.args.size() != f0.args.size()) return std::nullopt;
      bool same_pred = std::all_of(tuple.begin(), tuple.end(), [&](const Formula& f) {
        return !f.pred_var && f.pred == f0.pred;
      });
      std::vector<Term> args;
      for (size_t i = 0; i < f0.args.size(); ++i) {
        auto g = term_slot([&](const Formula& f) { return f.args[i]; });
        if (!g) return std::nullopt;
        args.push_back(std::move(*g));
      }
      if (same_pred) return Formula::atom(f0.pred, std::move(args));
      std::vector<std::string> pkey;
      for (const auto& f : tuple) pkey.push_back((f.pred_var ? "?" : "") + f.pred);
      auto it = pred_for_tuple_.find(pkey);
      std::string pv;
      if (it != pred_for_tuple_.end()) {
        pv = it->second;
      } else {
        pv = "P" + std::to_string(next_pred_++);
        pred_for_tuple_[pkey] = pv;
        std::vector<std::string> plain;
        for (const auto& f : tuple) plain.push_back(f.pred);
        preds_for_var_[pv] = plain;
      }
      return Formula::pred_var_atom(pv, std::move(args));
    }
    case Conn::Utility: {
      for (const auto& f : tuple)
        if (f.cmp != f0.cmp || f.bound != f0.bound) return std::nullopt;
      auto ev = term_slot([](const Formula& f) { return f.args[0]; });
      auto tm = term_slot([](const Formula& f) { return f.args[1]; });
      if (!ev || !tm) return std::nullopt;
      return Formula::utility(std::move(*ev), std::move(*tm), f0.cmp, f0.bound);
    }
    case Conn::Forall:
    case Conn::Exists:
    case Conn::CountAtLeast:
    case Conn::CountExact: {
      // Binders must agree exactly; abstracting under differing binders would
      // break exact witness reproduction.
      for (const auto& f : tuple)
        if (f.binder != f0.binder || f.count != f0.count) return std::nullopt;
      std::vector<Formula> bodies;
      for (const auto& f : tuple) bodies.push_back(f.kids[0]);
      auto body = formulas(bodies);
      if (!body) return std::nullopt;
      Formula out = f0;
      out.kids[0] = std::move(*body);
      return out;
    }
    case Conn::Modal: {
      for (const auto& f : tuple) {
        if (f.op != f0.op || f.agents.size() != f0.agents.size() ||
            f.time.has_value() != f0.time.has_value() || f.kids.size() != f0.kids.size())
          return std::nullopt;
      }
      Formula out = f0;
      for (size_t i = 0; i < f0.agents.size(); ++i) {
        auto g = term_slot([&](const Formula& f) { return f.agents[i]; });
        if (!g) return std::nullopt;
        out.agents[i] = std::move(*g);
      }
      if (f0.time) {
        auto g = term_slot([](const Formula& f) { return *f.time; });
        if (!g) return std::nullopt;
        out.time = std::move(*g);
      }
      for (size_t i = 0; i < f0.kids.size(); ++i) {
        std::vector<Formula> sub;
        for (const auto& f : tuple) sub.push_back(f.kids[i]);
        auto g = formulas(sub);
        if (!g) return std::nullopt;
        out.kids[i] = std::move(*g);
      }
      return out;
    }
    default: {
      for (const auto& f : tuple)
        if (f.kids.size() != f0.kids.size()) return std::nullopt;
      Formula out = f0;
      for (size_t i = 0; i < f0.kids.size(); ++i) {
        std::vector<Formula> sub;
        for (const auto& f : tuple) sub.push_back(f.kids[i]);
        auto g = formulas(sub);
        if (!g) return std::nullopt;
        out.kids[i] = std::move(*g);
      }
      return out;
    }
  }
}

std::vector<Substitution> AntiUnifier::witnesses() const {
  std::vector<Substitution> out(arity_);
  for (const auto& [var, tuple] : tuple_for_var_) {
    for (size_t i = 0; i < arity_; ++i) out[i].bind(var, tuple[i]);
  }
  for (const auto& [pv, preds] : preds_for_var_) {
    for (size_t i = 0; i < arity_; ++i) out[i].bind_pred(pv, preds[i]);
  }
  return out;
}

Result<TermGeneralization> anti_unify_terms(const Term& t1, const Term& t2,
                                            const Signature& sig) {
  AntiUnifier au(sig, 2);
  auto g = au.terms({t1, t2});
  if (!g) {
    if (au.sort_error()) return Result<TermGeneralization>::failure(*au.sort_error());
    return Result<TermGeneralization>::failure(
        make_diag(ErrorKind::SortMismatch, "terms cannot be generalized", {},
                  print_term(t1) + " vs " + print_term(t2)));
  }
  return Result<TermGeneralization>::success({std::move(*g), au.witnesses()});
}

Result<AtomGeneralization> anti_unify_ho(const Formula& a1, const Formula& a2,
                                         const Signature& sig) {
  if (a1.kind != Conn::Atom || a2.kind != Conn::Atom)
    return Result<AtomGeneralization>::failure(
        make_diag(ErrorKind::Validation, "anti_unify_ho expects atoms"));
  if (a1.args.size() != a2.args.size())
    return Result<AtomGeneralization>::failure(make_diag(
        ErrorKind::ArityMismatch,
        "atoms have different arities: " + print_formula(a1) + " vs " + print_formula(a2)));
  AntiUnifier au(sig, 2);
  auto g = au.formulas({a1, a2});
  if (!g) {
    if (au.sort_error()) return Result<AtomGeneralization>::failure(*au.sort_error());
    return Result<AtomGeneralization>::failure(
        make_diag(ErrorKind::SortMismatch, "atoms cannot be generalized", {},
                  print_formula(a1) + " vs " + print_formula(a2)));
  }
  return Result<AtomGeneralization>::success({std::move(*g), au.witnesses()});
}

namespace {

// Connective/arity skeleton, predicate names erased (so a predicate-variable
// abstraction stays alignable).
std::string coarse_key(const Formula& f) {
  switch (f.kind) {
    case Conn::Atom:
      return "atom/" + std::to_string(f.args.size());
    case Conn::Utility:
      return std::string("nu") + to_string(f.cmp) + to_string(f.bound);
    case Conn::Forall:
    case Conn::Exists:
    case Conn::CountAtLeast:
    case Conn::CountExact: {
      std::string out = "q" + std::to_string(static_cast<int>(f.kind)) + ":" + f.binder->sort +
                        ":" + std::to_string(f.count) + "(";
      return out + coarse_key(f.kids[0]) + ")";
    }
    case Conn::Modal: {
      std::string out = std::string("modal:") + to_string(f.op) + "/" +
                        std::to_string(f.agents.size()) + "(";
      for (const auto& k : f.kids) out += coarse_key(k) + ",";
      return out + ")";
    }
    default: {
      std::string out = "c" + std::to_string(static_cast<int>(f.kind)) + "(";
      for (const auto& k : f.kids) out += coarse_key(k) + ",";
      return out + ")";
    }
  }
}

// Skeleton including predicate names: exact-shape matches are preferred.
std::string fine_key(const Formula& f) {
  std::string out = coarse_key(f) + "|";
  if (f.kind == Conn::Atom) out += f.pred;
  for (const auto& k : f.kids) out += fine_key(k);
  return out;
}

size_t trial_cost(const std::vector<Formula>& tuple, const Signature& sig) {
  AntiUnifier au(sig, tuple.size());
  auto g = au.formulas(tuple);
  if (!g) return static_cast<size_t>(-1);
  return au.introduced_variables().size() * 4 + au.witnesses()[0].preds.size() * 16;
}

}  // namespace

std::optional<std::vector<Formula>> align_generalize(
    const std::vector<std::vector<Formula>>& sets, AntiUnifier& au, std::string* error) {
  const Signature& sig = au.signature();
  const size_t k = sets.size();
  const size_t s = sets.empty() ? 0 : sets[0].size();
  for (const auto& set : sets) {
    if (set.size() != s) {
      if (error) *error = "no alignment: formula sets have different sizes";
      return std::nullopt;
    }
  }
  if (s == 0) {
    if (error) *error = "no alignment: empty formula sets";
    return std::nullopt;
  }

  std::vector<std::vector<bool>> used(k, std::vector<bool>(s, false));
  std::vector<std::vector<Formula>> aligned;  // tuples in sets[0] order
  for (size_t i = 0; i < s; ++i) {
    std::vector<Formula> tuple = {sets[0][i]};
    for (size_t j = 1; j < k; ++j) {
      // Candidates: unused entries with the same coarse shape; exact-name
      // shapes first, then the tuple cost tie-break.
      long best = -1;
      size_t best_cost = static_cast<size_t>(-1);
      bool best_fine = false;
      for (size_t c = 0; c < s; ++c) {
        if (used[j][c]) continue;
        if (coarse_key(sets[j][c]) != coarse_key(sets[0][i])) continue;
        bool fine = fine_key(sets[j][c]) == fine_key(sets[0][i]);
        auto trial = tuple;
        trial.push_back(sets[j][c]);
        size_t cost = trial_cost(trial, sig);
        if (cost == static_cast<size_t>(-1)) continue;
        if (best == -1 || (fine && !best_fine) || (fine == best_fine && cost < best_cost)) {
          best = static_cast<long>(c);
          best_cost = cost;
          best_fine = fine;
        }
      }
      if (best == -1) {
        if (error) *error = "no alignment for formula: " + print_formula(sets[0][i]);
        return std::nullopt;
      }
      used[j][static_cast<size_t>(best)] = true;
      tuple.push_back(sets[j][static_cast<size_t>(best)]);
    }
    aligned.push_back(std::move(tuple));
  }

  std::vector<Formula> out;
  for (const auto& tuple : aligned) {
    auto g = au.formulas(tuple);
    if (!g) {
      if (error) *error = "no alignment: tuple cannot be generalized: " + print_formula(tuple[0]);
      return std::nullopt;
    }
    out.push_back(std::move(*g));
  }
  return out;
}

Result<SetGeneralization> generalize_formula_set(
    const std::vector<std::vector<Formula>>& sets, const Signature& sig,
    const EntailmentCheck& entails) {
  using R = Result<SetGeneralization>;
  if (sets.size() < 2)
    return R::failure(make_diag(ErrorKind::Validation, "need at least two formula sets"));

  AntiUnifier au(sig, sets.size());
  std::string err;
  auto open = align_generalize(sets, au, &err);
  if (!open) return R::failure(make_diag(ErrorKind::Validation, err));

  SetGeneralization out;
  for (const auto& g : *open) {
    out.phi_open.push_back(g);
    Formula closed = g;
    auto vars = free_variables(g);
    for (auto it = vars.rbegin(); it != vars.rend(); ++it)
      closed = Formula::forall(*it, std::move(closed));
    out.phi.push_back(std::move(closed));
  }
  out.witnesses = au.witnesses();

  if (entails) {
    for (const auto& set : sets) {
      for (const auto& psi : set) {
        if (!entails(out.phi, psi))
          return R::failure(make_diag(
              ErrorKind::Validation,
              "contract failed: generalization does not prove " + print_formula(psi)));
      }
    }
  }
  return R::success(std::move(out));
}

}  // namespace exemplar
