#include "exemplar/formula.hpp"

#include <algorithm>

namespace exemplar {

const char* to_string(ModalOp op) {
  switch (op) {
    case ModalOp::Perceives: return "perceives";
    case ModalOp::Knows: return "knows";
    case ModalOp::Believes: return "believes";
    case ModalOp::Desires: return "desires";
    case ModalOp::Intends: return "intends";
    case ModalOp::Ought: return "ought";
    case ModalOp::Says: return "says";
    case ModalOp::Common: return "common";
    case ModalOp::Trait: return "trait";
  }
  return "?";
}

const char* to_string(CmpOp op) {
  switch (op) {
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
  }
  return "?";
}

Formula Formula::atom(std::string pred, std::vector<Term> args) {
  Formula f;
  f.kind = Conn::Atom;
  f.pred = std::move(pred);
  f.args = std::move(args);
  return f;
}

Formula Formula::pred_var_atom(std::string name, std::vector<Term> args) {
  Formula f = atom(std::move(name), std::move(args));
  f.pred_var = true;
  return f;
}

Formula Formula::utility(Term event, Term time, CmpOp cmp, Rational bound) {
  Formula f;
  f.kind = Conn::Utility;
  f.args = {std::move(event), std::move(time)};
  f.cmp = cmp;
  f.bound = bound;
  return f;
}

Formula Formula::negation(Formula g) {
  Formula f;
  f.kind = Conn::Not;
  f.kids = {std::move(g)};
  return f;
}

Formula Formula::conj(std::vector<Formula> fs) {
  if (fs.size() == 1) return std::move(fs.front());
  Formula f;
  f.kind = Conn::And;
  f.kids = std::move(fs);
  return f;
}

Formula Formula::disj(std::vector<Formula> fs) {
  if (fs.size() == 1) return std::move(fs.front());
  Formula f;
  f.kind = Conn::Or;
  f.kids = std::move(fs);
  return f;
}

Formula Formula::implies(Formula a, Formula b) {
  Formula f;
  f.kind = Conn::Implies;
  f.kids = {std::move(a), std::move(b)};
  return f;
}

Formula Formula::iff(Formula a, Formula b) {
  Formula f;
  f.kind = Conn::Iff;
  f.kids = {std::move(a), std::move(b)};
  return f;
}

static Formula quantified(Conn kind, Term var, Formula body, long long n = 0) {
  Formula f;
  f.kind = kind;
  f.binder = std::move(var);
  f.kids = {std::move(body)};
  f.count = n;
  return f;
}

Formula Formula::forall(Term var, Formula body) {
  return quantified(Conn::Forall, std::move(var), std::move(body));
}

Formula Formula::exists(Term var, Formula body) {
  return quantified(Conn::Exists, std::move(var), std::move(body));
}

Formula Formula::count_at_least(long long n, Term var, Formula body) {
  return quantified(Conn::CountAtLeast, std::move(var), std::move(body), n);
}

Formula Formula::count_exact(long long n, Term var, Formula body) {
  return quantified(Conn::CountExact, std::move(var), std::move(body), n);
}

Formula Formula::modal(ModalOp op, std::vector<Term> agents, std::optional<Term> time,
                       Formula body) {
  Formula f;
  f.kind = Conn::Modal;
  f.op = op;
  f.agents = std::move(agents);
  f.time = std::move(time);
  f.kids = {std::move(body)};
  return f;
}

Formula Formula::believes(Term agent, Term time, Formula body) {
  return modal(ModalOp::Believes, {std::move(agent)}, std::move(time), std::move(body));
}

Formula Formula::knows(Term agent, Term time, Formula body) {
  return modal(ModalOp::Knows, {std::move(agent)}, std::move(time), std::move(body));
}

Formula Formula::says(Term speaker, Term hearer, Term time, Formula body) {
  return modal(ModalOp::Says, {std::move(speaker), std::move(hearer)}, std::move(time),
               std::move(body));
}

Formula Formula::says(Term speaker, Term time, Formula body) {
  return modal(ModalOp::Says, {std::move(speaker)}, std::move(time), std::move(body));
}

Formula Formula::common(Term time, Formula body) {
  return modal(ModalOp::Common, {}, std::move(time), std::move(body));
}

Formula Formula::ought(Term agent, Term time, Formula condition, Formula happens_clause) {
  Formula f = modal(ModalOp::Ought, {std::move(agent)}, std::move(time), std::move(condition));
  f.kids.push_back(std::move(happens_clause));
  return f;
}

Formula Formula::trait(Formula tau, Term agent) {
  return modal(ModalOp::Trait, {std::move(agent)}, std::nullopt, std::move(tau));
}

Formula Formula::equals(Term a, Term b) { return atom("=", {std::move(a), std::move(b)}); }

bool Formula::operator==(const Formula& other) const {
  if (kind != other.kind) return false;
  switch (kind) {
    case Conn::Atom:
      return pred == other.pred && pred_var == other.pred_var && args == other.args;
    case Conn::Utility:
      return args == other.args && cmp == other.cmp && bound == other.bound;
    case Conn::Forall:
    case Conn::Exists:
      return binder == other.binder && kids == other.kids;
    case Conn::CountAtLeast:
    case Conn::CountExact:
      return count == other.count && binder == other.binder && kids == other.kids;
    case Conn::Modal:
      return op == other.op && agents == other.agents && time == other.time &&
             kids == other.kids;
    default:
      return kids == other.kids;
  }
}

namespace {

void free_vars_rec(const Formula& f, std::vector<Term>& bound, std::vector<Term>& out) {
  auto add_term_vars = [&](const Term& t) {
    std::vector<Term> vs;
    collect_variables(t, vs);
    for (auto& v : vs) {
      bool is_bound = std::any_of(bound.begin(), bound.end(),
                                  [&](const Term& b) { return b.name == v.name; });
      if (is_bound) continue;
      bool seen = std::any_of(out.begin(), out.end(),
                              [&](const Term& o) { return o.name == v.name; });
      if (!seen) out.push_back(v);
    }
  };
  for (const auto& t : f.args) add_term_vars(t);
  for (const auto& a : f.agents) add_term_vars(a);
  if (f.time) add_term_vars(*f.time);
  if (f.binder) {
    bound.push_back(*f.binder);
    for (const auto& k : f.kids) free_vars_rec(k, bound, out);
    bound.pop_back();
  } else {
    for (const auto& k : f.kids) free_vars_rec(k, bound, out);
  }
}

}  // namespace

std::vector<Term> free_variables(const Formula& f) {
  std::vector<Term> bound, out;
  free_vars_rec(f, bound, out);
  return out;
}

std::vector<std::pair<std::string, size_t>> free_predicate_variables(const Formula& f) {
  std::vector<std::pair<std::string, size_t>> out;
  if (f.kind == Conn::Atom && f.pred_var) {
    bool seen = std::any_of(out.begin(), out.end(),
                            [&](const auto& p) { return p.first == f.pred; });
    if (!seen) out.emplace_back(f.pred, f.args.size());
  }
  for (const auto& k : f.kids) {
    for (auto& p : free_predicate_variables(k)) {
      bool seen = std::any_of(out.begin(), out.end(),
                              [&](const auto& q) { return q.first == p.first; });
      if (!seen) out.push_back(p);
    }
  }
  return out;
}

bool contains_predicate_variables(const Formula& f) {
  if (f.kind == Conn::Atom && f.pred_var) return true;
  return std::any_of(f.kids.begin(), f.kids.end(), contains_predicate_variables);
}

void collect_symbols(const Formula& f, std::set<std::string>& out) {
  for (const auto& t : f.args) collect_symbols(t, out);
  for (const auto& a : f.agents) collect_symbols(a, out);
  if (f.time) collect_symbols(*f.time, out);
  for (const auto& k : f.kids) collect_symbols(k, out);
}

std::vector<Formula> conjuncts_of(const Formula& f) {
  if (f.kind != Conn::And) return {f};
  std::vector<Formula> out;
  for (const auto& k : f.kids) {
    auto sub = conjuncts_of(k);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

size_t modal_depth(const Formula& f) {
  size_t inner = 0;
  for (const auto& k : f.kids) inner = std::max(inner, modal_depth(k));
  return inner + (f.kind == Conn::Modal ? 1 : 0);
}

}  // namespace exemplar
