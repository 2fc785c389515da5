#include "exemplar/alpha.hpp"

#include <map>
#include <string>
#include <vector>

namespace exemplar {

namespace {

struct Bijection {
  std::map<std::string, std::string> fwd, bwd;

  bool relate(const std::string& a, const std::string& b) {
    auto f = fwd.find(a);
    auto g = bwd.find(b);
    if (f == fwd.end() && g == bwd.end()) {
      fwd[a] = b;
      bwd[b] = a;
      return true;
    }
    return f != fwd.end() && g != bwd.end() && f->second == b && g->second == a;
  }
};

struct AlphaCtx {
  std::vector<std::pair<std::string, std::string>> bound;  // innermost last
  Bijection free_vars;
  Bijection preds;

  bool relate_var(const Term& a, const Term& b) {
    if (a.sort != b.sort) return false;
    for (auto it = bound.rbegin(); it != bound.rend(); ++it) {
      bool la = it->first == a.name;
      bool lb = it->second == b.name;
      if (la || lb) return la && lb;  // both bound by the same binder pair
    }
    return free_vars.relate(a.name, b.name);
  }
};

bool alpha_terms(const Term& a, const Term& b, AlphaCtx& ctx) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case TermKind::Variable:
      return ctx.relate_var(a, b);
    case TermKind::Constant:
      return a.name == b.name && a.sort == b.sort;
    case TermKind::Application: {
      if (a.name != b.name || a.args.size() != b.args.size()) return false;
      for (size_t i = 0; i < a.args.size(); ++i)
        if (!alpha_terms(a.args[i], b.args[i], ctx)) return false;
      return true;
    }
  }
  return false;
}

bool alpha_formulas(const Formula& a, const Formula& b, AlphaCtx& ctx) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Conn::Atom: {
      if (a.pred_var != b.pred_var) return false;
      if (a.args.size() != b.args.size()) return false;
      if (a.pred_var) {
        if (!ctx.preds.relate(a.pred, b.pred)) return false;
      } else if (a.pred != b.pred) {
        return false;
      }
      for (size_t i = 0; i < a.args.size(); ++i)
        if (!alpha_terms(a.args[i], b.args[i], ctx)) return false;
      return true;
    }
    case Conn::Utility:
      return a.cmp == b.cmp && a.bound == b.bound && alpha_terms(a.args[0], b.args[0], ctx) &&
             alpha_terms(a.args[1], b.args[1], ctx);
    case Conn::Forall:
    case Conn::Exists:
    case Conn::CountAtLeast:
    case Conn::CountExact: {
      if (a.count != b.count) return false;
      if (a.binder->sort != b.binder->sort) return false;
      ctx.bound.emplace_back(a.binder->name, b.binder->name);
      bool ok = alpha_formulas(a.kids[0], b.kids[0], ctx);
      ctx.bound.pop_back();
      return ok;
    }
    case Conn::Modal: {
      if (a.op != b.op || a.agents.size() != b.agents.size()) return false;
      if (a.time.has_value() != b.time.has_value()) return false;
      for (size_t i = 0; i < a.agents.size(); ++i)
        if (!alpha_terms(a.agents[i], b.agents[i], ctx)) return false;
      if (a.time && !alpha_terms(*a.time, *b.time, ctx)) return false;
      if (a.kids.size() != b.kids.size()) return false;
      for (size_t i = 0; i < a.kids.size(); ++i)
        if (!alpha_formulas(a.kids[i], b.kids[i], ctx)) return false;
      return true;
    }
    default: {
      if (a.kids.size() != b.kids.size()) return false;
      for (size_t i = 0; i < a.kids.size(); ++i)
        if (!alpha_formulas(a.kids[i], b.kids[i], ctx)) return false;
      return true;
    }
  }
}

}  // namespace

bool alpha_equivalent(const Formula& f1, const Formula& f2) {
  AlphaCtx ctx;
  return alpha_formulas(f1, f2, ctx);
}

bool alpha_equivalent(const Term& t1, const Term& t2) {
  AlphaCtx ctx;
  return alpha_terms(t1, t2, ctx);
}

}  // namespace exemplar
