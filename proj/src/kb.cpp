#include "exemplar/kb.hpp"

#include "exemplar/printer.hpp"

namespace exemplar {

const std::vector<int> KnowledgeBase::kEmpty = {};

std::string head_symbol(const Formula& f) {
  switch (f.kind) {
    case Conn::Atom: return f.pred_var ? "?" + f.pred : f.pred;
    case Conn::Utility: return "nu";
    case Conn::Not: return "not";
    case Conn::And: return "and";
    case Conn::Or: return "or";
    case Conn::Implies: return "implies";
    case Conn::Iff: return "iff";
    case Conn::Forall: return "forall";
    case Conn::Exists: return "exists";
    case Conn::CountAtLeast: return "exists-atleast";
    case Conn::CountExact: return "exists-exactly";
    case Conn::Modal: return to_string(f.op);
  }
  return "?";
}

int KnowledgeBase::assert_axiom(const Formula& f) { return assert_derived(f, Derivation{}); }

int KnowledgeBase::assert_derived(const Formula& f, Derivation d) {
  std::string key = print_formula(f);
  auto it = index_.find(key);
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(entries_.size());
  head_index_[head_symbol(f)].push_back(id);
  index_.emplace(key, id);
  entries_.push_back({f, std::move(key), std::move(d)});
  return id;
}

bool KnowledgeBase::contains(const Formula& f) const { return id_of(f) >= 0; }

int KnowledgeBase::id_of(const Formula& f) const { return id_of_printed(print_formula(f)); }

int KnowledgeBase::id_of_printed(const std::string& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? -1 : it->second;
}

const std::vector<int>& KnowledgeBase::by_head(const std::string& head) const {
  auto it = head_index_.find(head);
  return it == head_index_.end() ? kEmpty : it->second;
}

std::vector<std::string> KnowledgeBase::printed_axioms() const {
  std::vector<std::string> out;
  for (const auto& e : entries_)
    if (e.derivation.rule == "axiom") out.push_back(e.printed);
  return out;
}

std::vector<std::string> KnowledgeBase::printed_all() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.printed);
  return out;
}

}  // namespace exemplar
