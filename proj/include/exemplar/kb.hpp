#pragma once

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "exemplar/formula.hpp"
#include "exemplar/trace.hpp"

namespace exemplar {

struct Derivation {
  std::string rule = "axiom";
  std::vector<int> premises;
  std::vector<ProofStep> sub;  // context subproof (I_B, admiration, ...)
  std::string note;
};

// Index head used for rule dispatch.
std::string head_symbol(const Formula& f);

// Monotone formula store: formulas are only ever added, axioms carry no
// derivation, everything else does.
class KnowledgeBase {
 public:
  explicit KnowledgeBase(long long horizon = 0) : horizon_(horizon) {}

  // Returns the formula's id; re-asserting an existing formula is a no-op.
  int assert_axiom(const Formula& f);
  int assert_derived(const Formula& f, Derivation d);

  bool contains(const Formula& f) const;
  int id_of(const Formula& f) const;  // -1 when absent
  int id_of_printed(const std::string& key) const;

  const Formula& formula(int id) const { return entries_[id].formula; }
  const std::string& printed(int id) const { return entries_[id].printed; }
  const Derivation& derivation(int id) const { return entries_[id].derivation; }
  bool is_axiom(int id) const { return entries_[id].derivation.rule == "axiom"; }

  size_t size() const { return entries_.size(); }
  const std::vector<int>& by_head(const std::string& head) const;

  long long horizon() const { return horizon_; }
  void set_horizon(long long h) { horizon_ = h; }

  std::vector<std::string> printed_axioms() const;
  std::vector<std::string> printed_all() const;

  // Saturation bookkeeping: a kb whose size matches the marker under the
  // same reasoner configuration is already closed.
  void mark_saturated(const std::string& key) {
    saturated_key_ = key;
    saturated_size_ = entries_.size();
  }
  bool saturated_under(const std::string& key) const {
    return saturated_key_ == key && saturated_size_ == entries_.size();
  }

 private:
  struct Entry {
    Formula formula;
    std::string printed;
    Derivation derivation;
  };
  std::vector<Entry> entries_;
  std::unordered_map<std::string, int> index_;
  std::map<std::string, std::vector<int>> head_index_;
  long long horizon_;
  std::string saturated_key_;
  size_t saturated_size_ = static_cast<size_t>(-1);
  static const std::vector<int> kEmpty;
};

}  // namespace exemplar
