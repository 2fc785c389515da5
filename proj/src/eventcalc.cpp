#include "exemplar/eventcalc.hpp"

#include <algorithm>

#include "exemplar/printer.hpp"
#include "exemplar/subst.hpp"
#include "exemplar/unify.hpp"

namespace exemplar {

WorldView global_view(const Scenario& scn) {
  return WorldView{&scn.laws, &scn.mu, &scn.happens, &scn.initial_holds, scn.config.horizon};
}

Rational mu_value(const WorldView& view, const Term& fluent, long long t) {
  auto it = view.mu->find({print_term(fluent), t});
  return it == view.mu->end() ? Rational(0) : it->second;
}

namespace {

std::vector<Term> matching_fluents(const WorldView& view, const Term& event, long long t,
                                   CausalLaw::Kind kind) {
  if (!event.ground())
    throw EventCalcError("NonGroundEvent: " + print_term(event));
  std::vector<Term> out;
  std::vector<std::string> seen;
  for (const auto& law : *view.laws) {
    if (law.kind != kind || !law.applies_at(t)) continue;
    auto m = match_pattern(law.event_pattern, event);
    if (!m) continue;
    Term fl = apply_substitution(law.fluent_pattern, *m);
    std::string key = print_term(fl);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    out.push_back(std::move(fl));
  }
  std::sort(out.begin(), out.end(),
            [](const Term& a, const Term& b) { return print_term(a) < print_term(b); });
  return out;
}

}  // namespace

std::vector<Term> initiated_fluents(const WorldView& view, const Term& event, long long t) {
  return matching_fluents(view, event, t, CausalLaw::Kind::Initiates);
}

std::vector<Term> terminated_fluents(const WorldView& view, const Term& event, long long t) {
  return matching_fluents(view, event, t, CausalLaw::Kind::Terminates);
}

std::vector<Term> initiated_fluents(const Scenario& scn, const Term& event, long long t) {
  return initiated_fluents(global_view(scn), event, t);
}

std::vector<Term> terminated_fluents(const Scenario& scn, const Term& event, long long t) {
  return terminated_fluents(global_view(scn), event, t);
}

Rational event_utility(const WorldView& view, const Term& event, long long t) {
  if (t >= view.horizon)
    throw EventCalcError("HorizonExceeded: nu at t=" + std::to_string(t) + " with H=" +
                         std::to_string(view.horizon));
  auto initiated = initiated_fluents(view, event, t);
  auto terminated = terminated_fluents(view, event, t);
  Rational total(0);
  for (long long y = t + 1; y <= view.horizon; ++y) {
    for (const auto& f : initiated) total += mu_value(view, f, y);
    for (const auto& f : terminated) total -= mu_value(view, f, y);
  }
  return total;
}

Rational event_utility(const Scenario& scn, const Term& event, long long t) {
  return event_utility(global_view(scn), event, t);
}

bool holds_at(const WorldView& view, const Term& fluent, long long t) {
  if (t < 0 || t > view.horizon)
    throw EventCalcError("holds_at queried outside [0, horizon]: " + std::to_string(t));
  std::string key = print_term(fluent);

  std::vector<long long> initiations;
  if (view.initial_holds) {
    for (const auto& f : *view.initial_holds)
      if (print_term(f) == key) initiations.push_back(-1);
  }
  std::vector<long long> terminations;
  if (view.happens) {
    for (const auto& h : *view.happens) {
      for (const auto& f : initiated_fluents(view, h.event, h.time))
        if (print_term(f) == key) initiations.push_back(h.time);
      for (const auto& f : terminated_fluents(view, h.event, h.time))
        if (print_term(f) == key) terminations.push_back(h.time);
    }
  }
  for (long long p : initiations) {
    if (p >= t) continue;
    bool clipped = std::any_of(terminations.begin(), terminations.end(),
                               [&](long long q) { return p < q && q < t; });
    if (!clipped) return true;
  }
  return false;
}

bool holds_at(const Scenario& scn, const Term& fluent, long long t) {
  return holds_at(global_view(scn), fluent, t);
}

}  // namespace exemplar
