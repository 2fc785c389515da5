#include "exemplar/report.hpp"

#include <json.hpp>
#include <sstream>

#include "exemplar/printer.hpp"

namespace exemplar {

namespace {

using nlohmann::json;

json trait_json(const Trait& t, const Scenario& scn) {
  json obs = json::array();
  for (const auto& o : t.observations) {
    json sit = json::array();
    for (const auto& f : o.situation) sit.push_back(print_formula(f));
    obs.push_back({{"time", o.time},
                   {"performer", o.performer},
                   {"action_type", print_term(o.action_type)},
                   {"situation", sit}});
  }
  json sit = json::array();
  for (const auto& f : t.situation) sit.push_back(print_formula(f));
  return {{"agent", t.owner},
          {"exemplar", t.learned_from},
          {"situation", sit},
          {"action_type", print_term(t.action_type)},
          {"formula", print_formula(t.single_formula(t.owner, scn.signature))},
          {"learned_at", t.learned_at},
          {"observations", obs}};
}

}  // namespace

std::string report_json(const RunResult& result, const Scenario& scn) {
  json doc;
  doc["traits"] = json::array();
  for (const auto& t : result.traits) doc["traits"].push_back(trait_json(t, scn));
  doc["exemplars"] = json::array();
  for (const auto& e : result.exemplars)
    doc["exemplars"].push_back(
        {{"exemplar", e.exemplar}, {"learner", e.learner}, {"count", e.count}});
  doc["admirations"] = json::array();
  for (const auto& a : result.admirations)
    doc["admirations"].push_back({{"admirer", a.admirer},
                                  {"admired", a.admired},
                                  {"action_type", print_term(a.action_type)},
                                  {"action_time", a.action_time},
                                  {"judgment_time", a.judgment_time}});
  doc["actions"] = json::array();
  for (const auto& f : result.actions)
    doc["actions"].push_back({{"agent", f.agent},
                              {"action_type", print_term(f.action_type)},
                              {"event", print_term(f.event)},
                              {"time", f.time}});
  if (!result.queries.empty()) {
    doc["queries"] = json::array();
    for (const auto& q : result.queries) {
      json entry = {{"kind", q.kind}, {"description", q.description}, {"verdict", q.verdict}};
      if (q.count_total >= 0) {
        entry["count"] = q.count_total;
        entry["count_virtuous_only"] = q.count_restricted;
      }
      doc["queries"].push_back(std::move(entry));
    }
  }
  doc["duration_ms"] = result.duration_ms;
  return doc.dump(2) + "\n";
}

std::string report_text(const RunResult& result, const Scenario& scn) {
  std::ostringstream out;
  out << "== input ==\n";
  out << "scenario: " << (scn.source_path.empty() ? "<inline>" : scn.source_path) << "\n";
  out << "horizon " << scn.config.horizon << ", m " << scn.config.trait_threshold_m << ", n "
      << scn.config.exemplar_threshold_n << "\n";
  for (const auto& h : scn.happens)
    out << "happens " << print_term(h.event) << " @ " << h.time << "\n";
  for (const auto& p : scn.pleased) out << "pleased " << p.agent << " @ " << p.time << "\n";
  for (const auto& f : scn.assertions) out << "fact " << print_formula(f) << "\n";

  out << "\n== admiration ==\n";
  if (result.admirations.empty()) out << "(none)\n";
  for (const auto& a : result.admirations)
    out << a.admirer << " admires " << a.admired << " for " << print_term(a.action_type)
        << " done at " << a.action_time << " (judged at " << a.judgment_time << ")\n";

  out << "\n== exemplars ==\n";
  if (result.exemplars.empty()) out << "(none)\n";
  for (const auto& e : result.exemplars)
    out << e.exemplar << " is an exemplar for " << e.learner << " (" << e.count
        << " admirations)\n";

  out << "\n== learned traits ==\n";
  if (result.traits.empty()) out << "(none)\n";
  for (const auto& t : result.traits) {
    out << t.owner << " learned from " << t.learned_from << " at " << t.learned_at << ":\n";
    out << "  situation:\n";
    for (const auto& f : t.situation) out << "    " << print_formula(f) << "\n";
    out << "  action type: " << print_term(t.action_type) << "\n";
    out << "  as formula: " << print_formula(t.single_formula(t.owner, scn.signature)) << "\n";
    out << "  learned from observations:\n";
    for (const auto& o : t.observations) {
      out << "    t=" << o.time << " " << o.performer << " did " << print_term(o.action_type)
          << " given:\n";
      for (const auto& f : o.situation) out << "      " << print_formula(f) << "\n";
    }
  }

  out << "\n== actions ==\n";
  if (result.actions.empty()) out << "(none)\n";
  for (const auto& f : result.actions)
    out << "happens " << print_term(f.event) << " @ " << f.time << "\n";

  if (!result.queries.empty()) {
    out << "\n== queries ==\n";
    for (const auto& q : result.queries) {
      out << q.kind << " " << q.description << " -> " << (q.verdict ? "yes" : "no");
      if (q.count_total >= 0)
        out << " (count " << q.count_total << ", virtuous-only " << q.count_restricted << ")";
      out << "\n";
    }
  }

  out << "\nduration: " << result.duration_ms << " ms\n";
  return out.str();
}

}  // namespace exemplar
