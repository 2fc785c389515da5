#include "exemplar/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "exemplar/parser.hpp"
#include "exemplar/printer.hpp"
#include "exemplar/sexpr.hpp"
#include "exemplar/sortcheck.hpp"
#include "exemplar/subst.hpp"
#include "exemplar/unify.hpp"

namespace exemplar {

namespace {

bool parse_int(const Sexpr& e, long long& out) {
  if (!e.is_symbol()) return false;
  const std::string& s = e.text;
  if (s.empty()) return false;
  size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (size_t j = i; j < s.size(); ++j)
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
  out = std::stoll(s);
  return true;
}

struct Loader {
  Scenario scn;
  std::vector<Diagnostic> diags;
  bool config_seen = false;

  void error(ErrorKind kind, std::string msg, SourcePos pos, std::string subject = {}) {
    diags.push_back(make_diag(kind, std::move(msg), pos, std::move(subject)));
  }

  void take(const Result<Formula>& r, SourcePos pos) {
    for (auto d : r.diagnostics) {
      if (d.pos.line == 0) d.pos = pos;
      diags.push_back(std::move(d));
    }
  }

  void handle_config(const Sexpr& form) {
    config_seen = true;
    for (size_t i = 1; i < form.items.size(); ++i) {
      const Sexpr& entry = form.items[i];
      long long v = 0;
      if (!entry.is_list() || entry.items.size() != 2 || !entry.items[0].is_symbol() ||
          !parse_int(entry.items[1], v)) {
        error(ErrorKind::Syntax, "config entry must be (key integer)", entry.pos,
              print_sexpr(entry));
        continue;
      }
      const std::string& key = entry.items[0].text;
      if (key == "horizon") scn.config.horizon = v;
      else if (key == "m") scn.config.trait_threshold_m = v;
      else if (key == "n") scn.config.exemplar_threshold_n = v;
      else if (key == "virtuous-n") scn.config.virtuous_threshold = v;
      else if (key == "virtue-n") scn.config.virtue_threshold = v;
      else if (key == "max-rounds") scn.config.max_rounds = static_cast<int>(v);
      else if (key == "max-depth") scn.config.max_modal_depth = static_cast<int>(v);
      else if (key == "max-term-depth") scn.config.max_term_depth = static_cast<int>(v);
      else if (key == "budget-ms") scn.config.budget_ms = static_cast<int>(v);
      else error(ErrorKind::Validation, "unknown config key: " + key, entry.pos);
    }
  }

  std::vector<std::string> sort_list(const Sexpr& e) {
    std::vector<std::string> out;
    if (!e.is_list()) {
      error(ErrorKind::Syntax, "expected a (Sort ...) list", e.pos, print_sexpr(e));
      return out;
    }
    for (const auto& s : e.items) {
      if (!s.is_symbol()) {
        error(ErrorKind::Syntax, "sort name must be a symbol", s.pos);
        continue;
      }
      out.push_back(s.text);
    }
    return out;
  }

  std::optional<Term> ground_term(const Sexpr& e, const std::string& expect_sort) {
    auto r = parse_term(e, scn.signature);
    if (!r.ok()) {
      take(Result<Formula>{std::nullopt, r.diagnostics}, e.pos);
      return std::nullopt;
    }
    if (!r->ground()) {
      error(ErrorKind::Validation, "term must be ground", e.pos, print_term(*r));
      return std::nullopt;
    }
    if (!expect_sort.empty() && !scn.signature.subsort(r->sort, expect_sort)) {
      error(ErrorKind::SortMismatch, "expected a " + expect_sort + " term, got " + r->sort,
            e.pos, print_term(*r));
      return std::nullopt;
    }
    return *r;
  }

  void handle_mu(const Sexpr& form, bool is_range, std::string agent) {
    size_t base = agent.empty() ? 1 : 2;
    size_t want = base + (is_range ? 4 : 3);
    if (form.items.size() != want) {
      error(ErrorKind::ArityMismatch,
            "mu expects (fluent moment value)" + std::string(is_range ? " with from/to" : ""),
            form.pos, print_sexpr(form));
      return;
    }
    auto fluent = ground_term(form.items[base], sorts::Fluent);
    if (!fluent) return;
    long long t0 = 0, t1 = 0;
    if (is_range) {
      if (!parse_int(form.items[base + 1], t0) || !parse_int(form.items[base + 2], t1)) {
        error(ErrorKind::Syntax, "mu* range bounds must be integers", form.pos);
        return;
      }
    } else {
      if (!parse_int(form.items[base + 1], t0)) {
        error(ErrorKind::Syntax, "mu moment must be an integer", form.pos);
        return;
      }
      t1 = t0;
    }
    const Sexpr& value = form.items.back();
    auto q = value.is_symbol() ? parse_rational(value.text) : std::nullopt;
    if (!q) {
      error(ErrorKind::Syntax, "mu value must be a rational literal", value.pos);
      return;
    }
    UtilityTable& table = agent.empty() ? scn.mu : scn.private_mu[agent];
    std::string key = print_term(*fluent);
    for (long long t = t0; t <= t1; ++t) {
      auto [it, inserted] = table.emplace(std::make_pair(key, t), *q);
      if (!inserted)
        error(ErrorKind::Validation,
              "duplicate mu entry for (" + key + ", " + std::to_string(t) + ")", form.pos);
    }
  }

  void handle_law(const Sexpr& form, CausalLaw::Kind kind) {
    if (form.items.size() < 3) {
      error(ErrorKind::ArityMismatch, "causal law expects (event-pattern fluent-pattern)",
            form.pos, print_sexpr(form));
      return;
    }
    auto ev = parse_term(form.items[1], scn.signature);
    auto fl = parse_term(form.items[2], scn.signature);
    if (!ev.ok() || !fl.ok()) {
      take(Result<Formula>{std::nullopt, ev.diagnostics}, form.items[1].pos);
      take(Result<Formula>{std::nullopt, fl.diagnostics}, form.items[2].pos);
      return;
    }
    CausalLaw law;
    law.kind = kind;
    law.event_pattern = *ev;
    law.fluent_pattern = *fl;
    size_t i = 3;
    while (i + 1 < form.items.size()) {
      const std::string key = form.items[i].is_symbol() ? form.items[i].text : "";
      long long v = 0;
      if ((key == ":from" || key == ":to") && parse_int(form.items[i + 1], v)) {
        (key == ":from" ? law.from_time : law.to_time) = v;
        i += 2;
      } else {
        error(ErrorKind::Syntax, "expected :from/:to guards", form.items[i].pos);
        break;
      }
    }
    if (!scn.signature.subsort(ev->sort, sorts::Event))
      error(ErrorKind::SortMismatch, "law event pattern must be an Event", form.items[1].pos,
            print_term(*ev));
    if (!scn.signature.subsort(fl->sort, sorts::Fluent))
      error(ErrorKind::SortMismatch, "law fluent pattern must be a Fluent", form.items[2].pos,
            print_term(*fl));
    std::set<std::string> ev_vars, fl_vars;
    for (const auto& v : variables_of(*ev)) ev_vars.insert(v.name);
    for (const auto& v : variables_of(*fl)) fl_vars.insert(v.name);
    for (const auto& v : fl_vars) {
      if (!ev_vars.count(v))
        error(ErrorKind::Validation,
              "fluent pattern variable ?" + v + " does not occur in the event pattern",
              form.pos, print_sexpr(form));
    }
    scn.laws.push_back(std::move(law));
  }

  void handle_form(const Sexpr& form) {
    const std::string head = form.head();
    if (head.empty()) {
      error(ErrorKind::Syntax, "top-level form must be a (head ...) list", form.pos,
            print_sexpr(form));
      return;
    }
    auto opt_err = [&](const std::optional<Diagnostic>& d) {
      if (d) {
        Diagnostic dd = *d;
        dd.pos = form.pos;
        diags.push_back(std::move(dd));
      }
    };

    if (head == "config") {
      handle_config(form);
    } else if (head == "sort") {
      if (form.items.size() != 3 || !form.items[1].is_symbol() || !form.items[2].is_symbol()) {
        error(ErrorKind::Syntax, "expected (sort Name ParentSort)", form.pos);
        return;
      }
      opt_err(scn.signature.declare_sort(form.items[1].text, form.items[2].text));
    } else if (head == "const") {
      if (form.items.size() != 3 || !form.items[1].is_symbol() || !form.items[2].is_symbol()) {
        error(ErrorKind::Syntax, "expected (const name Sort)", form.pos);
        return;
      }
      opt_err(scn.signature.declare_constant(form.items[1].text, form.items[2].text));
    } else if (head == "func") {
      if (form.items.size() != 4 || !form.items[1].is_symbol() || !form.items[3].is_symbol()) {
        error(ErrorKind::Syntax, "expected (func name (ArgSorts...) ResultSort)", form.pos);
        return;
      }
      opt_err(scn.signature.declare_functor(form.items[1].text, sort_list(form.items[2]),
                                            form.items[3].text));
    } else if (head == "pred") {
      if (form.items.size() != 3 || !form.items[1].is_symbol()) {
        error(ErrorKind::Syntax, "expected (pred name (ArgSorts...))", form.pos);
        return;
      }
      opt_err(scn.signature.declare_predicate(form.items[1].text, sort_list(form.items[2])));
    } else if (head == "initiates") {
      handle_law(form, CausalLaw::Kind::Initiates);
    } else if (head == "terminates") {
      handle_law(form, CausalLaw::Kind::Terminates);
    } else if (head == "mu" || head == "mu*") {
      handle_mu(form, head == "mu*", "");
    } else if (head == "private-mu" || head == "private-mu*") {
      if (form.items.size() < 2 || !form.items[1].is_symbol()) {
        error(ErrorKind::Syntax, "expected (private-mu agent fluent moment value)", form.pos);
        return;
      }
      handle_mu(form, head == "private-mu*", form.items[1].text);
    } else if (head == "happens") {
      if (form.items.size() != 3) {
        error(ErrorKind::ArityMismatch, "expected (happens event moment)", form.pos);
        return;
      }
      auto ev = ground_term(form.items[1], sorts::Event);
      long long t = 0;
      if (!parse_int(form.items[2], t)) {
        error(ErrorKind::Syntax, "happens moment must be an integer", form.items[2].pos);
        return;
      }
      if (ev) scn.happens.push_back({*ev, t});
    } else if (head == "holds") {
      if (form.items.size() != 3) {
        error(ErrorKind::ArityMismatch, "expected (holds fluent 0)", form.pos);
        return;
      }
      auto fl = ground_term(form.items[1], sorts::Fluent);
      long long t = -1;
      if (!parse_int(form.items[2], t) || t != 0) {
        error(ErrorKind::Validation, "initial holds facts must be declared at moment 0",
              form.pos, print_sexpr(form));
        return;
      }
      if (fl) scn.initial_holds.push_back(*fl);
    } else if (head == "pleased") {
      if (form.items.size() != 3 || !form.items[1].is_symbol()) {
        error(ErrorKind::ArityMismatch, "expected (pleased agent moment)", form.pos);
        return;
      }
      const std::string& agent = form.items[1].text;
      auto s = scn.signature.constant_sort(agent);
      if (!s || !scn.signature.subsort(*s, sorts::Agent)) {
        error(ErrorKind::UnknownSymbol, "pleased expects a declared Agent constant", form.pos,
              agent);
        return;
      }
      long long t = 0;
      if (!parse_int(form.items[2], t)) {
        error(ErrorKind::Syntax, "pleased moment must be an integer", form.items[2].pos);
        return;
      }
      scn.pleased.push_back({agent, t});
    } else if (head == "believes" || head == "knows" || head == "fact" || head == "says" ||
               head == "ought" || head == "perceives" || head == "desires" ||
               head == "intends" || head == "common") {
      // Assertions: (fact <formula>) or a modal form used directly.
      const Sexpr* fe = &form;
      Sexpr unwrapped;
      if (head == "fact") {
        if (form.items.size() != 2) {
          error(ErrorKind::ArityMismatch, "expected (fact formula)", form.pos);
          return;
        }
        fe = &form.items[1];
      }
      auto f = parse_formula(*fe, scn.signature);
      if (!f.ok()) {
        take(f, fe->pos);
        return;
      }
      scn.assertions.push_back(*f);
    } else if (head == "query") {
      handle_query(form);
    } else {
      error(ErrorKind::Syntax, "unknown top-level form: " + head, form.pos, print_sexpr(form));
    }
  }

  void handle_query(const Sexpr& form) {
    if (form.items.size() != 2 || !form.items[1].is_list()) {
      error(ErrorKind::Syntax, "expected (query (virtuous agent n) | (virtue formula n) | (prove formula))",
            form.pos);
      return;
    }
    const Sexpr& q = form.items[1];
    const std::string kind = q.head();
    ScenarioQuery out;
    if (kind == "virtuous" && q.items.size() == 3 && q.items[1].is_symbol()) {
      out.kind = ScenarioQuery::Kind::Virtuous;
      out.agent = q.items[1].text;
      if (!parse_int(q.items[2], out.n)) {
        error(ErrorKind::Syntax, "virtuous threshold must be an integer", q.pos);
        return;
      }
    } else if (kind == "virtue" && q.items.size() == 3) {
      out.kind = ScenarioQuery::Kind::Virtue;
      auto f = parse_formula(q.items[1], scn.signature);
      if (!f.ok()) {
        take(f, q.items[1].pos);
        return;
      }
      out.formula = *f;
      if (!parse_int(q.items[2], out.n)) {
        error(ErrorKind::Syntax, "virtue threshold must be an integer", q.pos);
        return;
      }
    } else if (kind == "prove" && q.items.size() == 2) {
      out.kind = ScenarioQuery::Kind::Prove;
      auto f = parse_formula(q.items[1], scn.signature);
      if (!f.ok()) {
        take(f, q.items[1].pos);
        return;
      }
      out.formula = *f;
    } else {
      error(ErrorKind::Syntax, "unknown query form", q.pos, print_sexpr(q));
      return;
    }
    scn.queries.push_back(std::move(out));
  }

  void validate() {
    long long max_moment = 0;
    for (const auto& h : scn.happens) max_moment = std::max(max_moment, h.time);
    for (const auto& p : scn.pleased) max_moment = std::max(max_moment, p.time);
    for (const auto& [key, q] : scn.mu) max_moment = std::max(max_moment, key.second);
    if (scn.config.horizon < max_moment) {
      error(ErrorKind::Validation,
            "horizon " + std::to_string(scn.config.horizon) +
                " is smaller than the largest moment mentioned (" + std::to_string(max_moment) +
                ")",
            {});
    }
    if (scn.config.horizon < 0 || scn.config.trait_threshold_m < 1 ||
        scn.config.exemplar_threshold_n < 1)
      error(ErrorKind::Validation, "config thresholds must be positive and horizon >= 0", {});
    if (scn.config.max_rounds < 1 || scn.config.max_modal_depth < 1 ||
        scn.config.max_term_depth < 1 || scn.config.budget_ms < 1)
      error(ErrorKind::Validation, "prover bounds must be positive", {});
    for (const auto& h : scn.happens) {
      if (h.time < 0 || h.time > scn.config.horizon)
        error(ErrorKind::Validation, "happens moment outside [0, horizon]", {},
              print_term(h.event) + " @ " + std::to_string(h.time));
    }
    // An event must not initiate and terminate the same fluent at once.
    for (const auto& h : scn.happens) {
      std::set<std::string> inited, termed;
      for (const auto& law : scn.laws) {
        if (!law.applies_at(h.time)) continue;
        auto m = match_pattern(law.event_pattern, h.event);
        if (!m) continue;
        Term fl = apply_substitution(law.fluent_pattern, *m);
        (law.kind == CausalLaw::Kind::Initiates ? inited : termed).insert(print_term(fl));
      }
      for (const auto& f : inited) {
        if (termed.count(f))
          error(ErrorKind::Validation,
                "event both initiates and terminates " + f + " at " + std::to_string(h.time),
                {}, print_term(h.event));
      }
    }
  }
};

}  // namespace

Result<Scenario> parse_scenario(const std::string& text, std::string source_name) {
  auto forms = read_sexprs(text);
  if (!forms.ok()) return Result<Scenario>::failure(std::move(forms.diagnostics));
  Loader loader;
  loader.scn.source_path = std::move(source_name);
  // config must precede everything else so defaults/overrides are settled
  // before facts are validated.
  for (size_t i = 0; i < forms->size(); ++i) {
    const auto& form = (*forms)[i];
    if (form.head() == "config" && i != 0) {
      loader.error(ErrorKind::Validation, "config must be the first form when present",
                   form.pos);
    }
  }
  for (const auto& form : *forms) loader.handle_form(form);
  loader.validate();
  if (!loader.diags.empty()) return Result<Scenario>::failure(std::move(loader.diags));
  return Result<Scenario>::success(std::move(loader.scn));
}

Result<Scenario> load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return Result<Scenario>::failure(
        make_diag(ErrorKind::Io, "cannot open scenario file: " + path));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path);
}

std::string print_scenario(const Scenario& scn) {
  std::ostringstream out;
  const auto& c = scn.config;
  out << "(config (horizon " << c.horizon << ") (m " << c.trait_threshold_m << ") (n "
      << c.exemplar_threshold_n << ") (virtuous-n " << c.virtuous_threshold << ") (virtue-n "
      << c.virtue_threshold << ") (max-rounds " << c.max_rounds << ") (max-depth "
      << c.max_modal_depth << "))\n";
  for (const auto& [name, parent] : scn.signature.sorts()) {
    if (parent && !(name == sorts::Action && *parent == sorts::Event))
      out << "(sort " << name << " " << *parent << ")\n";
  }
  for (const auto& [name, sort] : scn.signature.constants())
    out << "(const " << name << " " << sort << ")\n";
  for (const auto& [name, decl] : scn.signature.functors()) {
    if (name == "action" || name == "admires") continue;
    out << "(func " << name << " (";
    for (size_t i = 0; i < decl.param_sorts.size(); ++i)
      out << (i ? " " : "") << decl.param_sorts[i];
    out << ") " << decl.result_sort << ")\n";
  }
  for (const auto& [name, decl] : scn.signature.predicates()) {
    static const std::set<std::string> builtin = {"holds",      "happens", "prior",
                                                  "initiates",  "terminates", "pleased",
                                                  "exemplar"};
    if (builtin.count(name)) continue;
    out << "(pred " << name << " (";
    for (size_t i = 0; i < decl.param_sorts.size(); ++i)
      out << (i ? " " : "") << decl.param_sorts[i];
    out << "))\n";
  }
  for (const auto& law : scn.laws) {
    out << "(" << (law.kind == CausalLaw::Kind::Initiates ? "initiates" : "terminates") << " "
        << print_term(law.event_pattern) << " " << print_term(law.fluent_pattern);
    if (law.from_time) out << " :from " << *law.from_time;
    if (law.to_time) out << " :to " << *law.to_time;
    out << ")\n";
  }
  for (const auto& [key, q] : scn.mu)
    out << "(mu " << key.first << " " << key.second << " " << to_string(q) << ")\n";
  for (const auto& [agent, table] : scn.private_mu)
    for (const auto& [key, q] : table)
      out << "(private-mu " << agent << " " << key.first << " " << key.second << " "
          << to_string(q) << ")\n";
  for (const auto& f : scn.initial_holds) out << "(holds " << print_term(f) << " 0)\n";
  for (const auto& h : scn.happens)
    out << "(happens " << print_term(h.event) << " " << h.time << ")\n";
  for (const auto& p : scn.pleased) out << "(pleased " << p.agent << " " << p.time << ")\n";
  for (const auto& f : scn.assertions) out << "(fact " << print_formula(f) << ")\n";
  return out.str();
}

}  // namespace exemplar
