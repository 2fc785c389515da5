#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <iostream>
#include <thread>

#include "exemplar/alpha.hpp"
#include "exemplar/antiunify.hpp"
#include "exemplar/parser.hpp"
#include "exemplar/pipeline.hpp"
#include "exemplar/printer.hpp"
#include "exemplar/report.hpp"
#include "exemplar/trace.hpp"

namespace {

using namespace exemplar;

constexpr int kExitOk = 0;
constexpr int kExitDiagnostics = 1;
constexpr int kExitInternal = 2;

void print_diagnostics(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags) std::cerr << d.str() << "\n";
}

struct CommonOpts {
  RunOverrides overrides;
  bool json = false;
  int jobs = 1;
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool with_n = true) {
  cmd->add_option("--horizon", [&opts](const CLI::results_t& r) {
    opts.overrides.horizon = std::stoll(r[0]);
    return true;
  }, "Override the scenario horizon H");
  cmd->add_option("--m", [&opts](const CLI::results_t& r) {
    opts.overrides.m = std::stoll(r[0]);
    return true;
  }, "Override the trait observation threshold m");
  if (with_n) {
    cmd->add_option("--n", [&opts](const CLI::results_t& r) {
      opts.overrides.n = std::stoll(r[0]);
      return true;
    }, "Override the exemplar admiration threshold n");
  }
  cmd->add_option("--max-rounds", [&opts](const CLI::results_t& r) {
    opts.overrides.max_rounds = std::stoi(r[0]);
    return true;
  }, "Saturation round bound");
  cmd->add_option("--max-depth", [&opts](const CLI::results_t& r) {
    opts.overrides.max_depth = std::stoi(r[0]);
    return true;
  }, "Modal nesting bound");
  cmd->add_flag("--json", opts.json, "Emit the machine-readable JSON report");
}

int cmd_run(const std::vector<std::string>& files, const CommonOpts& opts) {
  struct Slot {
    std::string output;
    int exit = kExitOk;
  };
  std::vector<Slot> slots(files.size());

  auto work = [&](size_t i) {
    auto scn = load_scenario(files[i]);
    if (!scn.ok()) {
      for (const auto& d : scn.diagnostics) slots[i].output += d.str() + "\n";
      slots[i].exit = kExitDiagnostics;
      return;
    }
    try {
      Scenario adjusted = apply_overrides(std::move(*scn), opts.overrides);
      RunResult result = run_pipeline(adjusted);
      slots[i].output =
          opts.json ? report_json(result, adjusted) : report_text(result, adjusted);
    } catch (const std::exception& e) {
      slots[i].output = std::string("internal error: ") + e.what() + "\n";
      slots[i].exit = kExitInternal;
    }
  };

  int jobs = std::max(1, opts.jobs);
  if (jobs == 1 || files.size() <= 1) {
    for (size_t i = 0; i < files.size(); ++i) work(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (int j = 0; j < jobs; ++j) {
      pool.emplace_back([&] {
        while (true) {
          size_t i = next.fetch_add(1);
          if (i >= files.size()) return;
          work(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  int exit = kExitOk;
  for (size_t i = 0; i < files.size(); ++i) {
    if (files.size() > 1 && !opts.json) std::cout << ";; " << files[i] << "\n";
    (slots[i].exit == kExitOk ? std::cout : std::cerr) << slots[i].output;
    exit = std::max(exit, slots[i].exit);
  }
  return exit;
}

int cmd_prove(const std::string& file, const std::string& goal_text, const CommonOpts& opts) {
  auto scn = load_scenario(file);
  if (!scn.ok()) {
    print_diagnostics(scn.diagnostics);
    return kExitDiagnostics;
  }
  Scenario adjusted = apply_overrides(std::move(*scn), opts.overrides);
  auto goal = parse_formula(goal_text, adjusted.signature);
  if (!goal.ok()) {
    print_diagnostics(goal.diagnostics);
    return kExitDiagnostics;
  }
  KnowledgeBase kb = initial_kb(adjusted);
  Reasoner reasoner(adjusted.signature, bounds_from_config(adjusted.config), &adjusted);
  reasoner.saturate(kb);
  ProofResult proof = reasoner.prove(kb, *goal);
  if (proof.proved()) {
    std::cout << "Proved: " << print_formula(*goal) << "\n";
    std::cout << print_trace(proof.trace);
  } else {
    std::cout << "Unknown: " << print_formula(*goal)
              << (proof.bound_hit ? "  (bounds exhausted)" : "") << "\n";
  }
  return kExitOk;
}

int cmd_antiunify(const std::string& left, const std::string& right,
                  const std::string& scenario_file) {
  Signature sig;
  Scenario scn;
  if (!scenario_file.empty()) {
    auto loaded = load_scenario(scenario_file);
    if (!loaded.ok()) {
      print_diagnostics(loaded.diagnostics);
      return kExitDiagnostics;
    }
    scn = std::move(*loaded);
    sig = scn.signature;
  }

  // Heads that the signature knows as functors parse as terms; everything
  // else is treated as an atom (predicates are auto-declared without a
  // scenario), which is where the higher-order fallback lives.
  auto as_term = [&](const std::string& text) -> std::optional<Term> {
    auto r = parse_term(text, sig);
    if (!r.ok()) return std::nullopt;
    return *r;
  };
  auto t1 = as_term(left), t2 = as_term(right);
  if (t1 && t2) {
    auto g = anti_unify_terms(*t1, *t2, sig);
    if (!g.ok()) {
      print_diagnostics(g.diagnostics);
      return kExitDiagnostics;
    }
    std::cout << "generalization: " << print_term(g->g) << "\n";
    std::cout << "theta1: " << to_string(g->witnesses[0]) << "\n";
    std::cout << "theta2: " << to_string(g->witnesses[1]) << "\n";
    return kExitOk;
  }

  auto f1 = parse_formula_permissive(left, sig);
  auto f2 = parse_formula_permissive(right, sig);
  if (!f1.ok() || !f2.ok()) {
    print_diagnostics(f1.diagnostics);
    print_diagnostics(f2.diagnostics);
    return kExitDiagnostics;
  }
  auto g = anti_unify_ho(*f1, *f2, sig);
  if (!g.ok()) {
    print_diagnostics(g.diagnostics);
    return kExitDiagnostics;
  }
  std::cout << "generalization: " << print_formula(g->g) << "\n";
  std::cout << "theta1: " << to_string(g->witnesses[0]) << "\n";
  std::cout << "theta2: " << to_string(g->witnesses[1]) << "\n";
  return kExitOk;
}

int cmd_query_virtuous(const std::string& file, const std::string& agent, long long n,
                       const CommonOpts& opts) {
  auto scn = load_scenario(file);
  if (!scn.ok()) {
    print_diagnostics(scn.diagnostics);
    return kExitDiagnostics;
  }
  Scenario adjusted = apply_overrides(std::move(*scn), opts.overrides);
  adjusted.queries.clear();
  adjusted.queries.push_back({ScenarioQuery::Kind::Virtuous, agent, Formula::atom("true"), n});
  RunResult result = run_pipeline(adjusted);
  const auto& q = result.queries.back();
  std::cout << (q.verdict ? "yes" : "no") << ": " << agent << " is "
            << (q.verdict ? "" : "not ") << n << "-virtuous\n";
  return kExitOk;
}

int cmd_query_virtue(const std::string& file, const std::string& trait_text, long long n,
                     const CommonOpts& opts) {
  auto scn = load_scenario(file);
  if (!scn.ok()) {
    print_diagnostics(scn.diagnostics);
    return kExitDiagnostics;
  }
  Scenario adjusted = apply_overrides(std::move(*scn), opts.overrides);
  auto tau = parse_formula(trait_text, adjusted.signature);
  if (!tau.ok()) {
    print_diagnostics(tau.diagnostics);
    return kExitDiagnostics;
  }
  adjusted.queries.clear();
  adjusted.queries.push_back({ScenarioQuery::Kind::Virtue, "", *tau, n});
  RunResult result = run_pipeline(adjusted);
  const auto& q = result.queries.back();
  std::cout << (q.verdict ? "yes" : "no") << ": trait held by " << q.count_restricted
            << " virtuous agent(s) (" << q.count_total << " total), threshold " << n << "\n";
  return kExitOk;
}

int cmd_parse(const std::string& file, const std::string& formula_text) {
  if (!formula_text.empty()) {
    Signature sig;
    Scenario scn;
    if (!file.empty()) {
      auto loaded = load_scenario(file);
      if (!loaded.ok()) {
        print_diagnostics(loaded.diagnostics);
        return kExitDiagnostics;
      }
      scn = std::move(*loaded);
      sig = scn.signature;
      auto f = parse_formula(formula_text, sig);
      if (!f.ok()) {
        print_diagnostics(f.diagnostics);
        return kExitDiagnostics;
      }
      std::cout << print_formula(*f) << "\n";
      return kExitOk;
    }
    auto f = parse_formula_permissive(formula_text, sig);
    if (!f.ok()) {
      print_diagnostics(f.diagnostics);
      return kExitDiagnostics;
    }
    std::cout << print_formula(*f) << "\n";
    return kExitOk;
  }
  auto scn = load_scenario(file);
  if (!scn.ok()) {
    print_diagnostics(scn.diagnostics);
    return kExitDiagnostics;
  }
  std::cout << print_scenario(*scn);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exemplar: event-calculus trait learning from admired exemplars"};
  app.require_subcommand(1);

  CommonOpts opts;

  auto* run = app.add_subcommand("run", "Run the full pipeline on scenario files");
  std::vector<std::string> run_files;
  run->add_option("files", run_files, "Scenario files (.scn)")->required();
  run->add_option("--jobs", opts.jobs, "Run files in parallel");
  add_common(run, opts);

  auto* prove = app.add_subcommand("prove", "Prove a goal against a scenario");
  std::string prove_file, prove_goal;
  prove->add_option("scenario", prove_file)->required();
  prove->add_option("--goal", prove_goal, "Goal formula")->required();
  add_common(prove, opts);

  auto* anti = app.add_subcommand("antiunify", "Least general generalization of two inputs");
  std::string anti_left, anti_right, anti_scn;
  anti->add_option("left", anti_left)->required();
  anti->add_option("right", anti_right)->required();
  anti->add_option("--scenario", anti_scn, "Signature source");

  auto* qvp = app.add_subcommand("query-virtuous", "Is the agent an n-virtuous person?");
  std::string qvp_file, qvp_agent;
  long long qvp_n = 1;
  qvp->add_option("scenario", qvp_file)->required();
  qvp->add_option("--agent", qvp_agent)->required();
  qvp->add_option("--n", qvp_n, "Virtuous-person threshold");
  add_common(qvp, opts, /*with_n=*/false);

  auto* qv = app.add_subcommand("query-virtue", "Is the trait an n-virtue?");
  std::string qv_file, qv_trait;
  long long qv_n = 1;
  qv->add_option("scenario", qv_file)->required();
  qv->add_option("--trait", qv_trait, "Trait formula in canonical ?self:Agent form")
      ->required();
  qv->add_option("--n", qv_n, "Virtue threshold");
  add_common(qv, opts, /*with_n=*/false);

  auto* parse = app.add_subcommand("parse", "Echo the canonical form");
  std::string parse_file, parse_formula_text;
  parse->add_option("scenario", parse_file);
  parse->add_option("--formula", parse_formula_text, "Parse a single formula");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(run_files, opts);
    if (prove->parsed()) return cmd_prove(prove_file, prove_goal, opts);
    if (anti->parsed()) return cmd_antiunify(anti_left, anti_right, anti_scn);
    if (qvp->parsed()) return cmd_query_virtuous(qvp_file, qvp_agent, qvp_n, opts);
    if (qv->parsed()) return cmd_query_virtue(qv_file, qv_trait, qv_n, opts);
    if (parse->parsed()) return cmd_parse(parse_file, parse_formula_text);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitOk;
}
