// monadlaw: check monad-transformer laws on finite models.

#include <fmt/core.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "monadlaw/checker.hpp"
#include "monadlaw/error.hpp"
#include "monadlaw/monoid.hpp"
#include "monadlaw/registry.hpp"
#include "monadlaw/report.hpp"

using namespace monadlaw;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitConfig = 2;

struct Options {
  std::string stack;
  std::vector<std::string> suites;
  std::vector<std::string> laws;
  std::vector<std::string> types;
  std::vector<std::string> laws_dirs;
  Budget budget;
  bool json = false;
  std::string mutant;
  std::string what;    // list subject
  std::string report;  // explain input
};

Registry load_registry(const Options& o) {
  Registry reg = Registry::builtin();
  for (const std::string& d : o.laws_dirs) reg.load_dir(d);
  return reg;
}

Mutation mutation_of(const Options& o) {
  if (o.mutant.empty()) return Mutation::None;
  auto m = parse_mutation(o.mutant);
  if (!m) throw ConfigError("unknown mutant '" + o.mutant + "'");
  return *m;
}

std::map<std::string, FinType> type_overrides(const Options& o) {
  std::map<std::string, FinType> out;
  for (const std::string& t : o.types)
    for (auto& [k, v] : parse_type_assignment(t)) out[k] = v;
  return out;
}

std::string plan_text(const CheckReport& r) {
  if (r.mode == Mode::Exhaustive) return fmt::format("{}/{}", r.instances_checked, *r.planned);
  return fmt::format("{} of {}", r.instances_checked, r.planned ? std::to_string(*r.planned) : "2^64+");
}

void print_counterexample(const Counterexample& c) {
  std::size_t w = 3;
  for (const Binding& b : c.bindings) w = std::max(w, b.name.size());
  for (const Binding& b : c.bindings) fmt::print("    {:<{}} = {}    : {}\n", b.name, w, b.value.to_string(), b.type);
  fmt::print("    {:<{}} = {}\n", "lhs", w, c.lhs.to_string());
  fmt::print("    {:<{}} = {}\n", "rhs", w, c.rhs.to_string());
}

void print_report(const CheckReport& r) {
  std::string tail = r.failures ? fmt::format(", {} failing", r.failures) : "";
  if (r.mutation != Mutation::None) tail += fmt::format(" [mutant {}]", mutation_name(r.mutation));
  fmt::print("{:<6} {:<24} {:<32} {} {}{}\n", verdict_name(r.verdict()), r.law, r.stack, mode_name(r.mode),
             plan_text(r), tail);
  if (r.status == Status::Error) fmt::print("    {}\n", r.message);
  if (r.counterexample) print_counterexample(*r.counterexample);
}

void print_summary(const Summary& s) {
  fmt::print("{} checked: {} pass, {} fail, {} xfail, {} xpass, {} report, {} error; {} skipped; {} unexpected\n",
             s.total, s.pass, s.fail, s.xfail, s.xpass, s.report, s.error, s.skipped, s.unexpected());
}

std::vector<StackSpec> stacks_for(const Options& o, const SuiteInfo& s) {
  std::vector<StackSpec> out;
  if (!o.stack.empty()) {
    out.push_back(parse_stack(o.stack));
  } else {
    for (const std::string& t : s.stacks) out.push_back(parse_stack(t));
    if (out.empty()) throw ConfigError("suite " + s.name + " has no default stack; pass --stack");
  }
  return out;
}

int cmd_check(const Options& o) {
  Registry reg = load_registry(o);
  auto overrides = type_overrides(o);
  Mutation mutation = mutation_of(o);
  if (!o.stack.empty()) parse_stack(o.stack);

  std::vector<CheckReport> reports;
  std::vector<Skipped> skipped;
  std::vector<std::string> suites = o.suites;
  if (suites.empty() && o.laws.empty())
    for (const SuiteInfo& s : reg.suites()) suites.push_back(s.name);

  for (const std::string& name : suites) {
    const SuiteInfo& s = reg.suite(name);
    for (const StackSpec& st : stacks_for(o, s)) {
      SuiteRun run = run_suite(reg, s.name, st, o.budget, overrides, mutation);
      for (CheckReport& r : run.reports) reports.push_back(std::move(r));
      for (Skipped& k : run.skipped) skipped.push_back(std::move(k));
    }
  }
  for (const std::string& name : o.laws) {
    const LawEntry& e = reg.lookup(name);
    for (const StackSpec& st : stacks_for(o, reg.suite(e.suite)))
      reports.push_back(check_entry(e, st, o.budget, overrides, mutation));
  }

  Summary sum = summarize(reports, skipped.size());
  if (o.json) {
    fmt::print("{}\n", run_to_json(reports, skipped).dump(2));
  } else {
    for (const CheckReport& r : reports) print_report(r);
    for (const Skipped& k : skipped) fmt::print("SKIP   {:<24} {:<32} {}\n", k.law, k.stack, k.reason);
    print_summary(sum);
  }
  return sum.unexpected() ? kExitUnexpected : kExitOk;
}

int cmd_list(const Options& o) {
  if (o.what == "suites") {
    Registry reg = load_registry(o);
    for (const SuiteInfo& s : reg.suites()) {
      std::string stacks;
      for (const std::string& t : s.stacks) stacks += (stacks.empty() ? "" : "; ") + t;
      fmt::print("{:<20} {:>3} laws  {:<9}  {}\n", s.name, s.laws.size(), effect_name(s.effect), stacks);
    }
  } else if (o.what == "laws") {
    Registry reg = load_registry(o);
    std::vector<const LawEntry*> laws;
    if (o.suites.empty()) {
      laws = reg.laws();
    } else {
      for (const std::string& s : o.suites)
        for (const LawEntry* e : reg.laws(s)) laws.push_back(e);
    }
    for (const LawEntry* e : laws)
      fmt::print("{:<24} {:<20} {:<11} {}\n", e->name, e->suite, expectation_name(e->expectation), e->citation);
  } else if (o.what == "monoids") {
    for (const MonoidSpec* m : builtin_monoids()) fmt::print("{}\n", m->describe());
  } else if (o.what == "stacks") {
    fmt::print("{}", stack_grammar_help());
  } else {
    throw ConfigError("list what? (suites, laws, monoids, stacks)");
  }
  return kExitOk;
}

int cmd_explain(const Options& o) {
  std::ifstream in(o.report);
  if (!in) throw ConfigError("cannot read report " + o.report);
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("report " + o.report + " is not valid JSON: " + e.what());
  }
  std::vector<CheckReport> reports;
  if (doc.is_object() && doc.contains("reports")) {
    for (const Json& j : doc.at("reports")) reports.push_back(report_from_json(j));
  } else {
    reports.push_back(report_from_json(doc));
  }
  if (!o.laws.empty()) {
    std::erase_if(reports, [&](const CheckReport& r) {
      return std::find(o.laws.begin(), o.laws.end(), r.law) == o.laws.end();
    });
    if (reports.empty()) throw ConfigError("report has no entry for the requested law");
  }

  Registry reg = load_registry(o);
  Mutation mutation = mutation_of(o);
  bool all_ok = true;
  for (const CheckReport& r : reports) {
    print_report(r);
    fmt::print("    expectation {}, seed {}, types", expectation_name(r.expectation), r.seed);
    for (const auto& [k, v] : r.types) fmt::print(" {}={}", k, v);
    fmt::print("\n");
    if (!r.counterexample) continue;
    Reverification v = reverify_counterexample(reg, r, mutation);
    if (!v.reproduced) {
      all_ok = false;
      fmt::print("    WARNING: counterexample no longer reproduces (both sides = {})\n", v.lhs.to_string());
    } else if (!v.values_match) {
      fmt::print("    re-verification OK, but side values changed:\n    lhs = {}\n    rhs = {}\n",
                 v.lhs.to_string(), v.rhs.to_string());
    } else {
      fmt::print("    re-verification OK\n");
    }
  }
  return all_ok ? kExitOk : kExitUnexpected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-model checker for monad-transformer laws"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--laws-dir", o.laws_dirs, "Extra directory of .law files")->envname("MONADLAW_LAWS_DIR");
    cmd->add_option("--mutant", o.mutant, "Mutated semantics")->group("");
  };

  CLI::App* check = app.add_subcommand("check", "Check laws on a stack");
  check->add_option("--stack", o.stack, "Stack, e.g. \"WriterT(Z2).Id\" (default: each suite's stacks)");
  check->add_option("--suite", o.suites, "Suite to run (repeatable)");
  check->add_option("--law", o.laws, "Single law to run (repeatable)");
  check->add_option("--type", o.types, "Type size, e.g. X=3 or X'=Unit (repeatable)");
  check->add_option("--budget", o.budget.max_instances, "Largest instance count checked exhaustively");
  check->add_option("--sample", o.budget.sample_size, "Sample size above the budget");
  check->add_option("--seed", o.budget.seed, "Sampling seed");
  check->add_flag("--json", o.json, "Emit the JSON report document");
  check->add_flag("--single-threaded", o.budget.single_threaded, "Evaluate on one thread");
  add_common(check);

  CLI::App* list = app.add_subcommand("list", "List suites, laws, monoids or the stack grammar");
  list->add_option("what", o.what, "suites | laws | monoids | stacks")->required();
  list->add_option("--suite", o.suites, "Restrict `list laws` to a suite");
  add_common(list);

  CLI::App* explain = app.add_subcommand("explain", "Re-verify the counterexamples of a JSON report");
  explain->add_option("report", o.report, "Report file written by `check --json`")->required();
  explain->add_option("--law", o.laws, "Only this law (repeatable)");
  add_common(explain);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*check) return cmd_check(o);
    if (*list) return cmd_list(o);
    if (*explain) return cmd_explain(o);
  } catch (const InvariantViolation& e) {
    fmt::print(stderr, "internal error: {}\n", e.what());
    return kExitUnexpected;
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
