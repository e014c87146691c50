// Acceptance run: one PASS/FAIL line per criterion.
// Usage: acceptance <path to monadlaw cli>

#include <fmt/core.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <fstream>
#include <set>
#include <sstream>
#include <sys/wait.h>

#include "monadlaw/checker.hpp"
#include "monadlaw/error.hpp"
#include "monadlaw/registry.hpp"
#include "monadlaw/report.hpp"

using namespace monadlaw;

namespace {

// Wall-clock limits per criterion, in seconds.
constexpr double kLimit[9] = {0, 300, 300, 600, 60, 120, 300, 600, 60};

const std::vector<std::string> kTransformers = {"ExceptT(e=2)", "ReaderT(r=2)", "WriterT(Z2)", "StateT(s=2)"};

std::string cli_path;

const Registry& reg() {
  static const Registry r = Registry::builtin();
  return r;
}

// The base stack and the base with each transformer applied once on top.
std::vector<std::string> with_extensions(const std::string& base) {
  std::vector<std::string> out{base};
  for (const std::string& t : kTransformers) out.push_back(t + "." + base);
  return out;
}

std::vector<std::string> reader_stacks() {
  std::vector<std::string> out{"ReaderBase(r=2, Id)"};
  for (const std::string& t : kTransformers) out.push_back("ReaderBase(r=2, " + t + ".Id)");
  return out;
}

std::vector<std::string> writer_stacks() {
  std::vector<std::string> out = with_extensions("WriterT(Z2).Id");
  for (const std::string& s : with_extensions("WriterT(T2).Id")) out.push_back(s);
  return out;
}

struct Outcome {
  bool ok = true;
  std::vector<std::string> notes;
  std::size_t checks = 0;

  void fail(std::string why) {
    ok = false;
    if (notes.size() < 6) notes.push_back(std::move(why));
  }
};

std::string describe(const CheckReport& r) {
  return fmt::format("{} on {}: {} ({})", r.law, r.stack, verdict_name(r.verdict()), r.message.empty() ? mode_name(r.mode) : r.message);
}

// Runs the suites on the stacks; every report must be as expected and nothing skipped.
void run_suites(Outcome& o, const std::vector<std::string>& suites, const std::vector<std::string>& stacks,
                const std::function<void(const CheckReport&)>& extra = {}) {
  for (const std::string& st : stacks) {
    for (const std::string& s : suites) {
      SuiteRun run = run_suite(reg(), s, parse_stack(st), Budget{});
      for (const Skipped& k : run.skipped) o.fail(fmt::format("{} on {} skipped: {}", k.law, k.stack, k.reason));
      for (const CheckReport& r : run.reports) {
        ++o.checks;
        if (!r.as_expected()) o.fail(describe(r));
        if (extra) extra(r);
      }
    }
  }
}

void require_law(Outcome& o, const std::string& law, const std::string& stack) {
  CheckReport r = check_entry(reg().lookup(law), parse_stack(stack), Budget{});
  ++o.checks;
  if (r.verdict() != Verdict::Pass) o.fail(describe(r));
}

Outcome c1() {
  Outcome o;
  run_suites(o, {"exception-bind", "exception-catch", "exception-joint"}, with_extensions("ExceptT(e=2).Id"));
  return o;
}

Outcome c2() {
  Outcome o;
  run_suites(o, {"reader-core", "reader-consequences", "reader-ask"}, reader_stacks());
  return o;
}

Outcome c3() {
  Outcome o;
  run_suites(o, {"writer-mixmap", "writer-coherence", "writer-twostory"}, writer_stacks());
  for (const char* st : {"WriterT(Z2).Id", "WriterT(T2).Id"})
    for (const char* law : {"Shift-Shift", "RBnd-Bnd", "Steele-Assoc"}) require_law(o, law, st);
  return o;
}

CheckReport steele() {
  return check_entry(reg().lookup("Steele-UnitR"), parse_stack("WriterT(Z2).Id"), Budget{});
}

int run_cli(const std::string& args, std::string& out) {
  std::filesystem::path tmp = std::filesystem::temp_directory_path() / "monadlaw_acceptance_out.txt";
  std::string cmd = fmt::format("\"{}\" {} > \"{}\" 2>&1", cli_path, args, tmp.string());
  int rc = std::system(cmd.c_str());
  std::ifstream in(tmp);
  std::stringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

Outcome c4() {
  Outcome o;
  CheckReport r = steele();
  ++o.checks;
  if (r.status != Status::Fail || r.verdict() != Verdict::XFail) o.fail(describe(r));
  if (r.mode != Mode::Exhaustive) o.fail("not checked within the default budget");
  if (!r.counterexample) {
    o.fail("no counterexample");
    return o;
  }
  std::vector<Value> env;
  for (const Binding& b : r.counterexample->bindings) env.push_back(b.value);
  const LawEntry& e = reg().lookup("Steele-UnitR");
  TypedLaw t = typecheck_law(e.law, LawContext{parse_stack("WriterT(Z2).Id"), e.effect, e.types, Mutation::None});
  if (shrink_counterexample(t, env) != env) o.fail("counterexample is not shrunk");

  Reverification v = reverify_counterexample(reg(), r);
  if (!v.reproduced || !v.values_match) o.fail("library re-verification failed");

  if (cli_path.empty()) {
    o.fail("no CLI path given; explain not run");
    return o;
  }
  std::filesystem::path json = std::filesystem::temp_directory_path() / "monadlaw_acceptance_steele.json";
  std::string out;
  int rc = run_cli(fmt::format("check --law Steele-UnitR --stack \"WriterT(Z2).Id\" --json"), out);
  if (rc != 0) o.fail(fmt::format("check exited {}", rc));
  std::ofstream(json) << out;
  rc = run_cli(fmt::format("explain \"{}\"", json.string()), out);
  if (rc != 0 || out.find("re-verification OK") == std::string::npos)
    o.fail(fmt::format("explain exited {}: {}", rc, out));
  return o;
}

Outcome c5() {
  Outcome o;
  std::size_t sampled = 0;
  run_suites(o, {"state-core"}, with_extensions("StateT(s=2).Id"), [&](const CheckReport& r) {
    if (r.mode != Mode::Exhaustive) {
      ++sampled;
      o.fail(fmt::format("{} on {} not exhaustive (plan {})", r.law, r.stack,
                         r.planned ? std::to_string(*r.planned) : "2^64+"));
    }
  });
  for (const std::string& st : with_extensions("StateT(s=2).Id"))
    for (const char* law : {"Get-UnitR", "State-RPoint-UnitHom", "State-RPoint-BndHom"}) require_law(o, law, st);
  if (sampled) o.notes.push_back(fmt::format("{} state-core checks were sampled", sampled));
  return o;
}

Outcome c6() {
  Outcome o;
  struct Case {
    Mutation m;
    std::vector<std::string> suites;
    std::string stack;
  };
  const Case cases[] = {
      {Mutation::WriterBindDropsLog, {"writer-mixmap", "writer-coherence", "writer-twostory"}, "WriterT(Z2).Id"},
      {Mutation::PutIgnoresArg, {"state-core"}, "StateT(s=2).Id"},
      {Mutation::CatchNeverHandles, {"exception-catch"}, "ExceptT(e=2).Id"},
  };
  for (const Case& c : cases) {
    std::size_t caught = 0;
    for (const std::string& s : c.suites) {
      SuiteRun run = run_suite(reg(), s, parse_stack(c.stack), Budget{}, {}, c.m);
      for (const CheckReport& r : run.reports) {
        ++o.checks;
        if (r.expectation != Expectation::Holds || r.status != Status::Fail || !r.counterexample) continue;
        Reverification v = reverify_counterexample(reg(), r, c.m);
        if (v.reproduced && v.values_match) ++caught;
      }
    }
    if (!caught) o.fail(fmt::format("mutant {} not caught", mutation_name(c.m)));
    else o.notes.push_back(fmt::format("{}: {}", mutation_name(c.m), caught));
  }
  return o;
}

Outcome c7() {
  Outcome o;
  std::vector<std::string> stacks;
  std::set<std::string> seen;
  auto add = [&](const std::vector<std::string>& v) {
    for (const std::string& s : v)
      if (seen.insert(parse_stack(s).to_string()).second) stacks.push_back(s);
  };
  add(with_extensions("ExceptT(e=2).Id"));
  add(reader_stacks());
  add(writer_stacks());
  add(with_extensions("StateT(s=2).Id"));

  Budget assoc;
  assoc.max_instances = 100000;
  assoc.sample_size = 100000;
  assoc.seed = 0;
  for (const std::string& st : stacks) {
    for (const LawEntry* e : reg().laws("monad-core")) {
      CheckReport r = check_entry(*e, parse_stack(st), e->name == "Monad-Assoc" ? assoc : Budget{});
      ++o.checks;
      if (r.verdict() != Verdict::Pass) o.fail(describe(r));
    }
  }
  o.notes.push_back(fmt::format("{} stacks", stacks.size()));
  return o;
}

Outcome c8() {
  Outcome o;
  std::string a = report_to_json(steele()).dump(2);
  std::string b = report_to_json(steele()).dump(2);
  ++o.checks;
  if (a != b) o.fail("reports differ");
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) cli_path = argv[1];
  using Fn = Outcome (*)();
  const Fn criteria[] = {nullptr, c1, c2, c3, c4, c5, c6, c7, c8};
  bool all = true;
  for (int i = 1; i <= 8; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > kLimit[i]) o.fail(fmt::format("took {:.1f}s, limit {:.0f}s", secs, kLimit[i]));
    all &= o.ok;
    std::string notes;
    for (const std::string& n : o.notes) notes += "; " + n;
    fmt::print("criterion {}: {} ({} checks, {:.1f}s of {:.0f}s{})\n", i, o.ok ? "PASS" : "FAIL", o.checks, secs,
               kLimit[i], notes);
    std::fflush(stdout);
  }
  return all ? 0 : 1;
}
