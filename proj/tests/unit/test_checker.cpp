#include <doctest.h>

#include "monadlaw/checker.hpp"
#include "monadlaw/error.hpp"
#include "monadlaw/registry.hpp"
#include "monadlaw/report.hpp"
#include "monadlaw/typed_law.hpp"

using namespace monadlaw;

namespace {

const Registry& reg() {
  static const Registry r = Registry::builtin();
  return r;
}

TypedLaw typed(const char* law, const char* stack, std::map<std::string, FinType> types = {},
               Mutation m = Mutation::None) {
  const LawEntry& e = reg().lookup(law);
  for (auto& [k, v] : e.types) types.try_emplace(k, v);
  return typecheck_law(e.law, LawContext{parse_stack(stack), e.effect, types, m});
}

Value V(const char* s) { return Value::parse(s); }

}  // namespace

TEST_CASE("instance plans") {
  CHECK(plan_instances(typed("Fuse-Shift", "WriterT(Z2).Id")) == 4u);
  CHECK(plan_instances(typed("App-Rdr", "ReaderBase(r=2, Id)")) == 4u);
  CHECK(plan_instances(typed("Put-Put", "StateT(s=2).Id")) == 4u);
  CHECK(plan_instances(typed("Get-Put", "StateT(s=2).Id")) == 1u);
  // k: S -> S -> M X with |M X| = |S -> X * S| = 16
  CHECK(plan_instances(typed("Get-Get", "StateT(s=2).Id")) == 65536u);
}

TEST_CASE("unavailable primitives") {
  const LawEntry& e = reg().lookup("Put-Put");
  CHECK_THROWS_AS(typecheck_law(e.law, LawContext{parse_stack("WriterT(Z2).Id"), e.effect, {}, Mutation::None}),
                  UnavailablePrimitive);
  try {
    typecheck_law(e.law, LawContext{parse_stack("WriterT(Z2).Id"), e.effect, {}, Mutation::None});
  } catch (const UnavailablePrimitive& u) {
    CHECK(std::string(u.what()).find("primitive put unavailable") == 0);
  }
  const LawEntry& a = reg().lookup("App-Rdr");
  CHECK_THROWS_AS(typecheck_law(a.law, LawContext{parse_stack("ReaderT(r=2).Id"), a.effect, {}, Mutation::None}),
                  UnavailablePrimitive);
}

TEST_CASE("side values") {
  TypedLaw pp = typed("Put-Put", "StateT(s=2).Id");
  std::vector<Value> env{Value::elem(0), Value::elem(1)};
  CHECK(pp.eval_side(Side::Lhs, env) == V("Table[Pair(Star, Elem 1), Pair(Star, Elem 1)]"));
  TypedLaw gp = typed("Get-Put", "StateT(s=2).Id");
  CHECK(gp.eval_side(Side::Rhs, {}) == V("Table[Pair(Star, Elem 0), Pair(Star, Elem 1)]"));
  // repeated evaluation is stable
  CHECK(pp.eval_side(Side::Lhs, env) == pp.eval_side(Side::Lhs, env));
}

TEST_CASE("overriding fixed type names is a config error") {
  CHECK_THROWS_AS(typed("Put-Put", "StateT(s=2).Id", {{"S", FinType::unit()}}), ConfigError);
}

// Independent model of Steele-UnitR on WriterT(Z2).Id with X = X' = Unit.
// J Unit and M Unit are both Unit * Z2, so h is a pair of logs (h0, h1) and
// the input is a log w. lhs = (*, w + h0), rhs = (*, h_w).
TEST_CASE("Steele-UnitR oracle") {
  int oracle_failures = 0;
  for (int h0 = 0; h0 < 2; ++h0)
    for (int h1 = 0; h1 < 2; ++h1)
      for (int w = 0; w < 2; ++w) oracle_failures += ((w + h0) % 2) != (w ? h1 : h0);

  TypedLaw t = typed("Steele-UnitR", "WriterT(Z2).Id");
  CHECK(plan_instances(t) == 8u);
  CheckReport r = check_law(t, Budget{});
  CHECK(r.mode == Mode::Exhaustive);
  CHECK(r.instances_checked == 8);
  CHECK(r.failures == static_cast<std::uint64_t>(oracle_failures));
  CHECK(r.failures == 2);
  CHECK(r.status == Status::Fail);
  REQUIRE(r.counterexample);
  const Counterexample& c = *r.counterexample;
  REQUIRE(c.bindings.size() == 2);
  CHECK(c.bindings[0].name == "h");
  CHECK(c.bindings[0].value == V("Table[Pair(Star, Elem 0), Pair(Star, Elem 0)]"));
  CHECK(c.bindings[1].value == V("Pair(Star, Elem 1)"));
  CHECK(c.lhs == V("Pair(Star, Elem 1)"));
  CHECK(c.rhs == V("Pair(Star, Elem 0)"));

  std::vector<Value> env{c.bindings[0].value, c.bindings[1].value};
  CHECK(shrink_counterexample(t, env) == env);
}

TEST_CASE("shrinking lowers binder values") {
  TypedLaw t = typed("Steele-UnitR", "WriterT(Z2).Id");
  std::vector<Value> env{V("Table[Pair(Star, Elem 0), Pair(Star, Elem 0)]"), V("Pair(Star, Elem 1)")};
  std::vector<Value> big{V("Table[Pair(Star, Elem 1), Pair(Star, Elem 1)]"), V("Pair(Star, Elem 1)")};
  REQUIRE(t.eval_side(Side::Lhs, big) != t.eval_side(Side::Rhs, big));
  std::vector<Value> s = shrink_counterexample(t, big);
  CHECK(t.eval_side(Side::Lhs, s) != t.eval_side(Side::Rhs, s));
  CHECK(s == env);
}

TEST_CASE("verdicts") {
  CheckReport r;
  r.expectation = Expectation::Refuted;
  r.status = Status::Fail;
  CHECK(r.verdict() == Verdict::XFail);
  CHECK(r.as_expected());
  r.status = Status::Pass;
  CHECK(r.verdict() == Verdict::XPass);
  CHECK_FALSE(r.as_expected());
  r.expectation = Expectation::ReportOnly;
  CHECK(r.verdict() == Verdict::Report);
  CHECK(r.as_expected());
  r.expectation = Expectation::Holds;
  r.status = Status::Error;
  CHECK(r.verdict() == Verdict::Error);
  CHECK_FALSE(r.as_expected());
}

TEST_CASE("sampling") {
  CHECK(sample_word(0, 0, 0, 0) == sample_word(0, 0, 0, 0));
  CHECK(sample_word(0, 0, 0, 0) != sample_word(1, 0, 0, 0));
  CHECK(sample_word(0, 1, 0, 0) != sample_word(0, 0, 1, 0));

  const LawEntry& e = reg().lookup("Monad-Assoc");
  Budget b;
  b.max_instances = 100;
  b.sample_size = 3000;
  CheckReport r = check_entry(e, parse_stack("WriterT(T2).Id"), b);
  CHECK(r.mode == Mode::Sampled);
  CHECK(r.instances_checked == 3000);
  CHECK(r.status == Status::Pass);
}

TEST_CASE("reports do not depend on threading") {
  Budget b;
  b.max_instances = 100;
  b.sample_size = 5000;
  b.seed = 7;
  const LawEntry& e = reg().lookup("Steele-UnitR");
  std::map<std::string, FinType> ov{{"X", FinType::enumeration(2)}};
  b.single_threaded = true;
  std::string one = report_to_json(check_entry(e, parse_stack("WriterT(T2).Id"), b, ov)).dump();
  b.single_threaded = false;
  std::string many = report_to_json(check_entry(e, parse_stack("WriterT(T2).Id"), b, ov)).dump();
  CHECK(one == many);

  CheckReport ex = check_entry(reg().lookup("Steele-UnitR"), parse_stack("WriterT(Z2).Id"), Budget{});
  CHECK(report_from_json(report_to_json(ex)).counterexample->lhs == ex.counterexample->lhs);
  CHECK(report_to_json(report_from_json(report_to_json(ex))).dump() == report_to_json(ex).dump());
}

TEST_CASE("suites hold on their default stacks") {
  for (const char* s : {"exception-bind", "exception-catch", "state-core", "state-derived", "reader-ask",
                        "writer-coherence"}) {
    const SuiteInfo& info = reg().suite(s);
    for (const std::string& st : info.stacks) {
      SuiteRun run = run_suite(reg(), s, parse_stack(st), Budget{});
      CHECK(run.skipped.empty());
      for (const CheckReport& r : run.reports) {
        CAPTURE(r.law);
        CAPTURE(r.stack);
        CHECK(r.as_expected());
      }
    }
  }
}

TEST_CASE("mutants are caught with reproducible counterexamples") {
  struct Case {
    Mutation m;
    const char* suite;
    const char* stack;
    const char* law;  // one law known to break
  };
  const Case cases[] = {
      {Mutation::WriterBindDropsLog, "writer-twostory", "WriterT(Z2).Id", "RBnd-UnitL"},
      {Mutation::PutIgnoresArg, "state-core", "StateT(s=2).Id", "Put-Get"},
      {Mutation::CatchNeverHandles, "exception-catch", "ExceptT(e=2).Id", "Catch-RaiseL"},
  };
  for (const Case& c : cases) {
    CAPTURE(mutation_name(c.m));
    SuiteRun run = run_suite(reg(), c.suite, parse_stack(c.stack), Budget{}, {}, c.m);
    bool found = false;
    for (const CheckReport& r : run.reports) {
      if (r.expectation != Expectation::Holds || r.status != Status::Fail) continue;
      found |= r.law == c.law;
      REQUIRE(r.counterexample);
      Reverification v = reverify_counterexample(reg(), r, c.m);
      CHECK(v.reproduced);
      CHECK(v.values_match);
      // Under the correct semantics the instance is no longer a counterexample.
      CHECK_FALSE(reverify_counterexample(reg(), r).reproduced);
    }
    CHECK(found);
  }
}
