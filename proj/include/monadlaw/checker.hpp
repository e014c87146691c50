#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "monadlaw/registry.hpp"
#include "monadlaw/typed_law.hpp"

namespace monadlaw {

struct Budget {
  std::uint64_t max_instances = 1'000'000;
  std::uint64_t sample_size = 100'000;
  std::uint64_t seed = 0;
  bool single_threaded = false;
};

enum class Mode { Exhaustive, Sampled };
enum class Status { Pass, Fail, Error };
enum class Verdict { Pass, Fail, XFail, XPass, Report, Error };

const char* mode_name(Mode m);
const char* status_name(Status s);
const char* verdict_name(Verdict v);

struct Binding {
  std::string name;
  std::string type;  // surface type of the binder
  Value value;
};

struct Counterexample {
  std::vector<Binding> bindings;  // ambient input last
  Value lhs, rhs;
};

struct CheckReport {
  std::string law;
  std::string suite;
  Expectation expectation = Expectation::Holds;
  std::string stack;
  EffectKind effect = EffectKind::None;
  std::map<std::string, std::string> types;  // type name -> FinType text
  Mode mode = Mode::Exhaustive;
  std::optional<std::uint64_t> planned;  // nullopt when the count overflows
  std::uint64_t instances_checked = 0;
  std::uint64_t failures = 0;
  Status status = Status::Pass;
  std::uint64_t seed = 0;
  std::optional<Counterexample> counterexample;
  Mutation mutation = Mutation::None;
  std::string message;

  Verdict verdict() const;
  // PASS, XFAIL and REPORT are expected outcomes.
  bool as_expected() const;
};

// Product of binder domain sizes; nullopt when it overflows.
std::optional<std::uint64_t> plan_instances(const TypedLaw& t);

// Exhaustive when the plan fits the budget, sampled otherwise. The
// counterexample is the least failing instance (canonical order, or draw
// order when sampling), then shrunk.
CheckReport check_law(const TypedLaw& t, const Budget& b);

// Greedily lowers binder values in canonical order while both sides still
// differ. Returns the input when nothing smaller fails.
std::vector<Value> shrink_counterexample(const TypedLaw& t, std::vector<Value> env);

// Typechecks a registry law on a stack and checks it. Type overrides win
// over the law's own @types. Throws TypeError / ConfigError.
CheckReport check_entry(const LawEntry& e, const StackSpec& stack, const Budget& b,
                        const std::map<std::string, FinType>& overrides = {},
                        Mutation mutation = Mutation::None);

struct Skipped {
  std::string law;
  std::string stack;
  std::string reason;
};

struct SuiteRun {
  std::vector<CheckReport> reports;
  std::vector<Skipped> skipped;
};

// Laws that need a primitive the stack lacks are skipped with a notice.
SuiteRun run_suite(const Registry& reg, const std::string& suite, const StackSpec& stack,
                   const Budget& b, const std::map<std::string, FinType>& overrides = {},
                   Mutation mutation = Mutation::None);

struct Reverification {
  bool reproduced = false;    // the two sides still differ
  bool values_match = false;  // and equal the recorded side values
  Value lhs, rhs;
};

// Re-typechecks the report's law on its stack and re-evaluates the recorded
// counterexample. The report's own mutant is not applied; pass one to
// reproduce a mutated run. Throws ConfigError when the report has no
// counterexample or does not fit the law.
Reverification reverify_counterexample(const Registry& reg, const CheckReport& r,
                                       Mutation mutation = Mutation::None);

// "Unit", "Enum(n)" or a bare positive count.
FinType parse_assigned_type(std::string_view text);

// Seeded counter-based generator: splitmix64 over (seed, instance, binder, draw).
std::uint64_t sample_word(std::uint64_t seed, std::uint64_t instance, std::uint64_t binder,
                          std::uint64_t draw);

}  // namespace monadlaw
