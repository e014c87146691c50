#include "monadlaw/checker.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <functional>
#include <mutex>
#include <span>
#include <thread>

#include "monadlaw/error.hpp"

namespace monadlaw {

const char* mode_name(Mode m) { return m == Mode::Exhaustive ? "exhaustive" : "sampled"; }

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass:
      return "pass";
    case Status::Fail:
      return "fail";
    case Status::Error:
      return "error";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "PASS";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::XFail:
      return "XFAIL";
    case Verdict::XPass:
      return "XPASS";
    case Verdict::Report:
      return "REPORT";
    case Verdict::Error:
      return "ERROR";
  }
  return "?";
}

Verdict CheckReport::verdict() const {
  if (status == Status::Error) return Verdict::Error;
  switch (expectation) {
    case Expectation::Holds:
      return status == Status::Pass ? Verdict::Pass : Verdict::Fail;
    case Expectation::Refuted:
      return status == Status::Fail ? Verdict::XFail : Verdict::XPass;
    case Expectation::ReportOnly:
      return Verdict::Report;
  }
  return Verdict::Error;
}

bool CheckReport::as_expected() const {
  Verdict v = verdict();
  return v == Verdict::Pass || v == Verdict::XFail || v == Verdict::Report;
}

FinType parse_assigned_type(std::string_view text) {
  if (text == "Unit") return FinType::unit();
  std::string_view digits = text;
  if (digits.starts_with("Enum(") && digits.ends_with(")")) digits = digits.substr(5, digits.size() - 6);
  std::uint32_t n = 0;
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || n == 0)
    throw ConfigError("bad type '" + std::string(text) + "' (expected Unit, Enum(n) or a positive count)");
  return FinType::enumeration(n);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t sample_word(std::uint64_t seed, std::uint64_t instance, std::uint64_t binder,
                          std::uint64_t draw) {
  return splitmix64(splitmix64(splitmix64(splitmix64(seed) ^ instance) ^ binder) ^ draw);
}

std::optional<std::uint64_t> plan_instances(const TypedLaw& t) { return t.plan(); }

namespace {

// Draws for one (instance, binder) pair.
struct Draws {
  std::uint64_t seed, instance, binder, next = 0;

  std::uint64_t word() { return sample_word(seed, instance, binder, next++); }
  // Unbiased: reject words below 2^64 mod n.
  std::uint64_t below(std::uint64_t n) {
    std::uint64_t threshold = (0 - n) % n;
    while (true) {
      std::uint64_t x = word();
      if (x >= threshold) return x % n;
    }
  }
  double unit_interval() { return static_cast<double>(word() >> 11) * 0x1.0p-53; }
};

double log_cardinality(const FinType& t) {
  switch (t.kind()) {
    case FinType::Kind::Unit:
      return 0;
    case FinType::Kind::Enum:
      return std::log(static_cast<double>(t.enum_size()));
    case FinType::Kind::Sum: {
      double a = log_cardinality(t.left()), b = log_cardinality(t.right());
      double hi = std::max(a, b);
      return hi + std::log(std::exp(a - hi) + std::exp(b - hi));
    }
    case FinType::Kind::Prod:
      return log_cardinality(t.first()) + log_cardinality(t.second());
    case FinType::Kind::Fn:
      return static_cast<double>(t.dom().checked_cardinality()) * log_cardinality(t.cod());
  }
  return 0;
}

// Uniform value of a type, componentwise when the index space overflows.
Value random_value(const FinType& t, Draws& d) {
  if (auto n = t.cardinality()) return value_at(t, d.below(*n));
  switch (t.kind()) {
    case FinType::Kind::Sum: {
      double a = log_cardinality(t.left()), b = log_cardinality(t.right());
      double p_left = 1.0 / (1.0 + std::exp(b - a));
      if (d.unit_interval() < p_left) return Value::inl(random_value(t.left(), d));
      return Value::inr(random_value(t.right(), d));
    }
    case FinType::Kind::Prod: {
      Value a = random_value(t.first(), d);
      return Value::pair(std::move(a), random_value(t.second(), d));
    }
    case FinType::Kind::Fn: {
      std::vector<Value> es;
      std::uint64_t n = t.dom().checked_cardinality();
      es.reserve(n);
      for (std::uint64_t i = 0; i < n; ++i) es.push_back(random_value(t.cod(), d));
      return Value::table(std::move(es));
    }
    default:
      throw InvariantViolation("unexpected overflow in " + t.to_string());
  }
}

Value min_value(const FinType& t) {
  switch (t.kind()) {
    case FinType::Kind::Unit:
      return Value::star();
    case FinType::Kind::Enum:
      return Value::elem(0);
    case FinType::Kind::Sum:
      return Value::inl(min_value(t.left()));
    case FinType::Kind::Prod:
      return Value::pair(min_value(t.first()), min_value(t.second()));
    case FinType::Kind::Fn:
      return Value::table(std::vector<Value>(t.dom().checked_cardinality(), min_value(t.cod())));
  }
  return Value::star();
}

constexpr std::size_t kMaxCandidates = 4096;
constexpr std::uint64_t kSmallIndex = 256;
constexpr std::uint64_t kShrinkEvals = 20000;

// Values of t strictly below v in canonical order, obtained by lowering one component.
void lower(const Value& v, const FinType& t, std::vector<Value>& out, std::size_t limit) {
  if (out.size() >= limit) return;
  switch (t.kind()) {
    case FinType::Kind::Unit:
      return;
    case FinType::Kind::Enum:
      for (std::uint32_t i = 0; i < v.index() && out.size() < limit; ++i) out.push_back(Value::elem(i));
      return;
    case FinType::Kind::Sum: {
      std::vector<Value> inner;
      if (v.kind() == Value::Kind::InR) {
        out.push_back(Value::inl(min_value(t.left())));
        lower(v.payload(), t.right(), inner, limit);
        for (Value& x : inner) out.push_back(Value::inr(std::move(x)));
      } else {
        lower(v.payload(), t.left(), inner, limit);
        for (Value& x : inner) out.push_back(Value::inl(std::move(x)));
      }
      return;
    }
    case FinType::Kind::Prod: {
      std::vector<Value> inner;
      lower(v.first(), t.first(), inner, limit);
      for (Value& x : inner) out.push_back(Value::pair(std::move(x), v.second()));
      inner.clear();
      lower(v.second(), t.second(), inner, limit);
      for (Value& x : inner) out.push_back(Value::pair(v.first(), std::move(x)));
      return;
    }
    case FinType::Kind::Fn: {
      std::span<const Value> es = v.entries();
      for (std::size_t i = 0; i < es.size() && out.size() < limit; ++i) {
        std::vector<Value> inner;
        lower(es[i], t.cod(), inner, 4);
        for (Value& x : inner) {
          std::vector<Value> copy(es.begin(), es.end());
          copy[i] = std::move(x);
          out.push_back(Value::table(std::move(copy)));
        }
      }
      return;
    }
  }
}

std::vector<Value> shrink_candidates(const Domain& d, const Value& v) {
  std::vector<Value> out;
  if (d.listed) {
    for (const Value& x : *d.listed) {
      if (x == v) break;
      out.push_back(x);
    }
    return out;
  }
  if (d.type.cardinality()) {
    std::uint64_t idx = index_of(v, d.type);
    if (idx <= kSmallIndex) {
      for (std::uint64_t i = 0; i < idx; ++i) out.push_back(value_at(d.type, i));
      return out;
    }
  }
  Value m = min_value(d.type);
  if (!(m == v)) out.push_back(std::move(m));
  lower(v, d.type, out, kMaxCandidates);
  return out;
}

struct Scan {
  std::uint64_t failures = 0;
  std::optional<std::uint64_t> first_fail;
  std::optional<std::uint64_t> error_at;
  std::string error;
};

// Runs test(i) for i in [0, n); the reduction keeps the least failing index.
Scan scan(std::uint64_t n, bool single_threaded, const std::function<bool(std::uint64_t)>& test) {
  constexpr std::uint64_t kChunk = 1024;
  std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  unsigned threads = single_threaded ? 1 : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, std::max<std::uint64_t>(chunks, 1)));

  Scan total;
  std::mutex mu;
  std::atomic<std::uint64_t> next{0};
  std::atomic<bool> stop{false};
  auto worker = [&] {
    Scan local;
    while (!stop.load(std::memory_order_relaxed)) {
      std::uint64_t c = next.fetch_add(1);
      if (c >= chunks) break;
      std::uint64_t end = std::min(n, (c + 1) * kChunk);
      for (std::uint64_t i = c * kChunk; i < end; ++i) {
        try {
          if (test(i)) {
            ++local.failures;
            if (!local.first_fail || i < *local.first_fail) local.first_fail = i;
          }
        } catch (const std::exception& e) {
          if (!local.error_at || i < *local.error_at) {
            local.error_at = i;
            local.error = e.what();
          }
          stop = true;
          break;
        }
      }
    }
    std::lock_guard<std::mutex> lock(mu);
    total.failures += local.failures;
    if (local.first_fail && (!total.first_fail || *local.first_fail < *total.first_fail))
      total.first_fail = local.first_fail;
    if (local.error_at && (!total.error_at || *local.error_at < *total.error_at)) {
      total.error_at = local.error_at;
      total.error = local.error;
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  return total;
}

bool sides_differ(const TypedLaw& t, const std::vector<Value>& env, Value* lhs = nullptr, Value* rhs = nullptr) {
  Value l = t.eval_side(Side::Lhs, env);
  Value r = t.eval_side(Side::Rhs, env);
#ifndef NDEBUG
  if (!well_typed(l, t.compared_type()) || !well_typed(r, t.compared_type()))
    throw InvariantViolation("evaluation left the type " + t.compared_type().to_string());
#endif
  bool differ = !(l == r);
  if (lhs) *lhs = std::move(l);
  if (rhs) *rhs = std::move(r);
  return differ;
}

}  // namespace

std::vector<Value> shrink_counterexample(const TypedLaw& t, std::vector<Value> env) {
  const auto& binders = t.binders();
  std::uint64_t evals = 0;
  auto still_fails = [&](const std::vector<Value>& e) {
    ++evals;
    try {
      return sides_differ(t, e);
    } catch (const Error&) {
      return false;
    }
  };
  bool changed = true;
  while (changed && evals < kShrinkEvals) {
    changed = false;
    for (std::size_t b = 0; b < binders.size() && evals < kShrinkEvals; ++b) {
      for (Value& cand : shrink_candidates(binders[b].domain, env[b])) {
        if (evals >= kShrinkEvals) break;
        std::vector<Value> next = env;
        next[b] = std::move(cand);
        if (still_fails(next)) {
          env = std::move(next);
          changed = true;
          break;
        }
      }
    }
  }
  return env;
}

CheckReport check_law(const TypedLaw& t, const Budget& b) {
  if (b.max_instances == 0 || b.sample_size == 0) throw ConfigError("budget and sample size must be positive");
  CheckReport r;
  r.law = t.law().name;
  r.stack = t.stack().to_string();
  r.effect = t.effect();
  for (const auto& [name, type] : t.type_assignment()) r.types[name] = type.to_string();
  r.seed = b.seed;
  r.mutation = t.mutation();
  r.planned = t.plan();

  const auto& binders = t.binders();
  std::function<std::vector<Value>(std::uint64_t)> env_of;
  std::uint64_t n;
  if (r.planned && *r.planned <= b.max_instances) {
    r.mode = Mode::Exhaustive;
    n = *r.planned;
    std::vector<std::uint64_t> sizes;
    for (const BinderInfo& bi : binders) sizes.push_back(*bi.domain.size());
    env_of = [&binders, sizes](std::uint64_t i) {
      std::vector<Value> env(binders.size());
      for (std::size_t k = binders.size(); k-- > 0;) {
        env[k] = binders[k].domain.at(i % sizes[k]);
        i /= sizes[k];
      }
      return env;
    };
  } else {
    r.mode = Mode::Sampled;
    n = b.sample_size;
    std::uint64_t seed = b.seed;
    env_of = [&binders, seed](std::uint64_t i) {
      std::vector<Value> env;
      env.reserve(binders.size());
      for (std::size_t k = 0; k < binders.size(); ++k) {
        Draws d{seed, i, k};
        const Domain& dom = binders[k].domain;
        if (auto size = dom.size())
          env.push_back(dom.at(d.below(*size)));
        else
          env.push_back(random_value(dom.type, d));
      }
      return env;
    };
  }

  Scan s = scan(n, b.single_threaded, [&](std::uint64_t i) { return sides_differ(t, env_of(i)); });
  if (s.error_at) {
    r.status = Status::Error;
    r.instances_checked = 0;
    r.message = "evaluation failed at instance " + std::to_string(*s.error_at) + ": " + s.error;
    return r;
  }
  r.instances_checked = n;
  r.failures = s.failures;
  if (!s.first_fail) {
    r.status = Status::Pass;
    return r;
  }
  r.status = Status::Fail;
  std::vector<Value> env = shrink_counterexample(t, env_of(*s.first_fail));
  Counterexample cex;
  for (std::size_t k = 0; k < binders.size(); ++k)
    cex.bindings.push_back({binders[k].name, binders[k].type_text, env[k]});
  if (!sides_differ(t, env, &cex.lhs, &cex.rhs))
    throw InvariantViolation("shrunk counterexample for " + r.law + " no longer fails");
  r.counterexample = std::move(cex);
  return r;
}

CheckReport check_entry(const LawEntry& e, const StackSpec& stack, const Budget& b,
                        const std::map<std::string, FinType>& overrides, Mutation mutation) {
  LawContext ctx;
  ctx.stack = stack;
  ctx.effect = e.effect;
  ctx.types = e.types;
  for (const auto& [name, type] : overrides) ctx.types[name] = type;
  ctx.mutation = mutation;
  TypedLaw t = typecheck_law(e.law, ctx);
  CheckReport r = check_law(t, b);
  r.suite = e.suite;
  r.expectation = e.expectation;
  return r;
}

SuiteRun run_suite(const Registry& reg, const std::string& suite, const StackSpec& stack, const Budget& b,
                   const std::map<std::string, FinType>& overrides, Mutation mutation) {
  SuiteRun run;
  for (const LawEntry* e : reg.laws(suite)) {
    try {
      run.reports.push_back(check_entry(*e, stack, b, overrides, mutation));
    } catch (const UnavailablePrimitive& ex) {
      run.skipped.push_back({e->name, stack.to_string(), ex.what()});
    }
  }
  return run;
}

Reverification reverify_counterexample(const Registry& reg, const CheckReport& r, Mutation mutation) {
  if (!r.counterexample) throw ConfigError("report for " + r.law + " has no counterexample");
  const LawEntry& e = reg.lookup(r.law);
  if (e.effect != r.effect)
    throw ConfigError("report effect " + std::string(effect_name(r.effect)) + " does not match law " + r.law);
  LawContext ctx;
  ctx.stack = parse_stack(r.stack);
  ctx.effect = e.effect;
  ctx.mutation = mutation;
  std::vector<std::string> fixed = fixed_type_names(e.effect);
  for (const auto& [name, text] : r.types)
    if (std::find(fixed.begin(), fixed.end(), name) == fixed.end()) ctx.types[name] = parse_assigned_type(text);
  TypedLaw t = typecheck_law(e.law, ctx);

  const auto& binders = t.binders();
  const auto& bindings = r.counterexample->bindings;
  if (bindings.size() != binders.size())
    throw ConfigError("counterexample has " + std::to_string(bindings.size()) + " bindings, law " + r.law +
                      " has " + std::to_string(binders.size()) + " binders");
  std::vector<Value> env;
  for (std::size_t k = 0; k < binders.size(); ++k) {
    if (bindings[k].name != binders[k].name)
      throw ConfigError("binding " + bindings[k].name + " does not match binder " + binders[k].name);
    const Value& v = bindings[k].value;
    bool fits = binders[k].domain.listed
                    ? std::find(binders[k].domain.listed->begin(), binders[k].domain.listed->end(), v) !=
                          binders[k].domain.listed->end()
                    : well_typed(v, binders[k].domain.type);
    if (!fits) throw ConfigError("value of " + bindings[k].name + " is outside its domain");
    env.push_back(v);
  }
  Reverification out;
  out.reproduced = sides_differ(t, env, &out.lhs, &out.rhs);
  out.values_match = out.lhs == r.counterexample->lhs && out.rhs == r.counterexample->rhs;
  return out;
}

}  // namespace monadlaw
