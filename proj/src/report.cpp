#include "monadlaw/report.hpp"

#include "monadlaw/error.hpp"

namespace monadlaw {

Json report_to_json(const CheckReport& r) {
  Json j;
  j["law"] = r.law;
  j["suite"] = r.suite;
  j["expectation"] = expectation_name(r.expectation);
  j["stack"] = r.stack;
  j["effect"] = std::string(effect_name(r.effect));
  Json types = Json::object();
  for (const auto& [k, v] : r.types) types[k] = v;
  j["types"] = types;
  j["mode"] = mode_name(r.mode);
  j["planned"] = r.planned ? Json(*r.planned) : Json(nullptr);
  j["instancesChecked"] = r.instances_checked;
  j["failures"] = r.failures;
  j["status"] = status_name(r.status);
  j["verdict"] = verdict_name(r.verdict());
  j["seed"] = r.seed;
  if (r.counterexample) {
    Json c;
    Json bs = Json::array();
    for (const Binding& b : r.counterexample->bindings)
      bs.push_back(Json{{"name", b.name}, {"type", b.type}, {"value", b.value.to_string()}});
    c["bindings"] = bs;
    c["lhs"] = r.counterexample->lhs.to_string();
    c["rhs"] = r.counterexample->rhs.to_string();
    j["counterexample"] = c;
  } else {
    j["counterexample"] = nullptr;
  }
  j["mutant"] = r.mutation == Mutation::None ? Json(nullptr) : Json(std::string(mutation_name(r.mutation)));
  j["message"] = r.message;
  return j;
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ConfigError(std::string("report is missing field '") + key + "'");
  return j.at(key);
}

std::string text(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_string()) throw ConfigError(std::string("report field '") + key + "' is not a string");
  return v.get<std::string>();
}

std::uint64_t count(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_unsigned()) throw ConfigError(std::string("report field '") + key + "' is not a count");
  return v.get<std::uint64_t>();
}

}  // namespace

CheckReport report_from_json(const Json& j) {
  try {
    CheckReport r;
    r.law = text(j, "law");
    r.suite = text(j, "suite");
    r.expectation = parse_expectation(text(j, "expectation"));
    r.stack = text(j, "stack");
    auto eff = parse_effect(text(j, "effect"));
    if (!eff) throw ConfigError("report has an unknown effect");
    r.effect = *eff;
    for (const auto& [k, v] : field(j, "types").items()) r.types[k] = v.get<std::string>();
    r.mode = text(j, "mode") == "sampled" ? Mode::Sampled : Mode::Exhaustive;
    if (!field(j, "planned").is_null()) r.planned = count(j, "planned");
    r.instances_checked = count(j, "instancesChecked");
    r.failures = count(j, "failures");
    std::string st = text(j, "status");
    r.status = st == "pass" ? Status::Pass : st == "fail" ? Status::Fail : Status::Error;
    r.seed = count(j, "seed");
    const Json& c = field(j, "counterexample");
    if (!c.is_null()) {
      Counterexample cex;
      for (const Json& b : field(c, "bindings"))
        cex.bindings.push_back({text(b, "name"), text(b, "type"), Value::parse(text(b, "value"))});
      cex.lhs = Value::parse(text(c, "lhs"));
      cex.rhs = Value::parse(text(c, "rhs"));
      r.counterexample = std::move(cex);
    }
    if (j.contains("mutant") && !j.at("mutant").is_null()) {
      auto m = parse_mutation(j.at("mutant").get<std::string>());
      if (!m) throw ConfigError("report names an unknown mutant");
      r.mutation = *m;
    }
    if (j.contains("message")) r.message = text(j, "message");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

Summary summarize(const std::vector<CheckReport>& reports, std::size_t skipped) {
  Summary s;
  s.total = reports.size();
  s.skipped = skipped;
  for (const CheckReport& r : reports) {
    switch (r.verdict()) {
      case Verdict::Pass:
        ++s.pass;
        break;
      case Verdict::Fail:
        ++s.fail;
        break;
      case Verdict::XFail:
        ++s.xfail;
        break;
      case Verdict::XPass:
        ++s.xpass;
        break;
      case Verdict::Report:
        ++s.report;
        break;
      case Verdict::Error:
        ++s.error;
        break;
    }
  }
  return s;
}

Json run_to_json(const std::vector<CheckReport>& reports, const std::vector<Skipped>& skipped) {
  Json j;
  j["tool"] = "monadlaw";
  j["format"] = kReportFormat;
  Json rs = Json::array();
  for (const CheckReport& r : reports) rs.push_back(report_to_json(r));
  j["reports"] = rs;
  Json sk = Json::array();
  for (const Skipped& s : skipped) sk.push_back(Json{{"law", s.law}, {"stack", s.stack}, {"reason", s.reason}});
  j["skipped"] = sk;
  Summary s = summarize(reports, skipped.size());
  j["summary"] = Json{{"total", s.total},     {"pass", s.pass},     {"fail", s.fail},
                      {"xfail", s.xfail},     {"xpass", s.xpass},   {"report", s.report},
                      {"error", s.error},     {"skipped", s.skipped}, {"unexpected", s.unexpected()}};
  return j;
}

}  // namespace monadlaw
