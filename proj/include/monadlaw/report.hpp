#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "monadlaw/checker.hpp"

namespace monadlaw {

using Json = nlohmann::ordered_json;

inline constexpr int kReportFormat = 1;

Json report_to_json(const CheckReport& r);
// Throws ConfigError on missing or malformed fields.
CheckReport report_from_json(const Json& j);

// {tool, format, reports, skipped, summary}
Json run_to_json(const std::vector<CheckReport>& reports, const std::vector<Skipped>& skipped);

struct Summary {
  std::size_t total = 0, pass = 0, fail = 0, xfail = 0, xpass = 0, report = 0, error = 0, skipped = 0;
  std::size_t unexpected() const { return fail + xpass + error; }
};
Summary summarize(const std::vector<CheckReport>& reports, std::size_t skipped);

}  // namespace monadlaw
