#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "monadlaw/dsl.hpp"
#include "monadlaw/finite.hpp"
#include "monadlaw/stack.hpp"

namespace monadlaw {

enum class Expectation { Holds, Refuted, ReportOnly };

const char* expectation_name(Expectation e);
Expectation parse_expectation(std::string_view text);

struct LawEntry {
  std::string name;
  std::string suite;
  std::string source;    // printed law text
  std::string citation;  // law @cite, else the suite's
  Expectation expectation = Expectation::Holds;
  EffectKind effect = EffectKind::None;
  std::map<std::string, FinType> types;  // @types defaults
  std::string origin;                    // file the law came from
  LawExpr law;
};

struct SuiteInfo {
  std::string name;
  EffectKind effect = EffectKind::None;
  std::vector<std::string> stacks;  // default stacks, as written
  std::string citation;
  std::vector<std::string> laws;
  std::string origin;
};

// "X=Unit, X'=3" -> {X: Unit, X': Enum(3)}. Throws ConfigError.
std::map<std::string, FinType> parse_type_assignment(std::string_view text);

class Registry {
 public:
  // The law files shipped with the tool.
  static Registry builtin();

  // Adds every *.law file of a directory (sorted by name).
  void load_dir(const std::filesystem::path& dir);
  // Adds the items of one law file. Throws SyntaxError / ConfigError.
  void load_text(std::string_view text, const std::string& origin);

  // Throws UnknownName with near matches.
  const LawEntry& lookup(const std::string& name) const;
  const SuiteInfo& suite(const std::string& name) const;
  const LawEntry* find(const std::string& name) const;

  // Suites in load order.
  const std::vector<SuiteInfo>& suites() const { return suites_; }
  // Laws of a suite in listed order; all laws in suite order when name is empty.
  std::vector<const LawEntry*> laws(const std::string& suite = "") const;
  std::size_t size() const { return laws_.size(); }

  std::vector<std::string> near_matches(const std::string& name,
                                        const std::vector<std::string>& pool) const;

 private:
  std::map<std::string, LawEntry> laws_;
  std::vector<SuiteInfo> suites_;
};

}  // namespace monadlaw
