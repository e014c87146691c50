#include <doctest.h>

#include "monadlaw/error.hpp"
#include "monadlaw/registry.hpp"

using namespace monadlaw;

TEST_CASE("builtin inventory") {
  Registry reg = Registry::builtin();
  CHECK(reg.suites().size() == 14);
  CHECK(reg.size() >= 55);
  CHECK(reg.suite("state-core").laws.size() == 4);
  CHECK(reg.suite("state-core").stacks == std::vector<std::string>{"StateT(s=2).Id"});
  CHECK(reg.suite("exception-bind").laws.size() == 5);
  CHECK(reg.suite("exception-bind").stacks == std::vector<std::string>{"ExceptT(e=2).Id"});
  CHECK(reg.suite("exception-catch").laws.size() == 5);
  CHECK(reg.suite("reader-core").laws.size() == 6);
  CHECK(reg.suite("reader-consequences").laws.size() == 6);
  CHECK(reg.suite("writer-coherence").laws.size() == 7);

  CHECK(reg.lookup("Fuse-Shift").suite == "writer-coherence");
  CHECK(reg.lookup("Steele-UnitR").expectation == Expectation::Refuted);
  CHECK(reg.lookup("Hdl-Assoc").expectation == Expectation::ReportOnly);
  for (const char* n : {"Shift-Shift", "RBnd-Bnd", "Steele-Assoc", "Ask-UnitR", "Get-UnitR"})
    CHECK(reg.lookup(n).expectation == Expectation::Holds);
}

TEST_CASE("unknown law names come with suggestions") {
  Registry reg = Registry::builtin();
  try {
    reg.lookup("Foo-Bar");
    FAIL("no error");
  } catch (const UnknownName& e) {
    CHECK_FALSE(e.suggestions.empty());
  }
  try {
    reg.lookup("Put-Putt");
    FAIL("no error");
  } catch (const UnknownName& e) {
    REQUIRE_FALSE(e.suggestions.empty());
    CHECK(e.suggestions[0] == "Put-Put");
  }
}

TEST_CASE("malformed law files are rejected") {
  Registry reg = Registry::builtin();
  CHECK_THROWS_AS(reg.load_text("law Put-Put: forall . id == id\n"
                                "@effect state\nsuite dup-law { Put-Put }\n", "dup.law"),
                  ConfigError);
  CHECK_THROWS_AS(reg.load_text("law Orphan: forall . id == id\n", "orphan.law"), ConfigError);
  CHECK_THROWS_AS(reg.load_text("@effect state\nsuite empty-ref { Nope }\n", "ref.law"), ConfigError);
  CHECK_THROWS_AS(reg.load_text("law Broken forall . id == id\n", "syn.law"), SyntaxError);
}

TEST_CASE("user law files extend the registry") {
  Registry reg = Registry::builtin();
  std::size_t n = reg.size();
  reg.load_text("law My-Put: forall s: S . put(s) >> get == put(s) >> unit(s)\n"
                "@effect state\n@stacks \"StateT(s=3).Id\"\nsuite mine { My-Put }\n",
                "mine.law");
  CHECK(reg.size() == n + 1);
  CHECK(reg.suite("mine").stacks == std::vector<std::string>{"StateT(s=3).Id"});
}

TEST_CASE("type assignments") {
  auto m = parse_type_assignment("X=Unit, X'=3");
  CHECK(m.at("X") == FinType::unit());
  CHECK(m.at("X'") == FinType::enumeration(3));
  CHECK_THROWS_AS(parse_type_assignment("X=0"), ConfigError);
  CHECK_THROWS_AS(parse_type_assignment("X"), ConfigError);
}
