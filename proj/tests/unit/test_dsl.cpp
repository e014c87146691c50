#include <doctest.h>

#include "monadlaw/dsl.hpp"
#include "monadlaw/error.hpp"
#include "monadlaw/registry.hpp"

using namespace monadlaw;

TEST_CASE("law parsing") {
  LawExpr fs = parse_law("law Fuse-Shift: forall . fuse ∘ shift == id");
  CHECK(fs.name == "Fuse-Shift");
  CHECK(fs.binders.empty());

  LawExpr pp = parse_law("law Put-Put: forall s:S, s2:S . put(s) >> put(s2) == put(s2)");
  REQUIRE(pp.binders.size() == 2);
  CHECK(pp.binders[0].name == "s");
  CHECK(pp.binders[1].name == "s2");
}

TEST_CASE("dangling binder is a syntax error") {
  try {
    parse_law("law Bad: forall s: . put(s) == put(s)");
    FAIL("no error");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 1);
    CHECK(e.column == 20);
  }
  CHECK_THROWS_AS(parse_law("law Bad: forall s:"), SyntaxError);
}

TEST_CASE("print and reparse every registry law") {
  Registry reg = Registry::builtin();
  for (const LawEntry* e : reg.laws()) {
    CAPTURE(e->name);
    std::string text = print_law(e->law);
    LawExpr back = parse_law(text);
    CHECK(same_law(back, e->law));
    CHECK(print_law(back) == text);
  }
}

TEST_CASE("types") {
  TypePtr t = parse_type("S -> M (X * W) -> J X'");
  CHECK(print_type(*t) == "S -> M (X * W) -> J X'");
  CHECK(same_type(*parse_type("(A -> B) -> C"), *parse_type("(A->B)->C")));
  CHECK_FALSE(same_type(*parse_type("A -> B -> C"), *parse_type("(A -> B) -> C")));
}

TEST_CASE("law files with suites") {
  LawFile f = parse_law_file(R"(
law A: forall x: X . unit(x) == unit(x)
law B: forall . id == id
@effect state
@stacks "StateT(s=2).Id"
suite two { A, B }
)");
  CHECK(f.laws.size() == 2);
  REQUIRE(f.suites.size() == 1);
  CHECK(f.suites[0].laws == std::vector<std::string>{"A", "B"});
}
