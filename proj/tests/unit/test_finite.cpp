#include <doctest.h>

#include "monadlaw/error.hpp"
#include "monadlaw/finite.hpp"
#include "monadlaw/monoid.hpp"

using namespace monadlaw;

namespace {

Value V(const char* s) { return Value::parse(s); }
const FinType B = FinType::enumeration(2);

}  // namespace

TEST_CASE("enumeration of small types") {
  CHECK(enumerate_values(FinType::unit()) == std::vector<Value>{Value::star()});
  CHECK(enumerate_values(B) == std::vector<Value>{Value::elem(0), Value::elem(1)});

  auto fns = enumerate_values(FinType::fn(B, B));
  REQUIRE(fns.size() == 4);
  CHECK(fns[0] == V("Table[Elem 0, Elem 0]"));
  CHECK(fns[1] == V("Table[Elem 0, Elem 1]"));
  CHECK(fns[2] == V("Table[Elem 1, Elem 0]"));
  CHECK(fns[3] == V("Table[Elem 1, Elem 1]"));

  CHECK(enumerate_functions(FinType::unit(), FinType::enumeration(3)).size() == 3);
  CHECK(enumerate_functions(B, FinType::unit()).size() == 1);
}

TEST_CASE("sum lists left injections first, products are lexicographic") {
  auto s = enumerate_values(FinType::sum(B, FinType::unit()));
  CHECK(s == std::vector<Value>{V("InL(Elem 0)"), V("InL(Elem 1)"), V("InR(Star)")});
  auto p = enumerate_values(FinType::prod(B, FinType::enumeration(3)));
  REQUIRE(p.size() == 6);
  CHECK(p[1] == V("Pair(Elem 0, Elem 1)"));
  CHECK(p[3] == V("Pair(Elem 1, Elem 0)"));
}

TEST_CASE("index_of and value_at are inverse") {
  const FinType types[] = {
      FinType::unit(),
      FinType::fn(B, FinType::sum(B, FinType::unit())),
      FinType::prod(FinType::fn(B, B), FinType::sum(FinType::enumeration(3), B)),
      FinType::fn(FinType::prod(B, B), B),
  };
  for (const FinType& t : types) {
    auto vs = enumerate_values(t);
    CHECK(vs.size() == t.checked_cardinality());
    for (std::uint64_t i = 0; i < vs.size(); ++i) {
      CHECK(index_of(vs[i], t) == i);
      CHECK(value_at(t, i) == vs[i]);
      CHECK(well_typed(vs[i], t));
      CHECK(Value::parse(vs[i].to_string()) == vs[i]);
    }
  }
}

TEST_CASE("cardinality overflow") {
  FinType t = FinType::enumeration(16);
  for (int i = 0; i < 3; ++i) t = FinType::fn(t, t);
  CHECK_FALSE(t.cardinality().has_value());
  CHECK_THROWS_AS(t.checked_cardinality(), DomainTooLarge);
}

TEST_CASE("value equality") {
  CHECK(value_eq(Value::star(), Value::star(), FinType::unit()));
  CHECK_FALSE(value_eq(V("Table[Elem 0, Elem 1]"), V("Table[Elem 1, Elem 0]"), FinType::fn(B, B)));
  Value p = V("Pair(Elem 0, InR(Star))");
  CHECK(value_eq(p, p, FinType::prod(B, FinType::sum(B, FinType::unit()))));
  CHECK_THROWS_AS(value_eq(Value::elem(3), Value::elem(3), B), InvariantViolation);
}

TEST_CASE("monoid endomorphisms") {
  CHECK(monoid_endomorphisms(monoid_trivial()) == std::vector<Value>{V("Table[Elem 0]")});
  CHECK(monoid_endomorphisms(monoid_z2()) ==
        std::vector<Value>{V("Table[Elem 0, Elem 0]"), V("Table[Elem 0, Elem 1]")});
  auto t2 = monoid_endomorphisms(monoid_t2());
  CHECK(std::find(t2.begin(), t2.end(), V("Table[Elem 0, Elem 1, Elem 2, Elem 3]")) != t2.end());
}

TEST_CASE("T2 is not commutative") {
  const MonoidSpec& m = monoid_t2();
  // 0 = const 0, 2 = swap
  CHECK(m.mult(0, 2) == 0);
  CHECK(m.mult(2, 0) == 3);
  CHECK(m.unit() == 1);
}

TEST_CASE("broken monoid tables are rejected") {
  CHECK_THROWS_AS(MonoidSpec("nounit", 2, 0, {1, 1, 1, 1}), Error);
  // a*b = 1 - a is not associative
  CHECK_THROWS_AS(MonoidSpec("skew", 2, 0, {1, 1, 0, 0}), Error);
  CHECK_NOTHROW(MonoidSpec("z2", 2, 0, {0, 1, 1, 0}));
}
