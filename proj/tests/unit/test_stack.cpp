#include <doctest.h>

#include "monadlaw/error.hpp"
#include "monadlaw/stack.hpp"

using namespace monadlaw;

namespace {

Value V(const char* s) { return Value::parse(s); }
Value E(std::uint32_t i) { return Value::elem(i); }
Stack S(const char* text, EffectKind k, Mutation m = Mutation::None) { return Stack(parse_stack(text), k, m); }

const auto Exc = EffectKind::Exception;
const auto Rdr = EffectKind::Reader;
const auto Wrt = EffectKind::Writer;
const auto St = EffectKind::State;

}  // namespace

TEST_CASE("stack parsing") {
  StackSpec s = parse_stack("WriterT(Z2).ExceptT(e=2).Id");
  REQUIRE(s.layers.size() == 2);
  CHECK(s.layers[0].kind == Layer::Kind::WriterT);
  CHECK(s.layers[1].kind == Layer::Kind::ExceptT);
  CHECK(parse_stack(s.to_string()).to_string() == s.to_string());

  StackSpec r = parse_stack("ReaderBase(r=2, StateT(s=2).Id)");
  CHECK(r.reader_base.has_value());
  CHECK(r.layers.size() == 1);

  CHECK_THROWS_AS(parse_stack("bogus"), SyntaxError);
  CHECK_THROWS_AS(parse_stack("WriterT(Q7).Id"), Error);
}

TEST_CASE("unit") {
  CHECK(S("Id", EffectKind::None).unit(E(1)) == E(1));
  CHECK(S("WriterT(Z2).Id", Wrt).unit(E(1)) == V("Pair(Elem 1, Elem 0)"));
  CHECK(S("StateT(s=2).Id", St).unit(E(0)) == V("Table[Pair(Elem 0, Elem 0), Pair(Elem 0, Elem 1)]"));
}

TEST_CASE("bind") {
  auto k1 = [](const Value&) { return V("Pair(Elem 1, Elem 1)"); };
  CHECK(S("WriterT(Z2).Id", Wrt).bind(k1, V("Pair(Elem 0, Elem 1)")) == V("Pair(Elem 1, Elem 0)"));

  Stack ex = S("ExceptT(e=2).Id", Exc);
  auto k2 = [](const Value& a) { return Value::inr(a); };
  CHECK(ex.bind(k2, V("InL(Elem 1)")) == V("InL(Elem 1)"));
  auto sw = [](const Value& a) { return Value::inr(E(1 - a.index())); };
  CHECK(ex.bind(sw, V("InR(Elem 0)")) == V("InR(Elem 1)"));
}

TEST_CASE("fmap") {
  auto inc = [](const Value& a) { return E(1 - a.index()); };
  auto id = [](const Value& a) { return a; };
  Stack ex = S("ExceptT(e=2).Id", Exc);
  CHECK(ex.fmap(inc, V("InL(Elem 0)")) == V("InL(Elem 0)"));
  CHECK(ex.fmap(id, V("InR(Elem 1)")) == V("InR(Elem 1)"));
  CHECK(S("WriterT(Z2).Id", Wrt).fmap(inc, V("Pair(Elem 0, Elem 1)")) == V("Pair(Elem 1, Elem 1)"));
}

TEST_CASE("raise and catch through layers") {
  CHECK(S("ExceptT(e=2).Id", Exc).raise(E(0)) == V("InL(Elem 0)"));
  CHECK(S("WriterT(Z2).ExceptT(e=2).Id", Exc).raise(E(1)) == V("InL(Elem 1)"));
  CHECK(S("ReaderT(r=2).ExceptT(e=2).Id", Exc).raise(E(1)) == V("Table[InL(Elem 1), InL(Elem 1)]"));

  Stack ex = S("ExceptT(e=2).Id", Exc);
  auto h = [](const Value& e) { return Value::inr(e); };
  CHECK(ex.catch_error(h, V("InR(Elem 0)")) == V("InR(Elem 0)"));
  CHECK(ex.catch_error(h, V("InL(Elem 1)")) == V("InR(Elem 1)"));

  // Under ReaderT the handler sees the same environment.
  Stack rx = S("ReaderT(r=2).ExceptT(e=2).Id", Exc);
  auto hr = [](const Value& e) { return Value::table({Value::inr(e), V("InL(Elem 0)")}); };
  CHECK(rx.catch_error(hr, V("Table[InL(Elem 1), InL(Elem 1)]")) == V("Table[InR(Elem 1), InL(Elem 0)]"));

  CHECK(S("ExceptT(e=2).Id", Exc, Mutation::CatchNeverHandles).catch_error(h, V("InL(Elem 1)")) ==
        V("InL(Elem 1)"));
}

TEST_CASE("handle and mixmap on the plain exception monad") {
  Stack ex = S("ExceptT(e=2).Id", Exc);
  FinType carrier = ex.carrier(FinType::enumeration(2));
  auto k = [](const Value& v) {
    return v.kind() == Value::Kind::InL ? Value::inr(v.payload()) : Value::inl(v.payload());
  };
  for (const Value& t : carrier.values()) {
    CHECK(ex.handle(k, t) == k(t));
    CHECK(ex.exc_mixmap(k, t) == k(t));
    CHECK(ex.handle([&](const Value& v) { return ex.exc_rho(v); }, t) == t);
  }
  CHECK(ex.fusel(V("InR(InL(Elem 1))")) == V("InL(Elem 1)"));
}

TEST_CASE("reader rho, ask, local, apply") {
  auto id = [](const Value& r) { return r; };
  auto sw = [](const Value& r) { return E(1 - r.index()); };
  Stack base = S("ReaderBase(r=2, Id)", Rdr);
  CHECK(base.rdr_rho(id) == V("Table[Elem 0, Elem 1]"));
  CHECK(base.ask() == V("Table[Elem 0, Elem 1]"));
  CHECK(base.fmap(sw, base.ask()) == base.rdr_rho(sw));

  Stack ex = S("ReaderBase(r=2, ExceptT(e=2).Id)", Rdr);
  CHECK(ex.rdr_rho(id) == V("Table[InR(Elem 0), InR(Elem 1)]"));
  CHECK(ex.ask() == V("Table[InR(Elem 0), InR(Elem 1)]"));

  // carrier s -> r -> x * s, so rho(f)(s)(r) = (f r, s)
  Stack st = S("ReaderBase(r=2, StateT(s=2).Id)", Rdr);
  CHECK(st.rdr_rho(sw) == V("Table[Table[Pair(Elem 1, Elem 0), Pair(Elem 0, Elem 0)], "
                            "Table[Pair(Elem 1, Elem 1), Pair(Elem 0, Elem 1)]]"));

  FinType R = FinType::enumeration(2);
  Value t = V("Table[Elem 1, Elem 0]");
  CHECK(base.local(id, R, t) == t);
  auto c1 = [](const Value&) { return E(1); };
  CHECK(base.local(c1, R, t) == V("Table[Elem 0, Elem 0]"));
  CHECK(base.local(sw, R, base.unit(E(1))) == base.unit(E(1)));

  CHECK(base.apply(t) == t);
  CHECK(base.abstr(t) == t);

  // abstr . apply = id over every t, |r| = |s| = 2, |x| = 1
  Stack rs = S("ReaderBase(r=2, StateT(s=2).Id)", Rdr);
  FinType c = rs.carrier(FinType::unit());
  for (const Value& v : c.values()) CHECK(rs.abstr(rs.apply(v)) == v);
}

TEST_CASE("apply through an outer ReaderT") {
  Stack st = S("ReaderBase(r=2, ReaderT(r=2).Id)", Rdr);
  // t q r = q xor r
  Value t = V("Table[Table[Elem 0, Elem 1], Table[Elem 1, Elem 0]]");
  // apply t r = \q. t q r
  CHECK(st.apply(t) == V("Table[Table[Elem 0, Elem 1], Table[Elem 1, Elem 0]]"));
  Value u = V("Table[Table[Elem 0, Elem 0], Table[Elem 1, Elem 1]]");
  CHECK(st.apply(u) == V("Table[Table[Elem 0, Elem 1], Table[Elem 0, Elem 1]]"));
  CHECK(st.abstr(st.apply(u)) == u);
}

TEST_CASE("writer operations") {
  Stack w = S("WriterT(Z2).Id", Wrt);
  CHECK(w.writer(V("Pair(Elem 1, Elem 1)")) == V("Pair(Elem 1, Elem 1)"));
  CHECK(w.tell(E(1)) == V("Pair(Star, Elem 1)"));
  CHECK(w.listen(V("Pair(Elem 0, Elem 1)")) == V("Pair(Pair(Elem 0, Elem 1), Elem 1)"));
  CHECK(w.listen(w.unit(E(0))) == w.unit(V("Pair(Elem 0, Elem 0)")));
  CHECK(w.pass(V("Pair(Pair(Elem 0, Table[Elem 1, Elem 1]), Elem 0)")) == V("Pair(Elem 0, Elem 1)"));
  CHECK(w.pass(V("Pair(Pair(Elem 0, Table[Elem 0, Elem 1]), Elem 1)")) == V("Pair(Elem 0, Elem 1)"));
  CHECK(w.shift(V("Pair(Elem 0, Elem 1)")) == V("Pair(Pair(Elem 0, Elem 1), Elem 0)"));
  CHECK(w.fuse(V("Pair(Pair(Elem 0, Elem 1), Elem 1)")) == V("Pair(Elem 0, Elem 0)"));
  CHECK(w.fuse(w.shift(V("Pair(Elem 1, Elem 1)"))) == V("Pair(Elem 1, Elem 1)"));

  auto eta = [](const Value& p) { return Value::pair(p, E(0)); };
  CHECK(w.wrt_mixmap(eta, V("Pair(Elem 0, Elem 1)")) == V("Pair(Pair(Elem 0, Elem 1), Elem 0)"));
  auto k = [](const Value&) { return V("Pair(Elem 1, Elem 1)"); };
  CHECK(w.pbnd(k, V("Pair(Elem 0, Elem 1)")) == V("Pair(Elem 1, Elem 0)"));
  auto rho = [&](const Value& p) { return w.writer(p); };
  CHECK(w.hdl(rho, V("Pair(Elem 0, Elem 1)")) == V("Pair(Elem 0, Elem 1)"));

  // ExceptT applied over the writer: carrier (E + X) * W
  CHECK(S("ExceptT(e=2).WriterT(Z2).Id", Wrt).writer(V("Pair(Elem 0, Elem 1)")) ==
        V("Pair(InR(Elem 0), Elem 1)"));
  // the writer applied over ExceptT: carrier E + X * W
  CHECK(S("WriterT(Z2).ExceptT(e=2).Id", Wrt).writer(V("Pair(Elem 0, Elem 1)")) ==
        V("InR(Pair(Elem 0, Elem 1))"));

  Stack bad = S("WriterT(Z2).Id", Wrt, Mutation::WriterBindDropsLog);
  CHECK(bad.bind(k, V("Pair(Elem 0, Elem 1)")) != V("Pair(Elem 1, Elem 0)"));
}

TEST_CASE("state operations") {
  Stack s = S("StateT(s=2).Id", St);
  CHECK(s.get() == V("Table[Pair(Elem 0, Elem 0), Pair(Elem 1, Elem 1)]"));
  CHECK(s.put(E(1)) == V("Table[Pair(Star, Elem 1), Pair(Star, Elem 1)]"));
  auto swap = [](const Value& x) { return Value::pair(x, E(1 - x.index())); };
  CHECK(s.state(swap) == V("Table[Pair(Elem 0, Elem 1), Pair(Elem 1, Elem 0)]"));
  auto neg = [](const Value& x) { return E(1 - x.index()); };
  CHECK(s.modify(neg) == V("Table[Pair(Star, Elem 1), Pair(Star, Elem 0)]"));

  Stack bad = S("StateT(s=2).Id", St, Mutation::PutIgnoresArg);
  CHECK(bad.put(E(1)) != s.put(E(1)));
}

TEST_CASE("designation picks the innermost layer of the kind") {
  Stack s = S("StateT(s=3).StateT(s=2).Id", St);
  CHECK(s.state_type() == FinType::enumeration(2));
  CHECK_THROWS_AS(S("WriterT(Z2).Id", St).get(), Error);
}
