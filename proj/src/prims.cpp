#include <algorithm>

#include "monadlaw/error.hpp"
#include "runtime.hpp"

namespace monadlaw::rt {

Value force(const RVal& v, const FinType& t) {
  if (const Value* x = std::get_if<Value>(&v)) return *x;
  const Fun& f = *std::get<FunP>(v);
  if (t.kind() != FinType::Kind::Fn) throw InvariantViolation("closure forced at non-function type " + t.to_string());
  const auto& dom = t.dom().values();
  std::vector<Value> es;
  es.reserve(dom.size());
  for (const Value& d : dom) es.push_back(force(f.call(d), t.cod()));
  return Value::table(std::move(es));
}

RVal call(const RVal& f, const RVal& x, const FinType& fty) {
  if (const FunP* fun = std::get_if<FunP>(&f)) return (*fun)->call(x);
  const Value& t = std::get<Value>(f);
  if (t.kind() != Value::Kind::Table) throw InvariantViolation("applying a non-function value " + t.to_string());
  return apply_table(t, force(x, fty.dom()), fty.dom());
}

const FinType& Site::var(const char* name) const {
  auto it = tv.find(name);
  if (it == tv.end()) throw InvariantViolation(std::string("scheme variable ") + name + " missing");
  return it->second;
}

namespace {

class PrimFun : public Fun {
 public:
  PrimFun(const Site& s, std::vector<RVal> args) : site_(s), args_(std::move(args)) {}
  RVal call(const RVal& arg) const override {
    std::vector<RVal> next = args_;
    next.push_back(arg);
    if (static_cast<int>(next.size()) == site_.def->arity) return site_.def->impl(site_, next);
    return std::make_shared<PrimFun>(site_, std::move(next));
  }

 private:
  const Site& site_;
  std::vector<RVal> args_;
};

using Args = std::vector<RVal>;

Value arg(const Site& s, const Args& a, std::size_t i) { return force(a[i], s.args[i]); }
Unary fn(const Site& s, const Args& a, std::size_t i) { return Unary{a[i], s.args[i]}; }

Value cod(const Site& s, const Args& a, std::size_t i, const RVal& x) {
  return force(call(a[i], x, s.args[i]), s.args[i].cod());
}

bool is_left(const Value& v) { return v.kind() == Value::Kind::InL; }

// ---- generic ----

RVal p_id(const Site&, const Args& a) { return a[0]; }
RVal p_const(const Site&, const Args& a) { return a[0]; }
RVal p_fst(const Site& s, const Args& a) { return arg(s, a, 0).first(); }
RVal p_snd(const Site& s, const Args& a) { return arg(s, a, 0).second(); }
RVal p_pair(const Site& s, const Args& a) { return Value::pair(arg(s, a, 0), arg(s, a, 1)); }
RVal p_star(const Site&, const Args&) { return Value::star(); }
RVal p_inl(const Site& s, const Args& a) { return Value::inl(arg(s, a, 0)); }
RVal p_inr(const Site& s, const Args& a) { return Value::inr(arg(s, a, 0)); }

RVal p_case(const Site& s, const Args& a) {
  Value v = arg(s, a, 2);
  return call(a[is_left(v) ? 0 : 1], v.payload(), s.args[is_left(v) ? 0 : 1]);
}
RVal p_fork(const Site& s, const Args& a) {
  return Value::pair(cod(s, a, 0, a[2]), cod(s, a, 1, a[2]));
}
RVal p_cross(const Site& s, const Args& a) {
  Value p = arg(s, a, 2);
  return Value::pair(cod(s, a, 0, p.first()), cod(s, a, 1, p.second()));
}
RVal p_plus(const Site& s, const Args& a) {
  Value v = arg(s, a, 2);
  if (is_left(v)) return Value::inl(cod(s, a, 0, v.payload()));
  return Value::inr(cod(s, a, 1, v.payload()));
}
// (h -> f) g x = f (g (h x))
RVal p_arrow(const Site& s, const Args& a) {
  RVal hx = call(a[0], a[3], s.args[0]);
  RVal ghx = call(a[2], hx, s.args[2]);
  return call(a[1], ghx, s.args[1]);
}
RVal p_unit(const Site& s, const Args& a) { return s.st->unit(arg(s, a, 0)); }
RVal p_bind(const Site& s, const Args& a) { return s.st->bind(fn(s, a, 0), arg(s, a, 1)); }
RVal p_fmap(const Site& s, const Args& a) { return s.st->fmap(fn(s, a, 0), arg(s, a, 1)); }

// ---- exception ----

RVal e_raise(const Site& s, const Args& a) { return s.st->raise(arg(s, a, 0)); }
RVal e_catch(const Site& s, const Args& a) { return s.st->catch_error(fn(s, a, 0), arg(s, a, 1)); }
RVal e_rho(const Site& s, const Args& a) { return s.st->exc_rho(arg(s, a, 0)); }
RVal e_handle(const Site& s, const Args& a) { return s.st->handle(fn(s, a, 0), arg(s, a, 1)); }
RVal e_mixmap(const Site& s, const Args& a) { return s.st->exc_mixmap(fn(s, a, 0), arg(s, a, 1)); }
RVal e_fusel(const Site& s, const Args& a) { return s.st->fusel(arg(s, a, 0)); }
RVal e_fuser(const Site& s, const Args& a) { return s.st->fuser(arg(s, a, 0)); }
RVal e_bimap(const Site& s, const Args& a) {
  Value t = s.st->fmap(fn(s, a, 1), arg(s, a, 2));
  return s.st2->map_error(fn(s, a, 0), t);
}
RVal e_junit(const Site& s, const Args& a) { return Value::inr(arg(s, a, 0)); }
RVal e_jfmap(const Site& s, const Args& a) {
  Value v = arg(s, a, 1);
  return is_left(v) ? v : Value::inr(cod(s, a, 0, v.payload()));
}
RVal e_jbind(const Site& s, const Args& a) {
  Value v = arg(s, a, 1);
  return is_left(v) ? v : cod(s, a, 0, v.payload());
}

// ---- reader ----

RVal r_rho(const Site& s, const Args& a) { return s.st->rdr_rho(fn(s, a, 0)); }
RVal r_ask(const Site& s, const Args&) { return s.st->ask(); }
RVal r_local(const Site& s, const Args& a) {
  return s.st2->local(fn(s, a, 0), s.var("p"), arg(s, a, 1));
}
RVal r_bimap(const Site& s, const Args& a) {
  Value t = s.st->fmap(fn(s, a, 1), arg(s, a, 2));
  return s.st2->local(fn(s, a, 0), s.var("p"), t);
}
RVal r_apply(const Site& s, const Args& a) { return s.st->apply(arg(s, a, 0)); }
RVal r_abstr(const Site& s, const Args& a) { return s.st->abstr(arg(s, a, 0)); }
RVal r_nunit(const Site& s, const Args& a) { return s.plain->unit(arg(s, a, 0)); }
RVal r_nbind(const Site& s, const Args& a) { return s.plain->bind(fn(s, a, 0), arg(s, a, 1)); }
RVal r_nfmap(const Site& s, const Args& a) { return s.plain->fmap(fn(s, a, 0), arg(s, a, 1)); }
RVal r_junit(const Site& s, const Args& a) {
  return Value::table(std::vector<Value>(s.result.dom().values().size(), arg(s, a, 0)));
}
// k* g = \r. k (g r) r
RVal r_jbind(const Site& s, const Args& a) {
  Value g = arg(s, a, 1);
  std::vector<Value> es;
  es.reserve(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) es.push_back(cod(s, a, 0, g.at(i)).at(i));
  return Value::table(std::move(es));
}
RVal r_jfmap(const Site& s, const Args& a) {
  Value g = arg(s, a, 1);
  std::vector<Value> es;
  es.reserve(g.size());
  for (const Value& x : g.entries()) es.push_back(cod(s, a, 0, x));
  return Value::table(std::move(es));
}

// ---- writer ----

RVal w_writer(const Site& s, const Args& a) { return s.st->writer(arg(s, a, 0)); }
RVal w_tell(const Site& s, const Args& a) { return s.st->tell(arg(s, a, 0)); }
RVal w_listen(const Site& s, const Args& a) { return s.st->listen(arg(s, a, 0)); }
RVal w_pass(const Site& s, const Args& a) { return s.st->pass(arg(s, a, 0)); }
RVal w_mixmap(const Site& s, const Args& a) { return s.st->wrt_mixmap(fn(s, a, 0), arg(s, a, 1)); }
RVal w_shift(const Site& s, const Args& a) { return s.st->shift(arg(s, a, 0)); }
RVal w_fuse(const Site& s, const Args& a) { return s.st->fuse(arg(s, a, 0)); }
RVal w_hdl(const Site& s, const Args& a) { return s.st->hdl(fn(s, a, 0), arg(s, a, 1)); }
RVal w_pbnd(const Site& s, const Args& a) { return s.st->pbnd(fn(s, a, 0), arg(s, a, 1)); }
RVal w_logmap(const Site& s, const Args& a) { return s.st->logmap(fn(s, a, 0), arg(s, a, 1)); }
RVal w_eta(const Site& s, const Args& a) {
  return Value::pair(arg(s, a, 0), s.base->monoid().unit_value());
}
// ((a, w'), w) -> (a, w . w')
RVal w_mu(const Site& s, const Args& a) {
  Value p = arg(s, a, 0);
  return Value::pair(p.first().first(), s.base->monoid().mult(p.second(), p.first().second()));
}
RVal w_jfmap(const Site& s, const Args& a) {
  Value p = arg(s, a, 1);
  return Value::pair(cod(s, a, 0, p.first()), p.second());
}
RVal w_jbind(const Site& s, const Args& a) {
  Value p = arg(s, a, 1);
  Value q = cod(s, a, 0, p.first());
  return Value::pair(q.first(), s.base->monoid().mult(p.second(), q.second()));
}
RVal w_one(const Site& s, const Args&) { return s.base->monoid().unit_value(); }
RVal w_mult(const Site& s, const Args& a) { return s.base->monoid().mult(arg(s, a, 0), arg(s, a, 1)); }

// ---- state ----

RVal s_get(const Site& s, const Args&) { return s.st->get(); }
RVal s_put(const Site& s, const Args& a) { return s.st->put(arg(s, a, 0)); }
RVal s_modify(const Site& s, const Args& a) { return s.st->modify(fn(s, a, 0)); }
RVal s_junit(const Site& s, const Args& a) {
  Value x = arg(s, a, 0);
  std::vector<Value> es;
  for (const Value& st : s.result.dom().values()) es.push_back(Value::pair(x, st));
  return Value::table(std::move(es));
}
// k* g = \s. let (a, s') = g s in k a s'
RVal s_jbind(const Site& s, const Args& a) {
  Value g = arg(s, a, 1);
  const FinType& S = s.args[1].dom();
  std::vector<Value> es;
  es.reserve(g.size());
  for (const Value& p : g.entries()) es.push_back(apply_table(cod(s, a, 0, p.first()), p.second(), S));
  return Value::table(std::move(es));
}
RVal s_jfmap(const Site& s, const Args& a) {
  Value g = arg(s, a, 1);
  std::vector<Value> es;
  es.reserve(g.size());
  for (const Value& p : g.entries()) es.push_back(Value::pair(cod(s, a, 0, p.first()), p.second()));
  return Value::table(std::move(es));
}

// The state primitive takes a J-value, which is already a table.
RVal s_state_table(const Site& s, const Args& a) {
  Value g = arg(s, a, 0);
  const FinType& S = s.args[0].dom();
  return s.st->state([&](const Value& st) { return apply_table(g, st, S); });
}

constexpr EffectKind G = EffectKind::None;
constexpr EffectKind X = EffectKind::Exception;
constexpr EffectKind R = EffectKind::Reader;
constexpr EffectKind W = EffectKind::Writer;
constexpr EffectKind S = EffectKind::State;

}  // namespace

// Lowercase names in schemes are generic; a variable in the first argument
// of F is an effect parameter. M a abbreviates F(P, a) for the stack's own
// parameter P, and J is the effect's base functor.
const std::vector<PrimDef>& all_prims() {
  static const std::vector<PrimDef> prims = {
      {"id", G, "a -> a", 1, p_id},
      {"const", G, "a -> b -> a", 2, p_const},
      {"fst", G, "a * b -> a", 1, p_fst},
      {"snd", G, "a * b -> b", 1, p_snd},
      {"pair", G, "a -> b -> a * b", 2, p_pair},
      {"star", G, "Unit", 0, p_star},
      {"inl", G, "a -> a + b", 1, p_inl},
      {"inr", G, "b -> a + b", 1, p_inr},
      {"case", G, "(a -> c) -> (b -> c) -> a + b -> c", 3, p_case},
      {"fork", G, "(c -> a) -> (c -> b) -> c -> a * b", 3, p_fork},
      {"cross", G, "(a -> c) -> (b -> d) -> a * b -> c * d", 3, p_cross},
      {"plus", G, "(a -> c) -> (b -> d) -> a + b -> c + d", 3, p_plus},
      {"arrow", G, "(c -> a) -> (b -> d) -> (a -> b) -> c -> d", 4, p_arrow},
      {"unit", G, "a -> F(p, a)", 1, p_unit},
      {"return", G, "a -> F(p, a)", 1, p_unit},
      {"bind", G, "(a -> F(p, b)) -> F(p, a) -> F(p, b)", 2, p_bind},
      {"fmap", G, "(a -> b) -> F(p, a) -> F(p, b)", 2, p_fmap},

      {"raise", X, "p -> F(p, a)", 1, e_raise},
      {"catch", X, "(p -> F(q, a)) -> F(p, a) -> F(q, a)", 2, e_catch},
      {"rho", X, "p + a -> F(p, a)", 1, e_rho},
      {"handle", X, "(p + a -> F(q, b)) -> F(p, a) -> F(q, b)", 2, e_handle},
      {"mixmap", X, "(p + a -> q + b) -> F(p, a) -> F(q, b)", 2, e_mixmap},
      {"fusel", X, "F(p, p + a) -> F(p, a)", 1, e_fusel},
      {"fuser", X, "F(p + a, a) -> F(p, a)", 1, e_fuser},
      {"bimap", X, "(p -> q) -> (a -> b) -> F(p, a) -> F(q, b)", 3, e_bimap},
      {"junit", X, "a -> J a", 1, e_junit},
      {"jfmap", X, "(a -> b) -> J a -> J b", 2, e_jfmap},
      {"jbind", X, "(a -> J b) -> J a -> J b", 2, e_jbind},

      {"rho", R, "(p -> a) -> F(p, a)", 1, r_rho},
      {"ask", R, "F(p, p)", 0, r_ask},
      {"local", R, "(q -> p) -> F(p, a) -> F(q, a)", 2, r_local},
      {"bimap", R, "(q -> p) -> (a -> b) -> F(p, a) -> F(q, b)", 3, r_bimap},
      {"apply", R, "F(p, a) -> p -> N a", 1, r_apply, true},
      {"abstr", R, "(p -> N a) -> F(p, a)", 1, r_abstr, true},
      {"nunit", R, "a -> N a", 1, r_nunit, true},
      {"nbind", R, "(a -> N b) -> N a -> N b", 2, r_nbind, true},
      {"nfmap", R, "(a -> b) -> N a -> N b", 2, r_nfmap, true},
      {"junit", R, "a -> J a", 1, r_junit},
      {"jbind", R, "(a -> J b) -> J a -> J b", 2, r_jbind},
      {"jfmap", R, "(a -> b) -> J a -> J b", 2, r_jfmap},

      {"rho", W, "J a -> M a", 1, w_writer},
      {"writer", W, "J a -> M a", 1, w_writer},
      {"writerEmbed", W, "J a -> M a", 1, w_writer},
      {"tell", W, "W -> M Unit", 1, w_tell},
      {"listen", W, "M a -> M (a * W)", 1, w_listen},
      {"pass", W, "M (a * (W -> W)) -> M a", 1, w_pass},
      {"mixmap", W, "(J a -> J b) -> M a -> M b", 2, w_mixmap},
      {"shift", W, "M a -> M (J a)", 1, w_shift},
      {"fuse", W, "M (J a) -> M a", 1, w_fuse},
      {"hdl", W, "(J a -> M b) -> M a -> M b", 2, w_hdl},
      {"pbnd", W, "(a -> M b) -> J a -> M b", 2, w_pbnd},
      {"logmap", W, "(W -> W) -> M a -> M a", 2, w_logmap},
      {"eta", W, "a -> J a", 1, w_eta},
      {"junit", W, "a -> J a", 1, w_eta},
      {"mu", W, "J (J a) -> J a", 1, w_mu},
      {"jjoin", W, "J (J a) -> J a", 1, w_mu},
      {"jfmap", W, "(a -> b) -> J a -> J b", 2, w_jfmap},
      {"jbind", W, "(a -> J b) -> J a -> J b", 2, w_jbind},
      {"one", W, "W", 0, w_one},
      {"mult", W, "W -> W -> W", 2, w_mult},

      {"get", S, "M S", 0, s_get},
      {"put", S, "S -> M Unit", 1, s_put},
      {"state", S, "J a -> M a", 1, s_state_table},
      {"rho", S, "J a -> M a", 1, s_state_table},
      {"modify", S, "(S -> S) -> M Unit", 1, s_modify},
      {"junit", S, "a -> J a", 1, s_junit},
      {"jbind", S, "(a -> J b) -> J a -> J b", 2, s_jbind},
      {"jfmap", S, "(a -> b) -> J a -> J b", 2, s_jfmap},
  };
  return prims;
}

const PrimDef* find_prim(const std::string& name, EffectKind effect) {
  const PrimDef* generic = nullptr;
  for (const PrimDef& p : all_prims()) {
    if (p.name != name) continue;
    if (p.effect == effect && effect != EffectKind::None) return &p;
    if (p.effect == EffectKind::None) generic = &p;
  }
  return generic;
}

RVal start_prim(const Site& site) {
  if (site.def->arity == 0) return site.def->impl(site, {});
  return std::make_shared<PrimFun>(site, std::vector<RVal>{});
}

}  // namespace monadlaw::rt
