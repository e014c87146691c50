#include "monadlaw/stack.hpp"

#include <cctype>

namespace monadlaw {

std::string_view effect_name(EffectKind k) {
  switch (k) {
    case EffectKind::None:
      return "none";
    case EffectKind::Exception:
      return "exception";
    case EffectKind::Reader:
      return "reader";
    case EffectKind::Writer:
      return "writer";
    case EffectKind::State:
      return "state";
  }
  return "none";
}

std::optional<EffectKind> parse_effect(std::string_view s) {
  for (EffectKind k : {EffectKind::None, EffectKind::Exception, EffectKind::Reader,
                       EffectKind::Writer, EffectKind::State})
    if (effect_name(k) == s) return k;
  return std::nullopt;
}

std::string_view mutation_name(Mutation m) {
  switch (m) {
    case Mutation::None:
      return "none";
    case Mutation::WriterBindDropsLog:
      return "writer-bind-drops-log";
    case Mutation::PutIgnoresArg:
      return "put-ignores-arg";
    case Mutation::CatchNeverHandles:
      return "catch-never-handles";
  }
  return "none";
}

std::optional<Mutation> parse_mutation(std::string_view s) {
  for (Mutation m : {Mutation::None, Mutation::WriterBindDropsLog, Mutation::PutIgnoresArg,
                     Mutation::CatchNeverHandles})
    if (mutation_name(m) == s) return m;
  return std::nullopt;
}

namespace {

std::string param_text(const FinType& t) {
  if (t.kind() == FinType::Kind::Enum) return std::to_string(t.enum_size());
  return t.to_string();
}

}  // namespace

std::string Layer::to_string() const {
  switch (kind) {
    case Kind::ExceptT:
      return "ExceptT(e=" + param_text(param) + ")";
    case Kind::ReaderT:
      return "ReaderT(r=" + param_text(param) + ")";
    case Kind::WriterT:
      return "WriterT(" + monoid->name() + ")";
    case Kind::StateT:
      return "StateT(s=" + param_text(param) + ")";
  }
  return "?";
}

std::string StackSpec::to_string() const {
  std::string s;
  for (const Layer& l : layers) s += l.to_string() + ".";
  s += "Id";
  if (reader_base) s = "ReaderBase(r=" + param_text(*reader_base) + ", " + s + ")";
  return s;
}

// ---------------------------------------------------------------------------

namespace {

struct StackReader {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError("stack: " + what, 1, pos + 1);
  }
  void ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool at_word(std::string_view w) {
    ws();
    if (s.substr(pos, w.size()) != w) return false;
    std::size_t e = pos + w.size();
    return e >= s.size() || !std::isalnum(static_cast<unsigned char>(s[e]));
  }
  void expect(char c) {
    ws();
    if (pos >= s.size() || s[pos] != c) fail(std::string("expected '") + c + "'");
    ++pos;
  }
  std::string ident() {
    ws();
    std::size_t b = pos;
    while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
    if (b == pos) fail("expected a name");
    return std::string(s.substr(b, pos - b));
  }
  std::uint32_t count() {
    ws();
    std::size_t b = pos;
    std::uint64_t n = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      n = n * 10 + static_cast<std::uint64_t>(s[pos] - '0');
      if (n > 1'000'000) fail("cardinality too large");
      ++pos;
    }
    if (b == pos) fail("expected a cardinality");
    if (n == 0) {
      pos = b;
      fail("cardinality must be at least 1");
    }
    return static_cast<std::uint32_t>(n);
  }
  FinType keyed(char key) {
    ws();
    std::size_t at = pos;
    if (pos >= s.size() || s[pos] != key) {
      pos = at;
      fail(std::string("expected '") + key + "='");
    }
    ++pos;
    expect('=');
    return FinType::enumeration(count());
  }

  Layer layer() {
    ws();
    std::size_t start = pos;
    std::string name = ident();
    expect('(');
    Layer l = Layer::except(FinType::unit());
    if (name == "ExceptT") {
      l = Layer::except(keyed('e'));
    } else if (name == "ReaderT") {
      l = Layer::reader(keyed('r'));
    } else if (name == "StateT") {
      l = Layer::state(keyed('s'));
    } else if (name == "WriterT") {
      ws();
      std::size_t at = pos;
      std::string m = ident();
      const MonoidSpec* spec = find_monoid(m);
      if (!spec) {
        pos = at;
        fail("unknown monoid '" + m + "' (built-ins: Trivial, Z2, Z3, T2)");
      }
      l = Layer::writer(*spec);
    } else {
      pos = start;
      fail("unknown layer '" + name + "' (expected ExceptT, ReaderT, WriterT, StateT or Id)");
    }
    expect(')');
    return l;
  }

  StackSpec stack(bool nested) {
    StackSpec spec;
    if (at_word("ReaderBase")) {
      if (nested) fail("ReaderBase may only appear at the top");
      pos += 10;
      expect('(');
      spec.reader_base = keyed('r');
      expect(',');
      StackSpec inner = stack(true);
      spec.layers = std::move(inner.layers);
      expect(')');
      return spec;
    }
    for (;;) {
      if (at_word("Id")) {
        pos += 2;
        return spec;
      }
      spec.layers.push_back(layer());
      expect('.');
    }
  }
};

}  // namespace

StackSpec parse_stack(std::string_view text) {
  StackReader r{text};
  StackSpec spec = r.stack(false);
  r.ws();
  if (r.pos != text.size()) r.fail("unexpected trailing input");
  return spec;
}

std::string stack_grammar_help() {
  return "stack := layer (\".\" layer)* \".\" \"Id\" | \"Id\" | \"ReaderBase(r=\" INT \",\" stack \")\"\n"
         "layer := \"ExceptT(e=\" INT \")\" | \"ReaderT(r=\" INT \")\" | \"WriterT(\" monoid \")\"\n"
         "       | \"StateT(s=\" INT \")\"\n"
         "monoid := Trivial | Z2 | Z3 | T2\n"
         "Layers are listed outermost first. ReaderBase(r=N, S) places the reader base\n"
         "r -> Id x underneath the layers of S.\n"
         "Examples: \"StateT(s=2).Id\", \"WriterT(T2).ExceptT(e=2).Id\", \"ReaderBase(r=2, Id)\"\n";
}

// ---------------------------------------------------------------------------

Stack::Stack(StackSpec spec, EffectKind effect, Mutation mutation)
    : spec_(std::move(spec)), effect_(effect), mutation_(mutation) {
  for (const Layer& l : spec_.layers) {
    if (!l.param.cardinality() || *l.param.cardinality() == 0)
      throw ConfigError("layer parameter must be a nonempty finite type");
    levels_.push_back({l.kind, l.param, l.monoid, false, nullptr});
  }
  if (spec_.reader_base) levels_.push_back({Layer::Kind::ReaderT, *spec_.reader_base, nullptr, true, nullptr});
  for (Level& lv : levels_)
    if (lv.kind == Layer::Kind::ReaderT || lv.kind == Layer::Kind::StateT) lv.values = &lv.param.values();

  std::optional<Layer::Kind> want;
  switch (effect_) {
    case EffectKind::None:
      break;
    case EffectKind::Exception:
      want = Layer::Kind::ExceptT;
      break;
    case EffectKind::Reader:
      want = Layer::Kind::ReaderT;
      break;
    case EffectKind::Writer:
      want = Layer::Kind::WriterT;
      break;
    case EffectKind::State:
      want = Layer::Kind::StateT;
      break;
  }
  if (spec_.designated) {
    std::size_t i = *spec_.designated;
    if (!want || i >= spec_.layers.size() || spec_.layers[i].kind != *want)
      throw ConfigError("designated layer " + std::to_string(i) + " does not match effect " +
                        std::string(effect_name(effect_)));
    if (effect_ == EffectKind::Reader && spec_.reader_base)
      throw ConfigError("a reader base and a designated ReaderT layer are mutually exclusive");
    designated_ = i;
  } else if (want) {
    if (effect_ == EffectKind::Reader && spec_.reader_base) {
      designated_ = levels_.size() - 1;
    } else {
      for (std::size_t i = spec_.layers.size(); i-- > 0;)
        if (spec_.layers[i].kind == *want) {
          designated_ = i;
          break;
        }
    }
  }
  if (designated_ && levels_[*designated_].kind == Layer::Kind::WriterT) {
    std::vector<Value> id;
    for (std::uint32_t i = 0; i < levels_[*designated_].monoid->size(); ++i)
      id.push_back(Value::elem(i));
    log_identity_ = Value::table(std::move(id));
  }
}

std::size_t Stack::require(EffectKind k, const char* op) const {
  if (effect_ != k || !designated_)
    throw UnavailablePrimitive(op, "no designated " + std::string(effect_name(k)) +
                                       " layer in " + spec_.to_string());
  return *designated_;
}

FinType Stack::param() const {
  if (!designated_) return FinType::unit();
  if (effect_ == EffectKind::Exception || effect_ == EffectKind::Reader)
    return levels_[*designated_].param;
  return FinType::unit();
}

Stack Stack::with_param(const FinType& p) const {
  if (!designated_ || (effect_ != EffectKind::Exception && effect_ != EffectKind::Reader))
    return *this;
  StackSpec s = spec_;
  if (levels_[*designated_].base)
    s.reader_base = p;
  else
    s.layers[*designated_].param = p;
  return Stack(std::move(s), effect_, mutation_);
}

Stack Stack::plain() const {
  StackSpec s = spec_;
  s.reader_base.reset();
  s.designated.reset();
  return Stack(std::move(s), EffectKind::None, mutation_);
}

FinType Stack::carrier(const FinType& x) const { return carrier_at(0, x); }

FinType Stack::carrier_at(std::size_t lv, const FinType& x) const {
  if (lv == levels_.size()) return x;
  const Level& L = levels_[lv];
  switch (L.kind) {
    case Layer::Kind::ExceptT:
      return carrier_at(lv + 1, FinType::sum(L.param, x));
    case Layer::Kind::ReaderT:
      return FinType::fn(L.param, carrier_at(lv + 1, x));
    case Layer::Kind::WriterT:
      return carrier_at(lv + 1, FinType::prod(x, L.param));
    case Layer::Kind::StateT:
      return FinType::fn(L.param, carrier_at(lv + 1, FinType::prod(x, L.param)));
  }
  return x;
}

// ---------------------------------------------------------------------------
// Monad structure, by recursion from the outermost level inwards.

Value Stack::unit(const Value& a) const { return unit_at(0, a); }
Value Stack::bind(FnRef k, const Value& t) const { return bind_at(0, k, t); }
Value Stack::fmap(FnRef f, const Value& t) const { return fmap_at(0, f, t); }

Value Stack::unit_at(std::size_t lv, const Value& a) const {
  if (lv == levels_.size()) return a;
  const Level& L = levels_[lv];
  switch (L.kind) {
    case Layer::Kind::ExceptT:
      return unit_at(lv + 1, Value::inr(a));
    case Layer::Kind::ReaderT:
      return Value::table(std::vector<Value>(L.values->size(), unit_at(lv + 1, a)));
    case Layer::Kind::WriterT:
      return unit_at(lv + 1, Value::pair(a, L.monoid->unit_value()));
    case Layer::Kind::StateT: {
      std::vector<Value> es;
      es.reserve(L.values->size());
      for (const Value& s : *L.values) es.push_back(unit_at(lv + 1, Value::pair(a, s)));
      return Value::table(std::move(es));
    }
  }
  return a;
}

Value Stack::bind_at(std::size_t lv, FnRef k, const Value& t) const {
  if (lv == levels_.size()) return k(t);
  const Level& L = levels_[lv];
  switch (L.kind) {
    case Layer::Kind::ExceptT:
      return bind_at(
          lv + 1,
          [&](const Value& v) {
            return v.kind() == Value::Kind::InL ? unit_at(lv + 1, v) : k(v.payload());
          },
          t);
    case Layer::Kind::ReaderT: {
      std::vector<Value> es;
      es.reserve(t.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        es.push_back(bind_at(lv + 1, [&](const Value& a) { return k(a).at(i); }, t.at(i)));
      return Value::table(std::move(es));
    }
    case Layer::Kind::WriterT: {
      const MonoidSpec& m = *L.monoid;
      bool drop = mutation_ == Mutation::WriterBindDropsLog;
      return bind_at(
          lv + 1,
          [&](const Value& p) {
            const Value& w = p.second();
            return fmap_at(
                lv + 1,
                [&](const Value& q) {
                  return Value::pair(q.first(), drop ? w : m.mult(w, q.second()));
                },
                k(p.first()));
          },
          t);
    }
    case Layer::Kind::StateT: {
      std::vector<Value> es;
      es.reserve(t.size());
      for (std::size_t i = 0; i < t.size(); ++i)
        es.push_back(bind_at(
            lv + 1,
            [&](const Value& p) {
              return k(p.first()).at(static_cast<std::size_t>(index_of(p.second(), L.param)));
            },
            t.at(i)));
      return Value::table(std::move(es));
    }
  }
  return t;
}

Value Stack::fmap_at(std::size_t lv, FnRef f, const Value& t) const {
  if (lv == levels_.size()) return f(t);
  const Level& L = levels_[lv];
  switch (L.kind) {
    case Layer::Kind::ExceptT:
      return fmap_at(
          lv + 1,
          [&](const Value& v) {
            return v.kind() == Value::Kind::InL ? v : Value::inr(f(v.payload()));
          },
          t);
    case Layer::Kind::ReaderT: {
      std::vector<Value> es;
      es.reserve(t.size());
      for (const Value& e : t.entries()) es.push_back(fmap_at(lv + 1, f, e));
      return Value::table(std::move(es));
    }
    case Layer::Kind::WriterT:
    case Layer::Kind::StateT: {
      auto cell = [&](const Value& p) { return Value::pair(f(p.first()), p.second()); };
      if (L.kind == Layer::Kind::WriterT) return fmap_at(lv + 1, cell, t);
      std::vector<Value> es;
      es.reserve(t.size());
      for (const Value& e : t.entries()) es.push_back(fmap_at(lv + 1, cell, e));
      return Value::table(std::move(es));
    }
  }
  return t;
}

// Lifts a computation built at level d (a value of the carrier at d) out to
// level 0 through the standard monad-transformer lift of each outer layer.
Value Stack::lift_to_top(std::size_t d, Value m) const {
  for (std::size_t lv = d; lv-- > 0;) {
    const Level& L = levels_[lv];
    switch (L.kind) {
      case Layer::Kind::ExceptT:
        m = fmap_at(lv + 1, [](const Value& a) { return Value::inr(a); }, m);
        break;
      case Layer::Kind::ReaderT:
        m = Value::table(std::vector<Value>(L.values->size(), m));
        break;
      case Layer::Kind::WriterT: {
        Value one = L.monoid->unit_value();
        m = fmap_at(lv + 1, [&](const Value& a) { return Value::pair(a, one); }, m);
        break;
      }
      case Layer::Kind::StateT: {
        std::vector<Value> es;
        es.reserve(L.values->size());
        for (const Value& s : *L.values)
          es.push_back(fmap_at(lv + 1, [&](const Value& a) { return Value::pair(a, s); }, m));
        m = Value::table(std::move(es));
        break;
      }
    }
  }
  return m;
}

// Applies op (a natural transformation on the carrier at level d) under the
// outer layers: directly through ExceptT and WriterT, pointwise through
// ReaderT and StateT.
template <class Op>
Value Stack::map_through(std::size_t lv, std::size_t d, const Op& op, const Value& t) const {
  if (lv == d) return op(t);
  const Level& L = levels_[lv];
  if (L.kind == Layer::Kind::ExceptT || L.kind == Layer::Kind::WriterT)
    return map_through(lv + 1, d, op, t);
  std::vector<Value> es;
  es.reserve(t.size());
  for (const Value& e : t.entries()) es.push_back(map_through(lv + 1, d, op, e));
  return Value::table(std::move(es));
}

// ---------------------------------------------------------------------------
// exception

Value Stack::raise(const Value& e) const {
  std::size_t d = require(EffectKind::Exception, "raise");
  return lift_to_top(d, unit_at(d + 1, Value::inl(e)));
}

Value Stack::catch_error(FnRef h, const Value& t) const {
  require(EffectKind::Exception, "catch");
  return catch_at(0, h, t);
}

Value Stack::catch_at(std::size_t lv, FnRef h, const Value& t) const {
  std::size_t d = *designated_;
  if (lv == d) {
    bool never = mutation_ == Mutation::CatchNeverHandles;
    return bind_at(
        d + 1,
        [&](const Value& v) {
          if (v.kind() == Value::Kind::InL && !never) return h(v.payload());
          return unit_at(d + 1, v);
        },
        t);
  }
  const Level& L = levels_[lv];
  if (L.kind == Layer::Kind::ExceptT || L.kind == Layer::Kind::WriterT) return catch_at(lv + 1, h, t);
  std::vector<Value> es;
  es.reserve(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    es.push_back(catch_at(lv + 1, [&](const Value& e) { return h(e).at(i); }, t.at(i)));
  return Value::table(std::move(es));
}

Value Stack::map_error(FnRef h, const Value& t) const {
  std::size_t d = require(EffectKind::Exception, "bimap");
  auto op = [&](const Value& td) {
    return fmap_at(
        d + 1,
        [&](const Value& v) { return v.kind() == Value::Kind::InL ? Value::inl(h(v.payload())) : v; },
        td);
  };
  return map_through(0, d, op, t);
}

Value Stack::exc_rho(const Value& v) const {
  return v.kind() == Value::Kind::InL ? raise(v.payload()) : unit(v.payload());
}

Value Stack::handle(FnRef k, const Value& t) const {
  require(EffectKind::Exception, "handle");
  // k-bind . (raise \/ unit)-catch . F(inr . inl, inr)
  Value t1 = map_error([](const Value& e) { return Value::inr(Value::inl(e)); },
                       fmap([](const Value& a) { return Value::inr(a); }, t));
  Value t2 = catch_error([&](const Value& u) { return exc_rho(u); }, t1);
  return bind(k, t2);
}

Value Stack::exc_mixmap(FnRef g, const Value& t) const {
  return handle([&](const Value& v) { return exc_rho(g(v)); }, t);
}

Value Stack::fusel(const Value& t) const {
  return exc_mixmap(
      [](const Value& v) { return v.kind() == Value::Kind::InL ? v : v.payload(); }, t);
}

Value Stack::fuser(const Value& t) const {
  return exc_mixmap(
      [](const Value& v) { return v.kind() == Value::Kind::InL ? v.payload() : v; }, t);
}

// ---------------------------------------------------------------------------
// reader

Value Stack::rdr_rho(FnRef f) const {
  std::size_t d = require(EffectKind::Reader, "rho");
  const Level& L = levels_[d];
  std::vector<Value> es;
  es.reserve(L.values->size());
  for (const Value& r : *L.values) es.push_back(unit_at(d + 1, f(r)));
  return lift_to_top(d, Value::table(std::move(es)));
}

Value Stack::ask() const {
  return rdr_rho([](const Value& r) { return r; });
}

Value Stack::local(FnRef h, const FinType& from_env, const Value& t) const {
  std::size_t d = require(EffectKind::Reader, "local");
  const Level& L = levels_[d];
  auto op = [&](const Value& td) {
    std::vector<Value> es;
    es.reserve(L.values->size());
    for (const Value& r : *L.values) es.push_back(apply_table(td, h(r), from_env));
    return Value::table(std::move(es));
  };
  return map_through(0, d, op, t);
}

Value Stack::apply(const Value& t) const {
  std::size_t d = require(EffectKind::Reader, "apply");
  if (!levels_[d].base) throw UnavailablePrimitive("apply", "needs a reader base");
  return Value::table(apply_at(0, t));
}

std::vector<Value> Stack::apply_at(std::size_t lv, const Value& t) const {
  std::size_t d = *designated_;
  if (lv == d) return std::vector<Value>(t.entries().begin(), t.entries().end());
  const Level& L = levels_[lv];
  if (L.kind == Layer::Kind::ExceptT || L.kind == Layer::Kind::WriterT) return apply_at(lv + 1, t);
  // apply t r = \q. apply (t q) r
  std::size_t nr = levels_[d].values->size();
  std::vector<std::vector<Value>> cols;
  cols.reserve(t.size());
  for (const Value& e : t.entries()) cols.push_back(apply_at(lv + 1, e));
  std::vector<Value> out;
  out.reserve(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    std::vector<Value> es;
    es.reserve(cols.size());
    for (const auto& c : cols) es.push_back(c[r]);
    out.push_back(Value::table(std::move(es)));
  }
  return out;
}

Value Stack::abstr(const Value& f) const {
  std::size_t d = require(EffectKind::Reader, "abstr");
  if (!levels_[d].base) throw UnavailablePrimitive("abstr", "needs a reader base");
  return abstr_at(0, std::vector<Value>(f.entries().begin(), f.entries().end()));
}

Value Stack::abstr_at(std::size_t lv, const std::vector<Value>& f) const {
  std::size_t d = *designated_;
  if (lv == d) return Value::table(f);
  const Level& L = levels_[lv];
  if (L.kind == Layer::Kind::ExceptT || L.kind == Layer::Kind::WriterT) return abstr_at(lv + 1, f);
  // abstr f = \q. abstr (\r. f r q)
  std::vector<Value> es;
  es.reserve(L.values->size());
  for (std::size_t q = 0; q < L.values->size(); ++q) {
    std::vector<Value> col;
    col.reserve(f.size());
    for (const Value& fr : f) col.push_back(fr.at(q));
    es.push_back(abstr_at(lv + 1, col));
  }
  return Value::table(std::move(es));
}

// ---------------------------------------------------------------------------
// writer

const MonoidSpec& Stack::monoid() const {
  return *levels_[require(EffectKind::Writer, "mult")].monoid;
}

Value Stack::writer(const Value& p) const {
  std::size_t d = require(EffectKind::Writer, "rho");
  return lift_to_top(d, unit_at(d + 1, p));
}

Value Stack::tell(const Value& w) const { return writer(Value::pair(Value::star(), w)); }

Value Stack::listen(const Value& t) const {
  require(EffectKind::Writer, "listen");
  return listen_at(0, t);
}

Value Stack::listen_at(std::size_t lv, const Value& t) const {
  std::size_t d = *designated_;
  if (lv == d)
    return fmap_at(d + 1, [](const Value& p) { return Value::pair(p, p.second()); }, t);
  const Level& L = levels_[lv];
  switch (L.kind) {
    case Layer::Kind::ReaderT: {
      std::vector<Value> es;
      es.reserve(t.size());
      for (const Value& e : t.entries()) es.push_back(listen_at(lv + 1, e));
      return Value::table(std::move(es));
    }
    case Layer::Kind::StateT:
    case Layer::Kind::WriterT: {
      // ((a, c), w) -> ((a, w), c), c being the outer state or log
      auto swap = [](const Value& q) {
        return Value::pair(Value::pair(q.first().first(), q.second()), q.first().second());
      };
      if (L.kind == Layer::Kind::WriterT) return fmap_at(lv + 1, swap, listen_at(lv + 1, t));
      std::vector<Value> es;
      es.reserve(t.size());
      for (const Value& e : t.entries()) es.push_back(fmap_at(lv + 1, swap, listen_at(lv + 1, e)));
      return Value::table(std::move(es));
    }
    case Layer::Kind::ExceptT:
      return fmap_at(
          lv + 1,
          [](const Value& q) {
            const Value& v = q.first();
            return v.kind() == Value::Kind::InL ? v : Value::inr(Value::pair(v.payload(), q.second()));
          },
          listen_at(lv + 1, t));
  }
  return t;
}

Value Stack::pass(const Value& t) const {
  require(EffectKind::Writer, "pass");
  return pass_at(0, t);
}

Value Stack::pass_at(std::size_t lv, const Value& t) const {
  std::size_t d = *designated_;
  if (lv == d)
    return fmap_at(
        d + 1,
        [](const Value& q) {
          const Value& f = q.first().second();
          return Value::pair(q.first().first(), f.at(q.second().index()));
        },
        t);
  const Level& L = levels_[lv];
  switch (L.kind) {
    case Layer::Kind::ReaderT: {
      std::vector<Value> es;
      es.reserve(t.size());
      for (const Value& e : t.entries()) es.push_back(pass_at(lv + 1, e));
      return Value::table(std::move(es));
    }
    case Layer::Kind::StateT:
    case Layer::Kind::WriterT: {
      // ((a, f), c) -> ((a, c), f)
      auto swap = [](const Value& q) {
        return Value::pair(Value::pair(q.first().first(), q.second()), q.first().second());
      };
      if (L.kind == Layer::Kind::WriterT) return pass_at(lv + 1, fmap_at(lv + 1, swap, t));
      std::vector<Value> es;
      es.reserve(t.size());
      for (const Value& e : t.entries()) es.push_back(pass_at(lv + 1, fmap_at(lv + 1, swap, e)));
      return Value::table(std::move(es));
    }
    case Layer::Kind::ExceptT:
      return pass_at(lv + 1, fmap_at(
                                 lv + 1,
                                 [&](const Value& v) {
                                   if (v.kind() == Value::Kind::InL) return Value::pair(v, log_identity_);
                                   return Value::pair(Value::inr(v.payload().first()),
                                                      v.payload().second());
                                 },
                                 t));
  }
  return t;
}

Value Stack::wrt_mixmap(FnRef g, const Value& t) const {
  std::size_t d = require(EffectKind::Writer, "mixmap");
  std::size_t n = levels_[d].monoid->size();
  // pass . fmap (bimap id const . g) . listen
  return pass(fmap(
      [&](const Value& p) {
        Value q = g(p);
        return Value::pair(q.first(), Value::table(std::vector<Value>(n, q.second())));
      },
      listen(t)));
}

Value Stack::shift(const Value& t) const {
  Value one = monoid().unit_value();
  return wrt_mixmap([&](const Value& p) { return Value::pair(p, one); }, t);
}

Value Stack::fuse(const Value& t) const {
  const MonoidSpec& m = monoid();
  // ((a, w'), w) -> (a, w . w')
  return wrt_mixmap(
      [&](const Value& p) {
        return Value::pair(p.first().first(), m.mult(p.second(), p.first().second()));
      },
      t);
}

Value Stack::hdl(FnRef k, const Value& t) const { return bind(k, shift(t)); }

Value Stack::pbnd(FnRef k, const Value& p) const { return bind(k, writer(p)); }

Value Stack::logmap(FnRef h, const Value& t) const {
  std::size_t d = require(EffectKind::Writer, "logmap");
  auto op = [&](const Value& td) {
    return fmap_at(
        d + 1, [&](const Value& p) { return Value::pair(p.first(), h(p.second())); }, td);
  };
  return map_through(0, d, op, t);
}

// ---------------------------------------------------------------------------
// state

const FinType& Stack::state_type() const {
  return levels_[require(EffectKind::State, "get")].param;
}

Value Stack::get() const {
  std::size_t d = require(EffectKind::State, "get");
  const Level& L = levels_[d];
  std::vector<Value> es;
  es.reserve(L.values->size());
  for (const Value& s : *L.values) es.push_back(unit_at(d + 1, Value::pair(s, s)));
  return lift_to_top(d, Value::table(std::move(es)));
}

Value Stack::put(const Value& s0) const {
  std::size_t d = require(EffectKind::State, "put");
  const Level& L = levels_[d];
  bool ignore = mutation_ == Mutation::PutIgnoresArg;
  std::vector<Value> es;
  es.reserve(L.values->size());
  for (const Value& s : *L.values) es.push_back(unit_at(d + 1, Value::pair(Value::star(), ignore ? s : s0)));
  return lift_to_top(d, Value::table(std::move(es)));
}

Value Stack::state(FnRef f) const {
  std::size_t d = require(EffectKind::State, "state");
  const Level& L = levels_[d];
  std::vector<Value> es;
  es.reserve(L.values->size());
  for (const Value& s : *L.values) es.push_back(unit_at(d + 1, f(s)));
  return lift_to_top(d, Value::table(std::move(es)));
}

Value Stack::modify(FnRef f) const {
  return state([&](const Value& s) { return Value::pair(Value::star(), f(s)); });
}

}  // namespace monadlaw
