#include <cctype>
#include <functional>
#include <set>

#include "monadlaw/error.hpp"
#include "monadlaw/typed_law.hpp"
#include "runtime.hpp"

namespace monadlaw {

using rt::RVal;

// ---------------------------------------------------------------------------
// Domain

std::optional<std::uint64_t> Domain::size() const {
  if (listed) return listed->size();
  return type.cardinality();
}

Value Domain::at(std::uint64_t i) const {
  if (listed) return (*listed)[static_cast<std::size_t>(i)];
  return value_at(type, i);
}

namespace {

// ---------------------------------------------------------------------------
// Types with metavariables

struct Ty;
using TyP = std::shared_ptr<const Ty>;

struct Ty {
  enum class K { Meta, Unit, Name, Sum, Prod, Fn, F, N };
  K k;
  int meta = -1;
  std::string name;
  TyP a, b;
};

TyP mk(Ty::K k, TyP a = nullptr, TyP b = nullptr) {
  return std::make_shared<const Ty>(Ty{k, -1, "", std::move(a), std::move(b)});
}
TyP named(std::string n) { return std::make_shared<const Ty>(Ty{Ty::K::Name, -1, std::move(n), nullptr, nullptr}); }

class Unifier {
 public:
  TyP fresh(bool param = false) {
    int id = static_cast<int>(sub_.size());
    sub_.push_back(nullptr);
    param_.push_back(param);
    return std::make_shared<const Ty>(Ty{Ty::K::Meta, id, "", nullptr, nullptr});
  }

  TyP walk(TyP t) const {
    while (t->k == Ty::K::Meta && sub_[t->meta]) t = sub_[t->meta];
    return t;
  }

  void mark_param(const TyP& t) {
    TyP w = walk(t);
    if (w->k == Ty::K::Meta) param_[w->meta] = true;
  }

  bool unify(const TyP& x, const TyP& y) {
    TyP a = walk(x), b = walk(y);
    if (a->k == Ty::K::Meta && b->k == Ty::K::Meta && a->meta == b->meta) return true;
    if (a->k == Ty::K::Meta) return bind(a->meta, b);
    if (b->k == Ty::K::Meta) return bind(b->meta, a);
    if (a->k != b->k) return false;
    switch (a->k) {
      case Ty::K::Unit:
        return true;
      case Ty::K::Name:
        return a->name == b->name;
      case Ty::K::F:
        mark_param(a->a);
        mark_param(b->a);
        return unify(a->a, b->a) && unify(a->b, b->b);
      case Ty::K::N:
        return unify(a->a, b->a);
      default:
        return unify(a->a, b->a) && unify(a->b, b->b);
    }
  }

  TyP zonk(const TyP& t) const {
    TyP w = walk(t);
    switch (w->k) {
      case Ty::K::Meta:
      case Ty::K::Unit:
      case Ty::K::Name:
        return w;
      case Ty::K::N:
        return mk(w->k, zonk(w->a));
      default:
        return mk(w->k, zonk(w->a), zonk(w->b));
    }
  }

  // Binds every unresolved metavariable: effect parameters to p0, others to X.
  void default_all(const TyP& p0) {
    for (std::size_t m = 0; m < sub_.size(); ++m)
      if (!sub_[m]) sub_[m] = param_[m] ? p0 : named("X");
  }

 private:
  bool occurs(int m, const TyP& t) const {
    TyP w = walk(t);
    if (w->k == Ty::K::Meta) return w->meta == m;
    return (w->a && occurs(m, w->a)) || (w->b && occurs(m, w->b));
  }
  bool bind(int m, const TyP& t) {
    if (occurs(m, t)) return false;
    sub_[m] = t;
    if (param_[m]) mark_param(t);
    return true;
  }

  std::vector<TyP> sub_;
  std::vector<bool> param_;
};

// ---------------------------------------------------------------------------
// Typed tree produced by inference

struct TPat {
  Pattern::Kind kind;
  int slot = -1;
  TyP ty;
  std::unique_ptr<TPat> a, b;
};

struct TNode {
  Expr::Kind kind;
  const Expr* src;
  TyP ty;
  // Var
  enum class Ref { Local, Binder, Prim } ref = Ref::Local;
  int slot = -1;
  const rt::PrimDef* prim = nullptr;
  std::map<std::string, TyP> generics;
  TyP inst;
  // Lam
  std::unique_ptr<TPat> pat;
  // Bind / Then: monad parameter
  TyP param;
  std::unique_ptr<TNode> a, b;
};

// ---------------------------------------------------------------------------
// Runtime tree

struct RPat {
  Pattern::Kind kind;
  FinType type;
  std::unique_ptr<RPat> a, b;
};

struct Node {
  Expr::Kind kind;
  int slot = -1;
  rt::Site site;
  std::unique_ptr<RPat> pat;
  FinType t1, t2;  // App: fn type; Compose: types of f and g; Bind: m and k; Then: m and n
  const Stack* st = nullptr;
  std::unique_ptr<Node> a, b;
};

using Env = std::vector<RVal>;

RVal eval(const Node& n, const Env& env);

void bind_pattern(const RPat& p, const RVal& v, Env& env) {
  switch (p.kind) {
    case Pattern::Kind::Var:
      env.push_back(v);
      return;
    case Pattern::Kind::Wild:
      return;
    case Pattern::Kind::Pair: {
      Value x = rt::force(v, p.type);
      bind_pattern(*p.a, x.first(), env);
      bind_pattern(*p.b, x.second(), env);
      return;
    }
  }
}

class Closure : public rt::Fun {
 public:
  Closure(const Node& lam, Env env) : lam_(lam), env_(std::move(env)) {}
  RVal call(const RVal& arg) const override {
    Env env = env_;
    bind_pattern(*lam_.pat, arg, env);
    return eval(*lam_.a, env);
  }

 private:
  const Node& lam_;
  Env env_;
};

class Composite : public rt::Fun {
 public:
  Composite(const Node& n, RVal f, RVal g) : n_(n), f_(std::move(f)), g_(std::move(g)) {}
  RVal call(const RVal& arg) const override {
    return rt::call(f_, rt::call(g_, arg, n_.t2), n_.t1);
  }

 private:
  const Node& n_;
  RVal f_, g_;
};

RVal eval(const Node& n, const Env& env) {
  switch (n.kind) {
    case Expr::Kind::Var:
      if (n.site.def) return rt::start_prim(n.site);
      return env[static_cast<std::size_t>(n.slot)];
    case Expr::Kind::Lam:
      return std::make_shared<Closure>(n, env);
    case Expr::Kind::App:
      return rt::call(eval(*n.a, env), eval(*n.b, env), n.t1);
    case Expr::Kind::Compose:
      return std::make_shared<Composite>(n, eval(*n.a, env), eval(*n.b, env));
    case Expr::Kind::Bind: {
      Value m = rt::force(eval(*n.a, env), n.t1);
      RVal k = eval(*n.b, env);
      return n.st->bind(rt::Unary{k, n.t2}, m);
    }
    case Expr::Kind::Then: {
      Value m = rt::force(eval(*n.a, env), n.t1);
      Value next = rt::force(eval(*n.b, env), n.t2);
      return n.st->bind([&](const Value&) { return next; }, m);
    }
    case Expr::Kind::Annot:
      return eval(*n.a, env);
  }
  return Value::star();
}

std::string pos_text(const SrcPos& p) { return std::to_string(p.line) + ":" + std::to_string(p.col); }

bool is_generic_name(const std::string& n) {
  return !n.empty() && std::islower(static_cast<unsigned char>(n[0]));
}

}  // namespace

// ---------------------------------------------------------------------------

struct TypedLaw::Impl {
  LawExpr law;
  LawContext ctx;
  std::vector<BinderInfo> binders;
  FinType compared;
  FinType law_type;
  bool has_ambient = false;
  std::string symbolic;
  std::map<std::string, FinType> assignment;
  std::unique_ptr<Node> lhs, rhs;
  std::unique_ptr<Stack> base;
  std::unique_ptr<Stack> plain;
  std::map<std::string, std::unique_ptr<Stack>> by_param;
};

namespace {

class Checker {
 public:
  Checker(const LawExpr& law, const LawContext& ctx, TypedLaw::Impl& out)
      : law_(law), ctx_(ctx), out_(out) {
    out_.base = std::make_unique<Stack>(ctx.stack, ctx.effect, ctx.mutation);
    switch (ctx.effect) {
      case EffectKind::Exception:
        p0_ = named("E");
        fixed_ = {"E"};
        break;
      case EffectKind::Reader:
        p0_ = named("R");
        fixed_ = {"R"};
        break;
      case EffectKind::Writer:
        p0_ = mk(Ty::K::Unit);
        fixed_ = {"W"};
        break;
      case EffectKind::State:
        p0_ = mk(Ty::K::Unit);
        fixed_ = {"S"};
        break;
      case EffectKind::None:
        p0_ = mk(Ty::K::Unit);
        break;
    }
    for (const auto& [name, type] : ctx.types) {
      if (fixed_.count(name))
        throw ConfigError("type " + name + " is fixed by the stack and cannot be overridden");
      if (type.cardinality() == std::optional<std::uint64_t>(0))
        throw ConfigError("type " + name + " must have at least one element");
    }
  }

  void run() {
    const Stack& base = *out_.base;
    if (ctx_.effect != EffectKind::None && !base.has_designated()) {
      // Reported through the first effect primitive the law uses.
      no_layer_ = true;
    }

    // Binders
    std::vector<TyP> binder_ty;
    std::vector<bool> endo;
    for (const Binder& b : law_.binders) {
      bool is_endo = false;
      TyP t = convert(*b.type, nullptr, &is_endo);
      binder_ty.push_back(t);
      endo.push_back(is_endo);
      binders_.push_back({b.name, t});
    }

    std::unique_ptr<TNode> lhs = infer(*law_.lhs);
    std::unique_ptr<TNode> rhs = infer(*law_.rhs);
    if (!u_.unify(lhs->ty, rhs->ty))
      throw TypeError("law " + law_.name + ": sides have different types " + show(lhs->ty) + " and " +
                      show(rhs->ty));

    u_.default_all(p0_);
    TyP law_ty = u_.zonk(lhs->ty);
    out_.symbolic = show(law_ty);

    for (std::size_t i = 0; i < law_.binders.size(); ++i) {
      const Binder& b = law_.binders[i];
      BinderInfo info;
      info.name = b.name;
      info.type_text = print_type(*b.type);
      info.domain.type = ground(binder_ty[i]);
      if (endo[i]) {
        if (ctx_.effect != EffectKind::Writer || !base.has_designated())
          throw TypeError("Endo W needs a designated writer layer");
        info.domain.listed = monoid_endomorphisms(base.monoid());
      }
      out_.binders.push_back(std::move(info));
    }

    out_.law_type = ground(law_ty);
    if (law_ty->k == Ty::K::Fn) {
      out_.has_ambient = true;
      BinderInfo amb;
      amb.name = "input";
      amb.type_text = show(law_ty->a);
      amb.domain.type = out_.law_type.dom();
      amb.ambient = true;
      out_.binders.push_back(std::move(amb));
      out_.compared = out_.law_type.cod();
    } else {
      out_.compared = out_.law_type;
    }

    out_.lhs = compile(*lhs);
    out_.rhs = compile(*rhs);
  }

 private:
  // ---- types ----

  std::string show(const TyP& t) const {
    std::function<TypePtr(const TyP&)> back = [&](const TyP& x) -> TypePtr {
      TyP w = u_.walk(x);
      auto node = [&](TypeExpr::Kind k, TypePtr a = nullptr, TypePtr b = nullptr, std::string n = "") {
        return std::make_shared<const TypeExpr>(TypeExpr{k, std::move(n), std::move(a), std::move(b), {}});
      };
      switch (w->k) {
        case Ty::K::Meta:
          return node(TypeExpr::Kind::Name, nullptr, nullptr, "?" + std::to_string(w->meta));
        case Ty::K::Unit:
          return node(TypeExpr::Kind::Unit);
        case Ty::K::Name:
          return node(TypeExpr::Kind::Name, nullptr, nullptr, w->name);
        case Ty::K::Sum:
          return node(TypeExpr::Kind::Sum, back(w->a), back(w->b));
        case Ty::K::Prod:
          return node(TypeExpr::Kind::Prod, back(w->a), back(w->b));
        case Ty::K::Fn:
          return node(TypeExpr::Kind::Fn, back(w->a), back(w->b));
        case Ty::K::N:
          return node(TypeExpr::Kind::N, back(w->a));
        case Ty::K::F: {
          TyP p = u_.zonk(w->a);
          if (same(p, p0_)) return node(TypeExpr::Kind::M, back(w->b));
          return node(TypeExpr::Kind::F, back(w->a), back(w->b));
        }
      }
      return node(TypeExpr::Kind::Unit);
    };
    return print_type(*back(t));
  }

  static bool same(const TyP& a, const TyP& b) {
    if (a->k != b->k || a->name != b->name || a->meta != b->meta) return false;
    if (bool(a->a) != bool(b->a) || bool(a->b) != bool(b->b)) return false;
    return (!a->a || same(a->a, b->a)) && (!a->b || same(a->b, b->b));
  }

  TyP expand_j(const TyP& a, const SrcPos& pos) {
    switch (ctx_.effect) {
      case EffectKind::Exception:
        return mk(Ty::K::Sum, named("E"), a);
      case EffectKind::Reader:
        return mk(Ty::K::Fn, named("R"), a);
      case EffectKind::Writer:
        return mk(Ty::K::Prod, a, named("W"));
      case EffectKind::State:
        return mk(Ty::K::Fn, named("S"), mk(Ty::K::Prod, a, named("S")));
      case EffectKind::None:
        break;
    }
    throw TypeError(pos_text(pos) + ": J is only defined for an effect");
  }

  TyP convert(const TypeExpr& t, std::map<std::string, TyP>* generics, bool* endo) {
    switch (t.kind) {
      case TypeExpr::Kind::Name:
        if (generics && is_generic_name(t.name)) {
          auto it = generics->find(t.name);
          if (it != generics->end()) return it->second;
          TyP m = u_.fresh();
          (*generics)[t.name] = m;
          return m;
        }
        return named(t.name);
      case TypeExpr::Kind::Unit:
        return mk(Ty::K::Unit);
      case TypeExpr::Kind::Sum:
        return mk(Ty::K::Sum, convert(*t.a, generics, nullptr), convert(*t.b, generics, nullptr));
      case TypeExpr::Kind::Prod:
        return mk(Ty::K::Prod, convert(*t.a, generics, nullptr), convert(*t.b, generics, nullptr));
      case TypeExpr::Kind::Fn:
        return mk(Ty::K::Fn, convert(*t.a, generics, nullptr), convert(*t.b, generics, nullptr));
      case TypeExpr::Kind::M:
        return mk(Ty::K::F, p0_, convert(*t.a, generics, nullptr));
      case TypeExpr::Kind::N:
        if (!out_.base->has_reader_base()) throw UnavailablePrimitive("N", "needs a reader base");
        return mk(Ty::K::N, convert(*t.a, generics, nullptr));
      case TypeExpr::Kind::J:
        return expand_j(convert(*t.a, generics, nullptr), t.pos);
      case TypeExpr::Kind::F: {
        TyP p = convert(*t.a, generics, nullptr);
        u_.mark_param(p);
        return mk(Ty::K::F, p, convert(*t.b, generics, nullptr));
      }
      case TypeExpr::Kind::Endo: {
        if (!endo) throw TypeError(pos_text(t.pos) + ": Endo is only allowed as a binder type");
        *endo = true;
        TyP w = convert(*t.a, generics, nullptr);
        if (w->k != Ty::K::Name || w->name != "W")
          throw TypeError(pos_text(t.pos) + ": Endo is only defined for the log type W");
        return mk(Ty::K::Fn, w, w);
      }
    }
    throw InvariantViolation("unknown type node");
  }

  FinType name_type(const std::string& n) {
    if (fixed_.count(n)) {
      const Stack& base = *out_.base;
      if (!base.has_designated())
        throw TypeError("type " + n + " needs a designated " + std::string(effect_name(ctx_.effect)) +
                        " layer in " + ctx_.stack.to_string());
      FinType t;
      switch (ctx_.effect) {
        case EffectKind::Exception:
        case EffectKind::Reader:
          t = base.param();
          break;
        case EffectKind::Writer:
          t = base.monoid().carrier();
          break;
        case EffectKind::State:
          t = base.state_type();
          break;
        case EffectKind::None:
          break;
      }
      out_.assignment[n] = t;
      return t;
    }
    auto it = ctx_.types.find(n);
    FinType t = it == ctx_.types.end() ? FinType::enumeration(2) : it->second;
    out_.assignment[n] = t;
    return t;
  }

  const Stack& stack_for(const FinType& p) {
    Stack& base = *out_.base;
    if (p == base.param()) return base;
    std::string key = p.to_string();
    auto it = out_.by_param.find(key);
    if (it != out_.by_param.end()) return *it->second;
    auto s = std::make_unique<Stack>(base.with_param(p));
    const Stack& ref = *s;
    out_.by_param.emplace(key, std::move(s));
    return ref;
  }

  const Stack& plain() {
    if (!out_.plain) out_.plain = std::make_unique<Stack>(out_.base->plain());
    return *out_.plain;
  }

  FinType ground(const TyP& t) {
    TyP w = u_.walk(t);
    switch (w->k) {
      case Ty::K::Meta:
        throw InvariantViolation("unresolved type variable");
      case Ty::K::Unit:
        return FinType::unit();
      case Ty::K::Name:
        return name_type(w->name);
      case Ty::K::Sum:
        return FinType::sum(ground(w->a), ground(w->b));
      case Ty::K::Prod:
        return FinType::prod(ground(w->a), ground(w->b));
      case Ty::K::Fn:
        return FinType::fn(ground(w->a), ground(w->b));
      case Ty::K::F:
        return stack_for(ground(w->a)).carrier(ground(w->b));
      case Ty::K::N:
        return plain().carrier(ground(w->a));
    }
    throw InvariantViolation("unknown type");
  }

  // ---- inference ----

  void unify_at(const TyP& a, const TyP& b, const Expr& e) {
    if (!u_.unify(a, b))
      throw TypeError(pos_text(e.pos) + ": cannot unify " + show(a) + " with " + show(b) + " in '" +
                      print_expr(e) + "'");
  }

  std::unique_ptr<TPat> pattern(const Pattern& p) {
    auto tp = std::make_unique<TPat>();
    tp->kind = p.kind;
    switch (p.kind) {
      case Pattern::Kind::Var:
        tp->ty = p.type ? convert(*p.type, nullptr, nullptr) : u_.fresh();
        tp->slot = static_cast<int>(locals_.size()) + static_cast<int>(law_.binders.size());
        locals_.push_back({p.name, tp->ty});
        break;
      case Pattern::Kind::Wild:
        tp->ty = u_.fresh();
        break;
      case Pattern::Kind::Pair:
        tp->a = pattern(*p.a);
        tp->b = pattern(*p.b);
        tp->ty = mk(Ty::K::Prod, tp->a->ty, tp->b->ty);
        break;
    }
    return tp;
  }

  std::unique_ptr<TNode> infer(const Expr& e) {
    auto n = std::make_unique<TNode>();
    n->kind = e.kind;
    n->src = &e;
    switch (e.kind) {
      case Expr::Kind::Var:
        resolve_var(e, *n);
        break;
      case Expr::Kind::Lam: {
        std::size_t depth = locals_.size();
        n->pat = pattern(*e.pat);
        n->a = infer(*e.a);
        locals_.resize(depth);
        n->ty = mk(Ty::K::Fn, n->pat->ty, n->a->ty);
        break;
      }
      case Expr::Kind::App: {
        n->a = infer(*e.a);
        n->b = infer(*e.b);
        TyP r = u_.fresh();
        unify_at(n->a->ty, mk(Ty::K::Fn, n->b->ty, r), e);
        n->ty = r;
        break;
      }
      case Expr::Kind::Compose: {
        n->a = infer(*e.a);
        n->b = infer(*e.b);
        TyP x = u_.fresh(), y = u_.fresh(), z = u_.fresh();
        unify_at(n->b->ty, mk(Ty::K::Fn, x, y), *e.b);
        unify_at(n->a->ty, mk(Ty::K::Fn, y, z), e);
        n->ty = mk(Ty::K::Fn, x, z);
        break;
      }
      case Expr::Kind::Bind:
      case Expr::Kind::Then: {
        n->a = infer(*e.a);
        n->b = infer(*e.b);
        n->param = u_.fresh(true);
        TyP x = u_.fresh(), y = u_.fresh();
        unify_at(n->a->ty, mk(Ty::K::F, n->param, x), *e.a);
        TyP result = mk(Ty::K::F, n->param, y);
        if (e.kind == Expr::Kind::Bind)
          unify_at(n->b->ty, mk(Ty::K::Fn, x, result), *e.b);
        else
          unify_at(n->b->ty, result, *e.b);
        n->ty = result;
        break;
      }
      case Expr::Kind::Annot: {
        n->a = infer(*e.a);
        unify_at(n->a->ty, convert(*e.type, nullptr, nullptr), e);
        n->ty = n->a->ty;
        break;
      }
    }
    return n;
  }

  void resolve_var(const Expr& e, TNode& n) {
    for (std::size_t i = locals_.size(); i-- > 0;) {
      if (locals_[i].first == e.name) {
        n.ref = TNode::Ref::Local;
        n.ty = locals_[i].second;
        n.slot = -1;
        // Slot numbers follow binding order; recompute from the pattern walk.
        n.slot = static_cast<int>(law_.binders.size() + i);
        return;
      }
    }
    for (std::size_t i = 0; i < binders_.size(); ++i) {
      if (binders_[i].first == e.name) {
        n.ref = TNode::Ref::Binder;
        n.slot = static_cast<int>(i);
        n.ty = binders_[i].second;
        return;
      }
    }
    const rt::PrimDef* def = rt::find_prim(e.name, ctx_.effect);
    if (!def) {
      for (const rt::PrimDef& p : rt::all_prims())
        if (e.name == p.name)
          throw UnavailablePrimitive(e.name, "not an operation of the " +
                                                 std::string(effect_name(ctx_.effect)) + " effect");
      throw TypeError(pos_text(e.pos) + ": unknown name '" + e.name + "'");
    }
    if (def->effect != EffectKind::None && no_layer_)
      throw UnavailablePrimitive(e.name, "no designated " + std::string(effect_name(ctx_.effect)) +
                                             " layer in " + ctx_.stack.to_string());
    if (def->needs_base && !out_.base->has_reader_base())
      throw UnavailablePrimitive(e.name, "needs a reader base");
    n.ref = TNode::Ref::Prim;
    n.prim = def;
    TypePtr scheme = parse_type(def->scheme);
    n.inst = convert(*scheme, &n.generics, nullptr);
    n.ty = n.inst;
  }

  // ---- compilation ----

  std::unique_ptr<RPat> compile_pat(const TPat& p) {
    auto r = std::make_unique<RPat>();
    r->kind = p.kind;
    if (p.kind == Pattern::Kind::Pair) {
      r->type = ground(p.ty);
      r->a = compile_pat(*p.a);
      r->b = compile_pat(*p.b);
    }
    return r;
  }

  std::unique_ptr<Node> compile(const TNode& t) {
    auto n = std::make_unique<Node>();
    n->kind = t.kind;
    switch (t.kind) {
      case Expr::Kind::Var:
        if (t.ref == TNode::Ref::Prim)
          make_site(t, n->site);
        else
          n->slot = t.slot;
        break;
      case Expr::Kind::Lam:
        n->pat = compile_pat(*t.pat);
        n->a = compile(*t.a);
        break;
      case Expr::Kind::App:
        n->t1 = ground(t.a->ty);
        n->a = compile(*t.a);
        n->b = compile(*t.b);
        break;
      case Expr::Kind::Compose:
        n->t1 = ground(t.a->ty);
        n->t2 = ground(t.b->ty);
        n->a = compile(*t.a);
        n->b = compile(*t.b);
        break;
      case Expr::Kind::Bind:
      case Expr::Kind::Then:
        n->t1 = ground(t.a->ty);
        n->t2 = ground(t.b->ty);
        n->st = &stack_for(ground(t.param));
        n->a = compile(*t.a);
        n->b = compile(*t.b);
        break;
      case Expr::Kind::Annot:
        n->a = compile(*t.a);
        break;
    }
    return n;
  }

  void make_site(const TNode& t, rt::Site& s) {
    s.def = t.prim;
    s.base = out_.base.get();
    if (out_.base->has_reader_base()) s.plain = &plain();
    for (const auto& [name, ty] : t.generics) s.tv[name] = ground(ty);
    s.st = s.tv.count("p") ? &stack_for(s.tv["p"]) : out_.base.get();
    s.st2 = s.tv.count("q") ? &stack_for(s.tv["q"]) : s.st;
    TyP cur = u_.walk(t.inst);
    for (int i = 0; i < t.prim->arity; ++i) {
      if (cur->k != Ty::K::Fn) throw InvariantViolation(std::string("scheme arity mismatch for ") + t.prim->name);
      s.args.push_back(ground(cur->a));
      cur = u_.walk(cur->b);
    }
    s.result = ground(cur);
  }

  const LawExpr& law_;
  const LawContext& ctx_;
  TypedLaw::Impl& out_;
  Unifier u_;
  TyP p0_;
  std::set<std::string> fixed_;
  bool no_layer_ = false;
  std::vector<std::pair<std::string, TyP>> binders_;
  std::vector<std::pair<std::string, TyP>> locals_;
};

}  // namespace

// ---------------------------------------------------------------------------

const LawExpr& TypedLaw::law() const { return impl_->law; }
const StackSpec& TypedLaw::stack() const { return impl_->ctx.stack; }
EffectKind TypedLaw::effect() const { return impl_->ctx.effect; }
Mutation TypedLaw::mutation() const { return impl_->ctx.mutation; }
const std::vector<BinderInfo>& TypedLaw::binders() const { return impl_->binders; }
const FinType& TypedLaw::compared_type() const { return impl_->compared; }
const std::string& TypedLaw::symbolic_type() const { return impl_->symbolic; }
const std::map<std::string, FinType>& TypedLaw::type_assignment() const { return impl_->assignment; }

std::optional<std::uint64_t> TypedLaw::plan() const {
  std::uint64_t n = 1;
  for (const BinderInfo& b : impl_->binders) {
    auto s = b.domain.size();
    if (!s || __builtin_mul_overflow(n, *s, &n)) return std::nullopt;
  }
  return n;
}

Value TypedLaw::eval_side(Side side, std::span<const Value> env) const {
  const Impl& I = *impl_;
  if (env.size() != I.binders.size()) throw InvariantViolation("eval_side: wrong number of binder values");
  std::size_t named_count = I.binders.size() - (I.has_ambient ? 1 : 0);
  Env e(env.begin(), env.begin() + static_cast<std::ptrdiff_t>(named_count));
  RVal r = eval(side == Side::Lhs ? *I.lhs : *I.rhs, e);
  if (I.has_ambient) r = rt::call(r, env.back(), I.law_type);
  return rt::force(r, I.compared);
}

TypedLaw typecheck_law(const LawExpr& law, const LawContext& ctx) {
  auto impl = std::make_shared<TypedLaw::Impl>();
  impl->law = law;
  impl->ctx = ctx;
  Checker(impl->law, impl->ctx, *impl).run();
  TypedLaw t;
  t.impl_ = std::move(impl);
  return t;
}

std::vector<std::string> fixed_type_names(EffectKind effect) {
  switch (effect) {
    case EffectKind::Exception:
      return {"E"};
    case EffectKind::Reader:
      return {"R"};
    case EffectKind::Writer:
      return {"W"};
    case EffectKind::State:
      return {"S"};
    case EffectKind::None:
      break;
  }
  return {};
}

std::vector<std::string> primitive_names(EffectKind effect) {
  std::set<std::string> names;
  for (const rt::PrimDef& p : rt::all_prims())
    if (p.effect == EffectKind::None || p.effect == effect) names.insert(p.name);
  return {names.begin(), names.end()};
}

}  // namespace monadlaw
