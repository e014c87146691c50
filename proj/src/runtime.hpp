#pragma once

// Evaluation machinery shared by the typechecker and the primitive table.

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "monadlaw/finite.hpp"
#include "monadlaw/stack.hpp"

namespace monadlaw::rt {

struct Fun;
using FunP = std::shared_ptr<const Fun>;
// A runtime value: either a first-order Value or a closure that has not
// been tabulated yet.
using RVal = std::variant<Value, FunP>;

struct Fun {
  virtual ~Fun() = default;
  virtual RVal call(const RVal& arg) const = 0;
};

// Tabulates closures at type t; Values pass through.
Value force(const RVal& v, const FinType& t);
// fty is the function type of f.
RVal call(const RVal& f, const RVal& x, const FinType& fty);

// A function-typed RVal seen as a Value -> Value map.
struct Unary {
  const RVal& f;
  const FinType& fty;
  Value operator()(const Value& v) const { return force(call(f, v, fty), fty.cod()); }
};

struct PrimDef;

// One occurrence of a primitive with its instantiated types.
struct Site {
  const PrimDef* def = nullptr;
  std::vector<FinType> args;  // types of the first `arity` arguments
  FinType result;             // type after `arity` arguments
  std::map<std::string, FinType> tv;  // scheme variables
  const Stack* st = nullptr;     // stack at scheme parameter p (or the base stack)
  const Stack* st2 = nullptr;    // stack at scheme parameter q
  const Stack* plain = nullptr;  // N
  const Stack* base = nullptr;

  const FinType& var(const char* name) const;
};

using Impl = RVal (*)(const Site&, const std::vector<RVal>&);

struct PrimDef {
  const char* name;
  EffectKind effect;  // None for generic primitives
  const char* scheme;
  int arity;
  Impl impl;
  bool needs_base = false;  // apply/abstr/N operations
};

// Effect-specific entries shadow generic ones.
const PrimDef* find_prim(const std::string& name, EffectKind effect);
const std::vector<PrimDef>& all_prims();

// Closure for a primitive applied to fewer than `arity` arguments.
RVal start_prim(const Site& site);

}  // namespace monadlaw::rt
