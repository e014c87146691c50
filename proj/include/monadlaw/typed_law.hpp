#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monadlaw/dsl.hpp"
#include "monadlaw/finite.hpp"
#include "monadlaw/stack.hpp"

namespace monadlaw {

struct LawContext {
  StackSpec stack;
  EffectKind effect = EffectKind::None;
  // Meaning of free type names (X, X', E', ...). Unlisted names are Enum(2).
  std::map<std::string, FinType> types;
  Mutation mutation = Mutation::None;
};

// Quantifier domain of one binder: every value of `type`, or an explicit
// list when the binder ranges over monoid endomorphisms.
struct Domain {
  FinType type;
  std::optional<std::vector<Value>> listed;

  std::optional<std::uint64_t> size() const;
  Value at(std::uint64_t i) const;
};

struct BinderInfo {
  std::string name;
  std::string type_text;  // surface type as written
  Domain domain;
  bool ambient = false;  // the implicit argument of a function-typed law
};

enum class Side { Lhs, Rhs };

class TypedLaw {
 public:
  const LawExpr& law() const;
  const StackSpec& stack() const;
  EffectKind effect() const;
  Mutation mutation() const;

  // Binders in declaration order, the ambient input (if any) last.
  const std::vector<BinderInfo>& binders() const;
  // Type at which the two sides are compared, after applying the ambient input.
  const FinType& compared_type() const;
  // Symbolic type of both sides, e.g. "F(E, X) -> F(E, X')".
  const std::string& symbolic_type() const;
  // Concrete meaning of each type name that occurs in the law.
  const std::map<std::string, FinType>& type_assignment() const;

  // Product of all binder domain sizes; nullopt on overflow.
  std::optional<std::uint64_t> plan() const;

  // `env` holds one value per entry of binders().
  Value eval_side(Side side, std::span<const Value> env) const;

  struct Impl;

 private:
  friend TypedLaw typecheck_law(const LawExpr&, const LawContext&);
  std::shared_ptr<const Impl> impl_;
};

// Throws TypeError (or UnavailablePrimitive) when the law does not typecheck
// against the stack, ConfigError for bad type overrides.
TypedLaw typecheck_law(const LawExpr& law, const LawContext& ctx);

// Type names whose meaning comes from the stack (E, R, W or S).
std::vector<std::string> fixed_type_names(EffectKind effect);

// Names of all primitives available for an effect (generic ones included).
std::vector<std::string> primitive_names(EffectKind effect);

}  // namespace monadlaw
