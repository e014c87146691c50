#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace monadlaw {

struct SrcPos {
  std::size_t line = 0, col = 0;
};

struct TypeExpr;
using TypePtr = std::shared_ptr<const TypeExpr>;

// Surface types. Names are type variables (X, X', E, ...) resolved against the
// stack and the type assignment; M, N, J, F and Endo are the effect-specific
// constructors.
struct TypeExpr {
  enum class Kind { Name, Unit, Sum, Prod, Fn, M, N, J, F, Endo };
  Kind kind;
  std::string name;
  TypePtr a, b;
  SrcPos pos;
};

struct Pattern;
using PatPtr = std::shared_ptr<const Pattern>;

struct Pattern {
  enum class Kind { Var, Wild, Pair };
  Kind kind;
  std::string name;
  PatPtr a, b;
  TypePtr type;  // optional annotation on a variable
  SrcPos pos;
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    Var,      // name
    Lam,      // \pat. a
    App,      // a b
    Compose,  // a . b, written with the ring operator
    Bind,     // a >>= b
    Then,     // a >> b
    Annot,    // (a : type)
  };
  Kind kind;
  std::string name;
  PatPtr pat;
  TypePtr type;
  ExprPtr a, b;
  SrcPos pos;
};

struct Binder {
  std::string name;
  TypePtr type;
  SrcPos pos;
};

using Attributes = std::map<std::string, std::string>;

struct LawExpr {
  std::string name;
  std::vector<Binder> binders;
  ExprPtr lhs, rhs;
  Attributes attrs;  // @expect, @cite, @effect, ...
  SrcPos pos;
};

struct SuiteDecl {
  std::string name;
  std::vector<std::string> laws;
  Attributes attrs;  // @effect, @stacks, @cite
  SrcPos pos;
};

struct LawFile {
  std::vector<LawExpr> laws;
  std::vector<SuiteDecl> suites;
};

// Throws SyntaxError with line and column.
LawFile parse_law_file(std::string_view text);
// Parses a source holding exactly one law item.
LawExpr parse_law(std::string_view text);
TypePtr parse_type(std::string_view text);
ExprPtr parse_expr(std::string_view text);

std::string print_type(const TypeExpr& t);
std::string print_expr(const Expr& e);
std::string print_law(const LawExpr& l);
std::string print_suite(const SuiteDecl& s);

// Structural equality ignoring source positions.
bool same_type(const TypeExpr& a, const TypeExpr& b);
bool same_expr(const Expr& a, const Expr& b);
bool same_law(const LawExpr& a, const LawExpr& b);

}  // namespace monadlaw
