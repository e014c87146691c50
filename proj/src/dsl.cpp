#include "monadlaw/dsl.hpp"

#include <cctype>
#include <functional>

#include "monadlaw/error.hpp"

namespace monadlaw {

namespace {

struct Token {
  enum class Kind { Ident, Int, String, Sym, End };
  Kind kind;
  std::string text;
  SrcPos pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

class Lexer {
 public:
  explicit Lexer(std::string_view s) : s_(s) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip();
      SrcPos p{line_, col_};
      if (i_ >= s_.size()) {
        out.push_back({Token::Kind::End, "", p});
        return out;
      }
      char c = s_[i_];
      if (ident_start(c)) {
        out.push_back({Token::Kind::Ident, ident(), p});
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string t;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) t += take();
        out.push_back({Token::Kind::Int, t, p});
      } else if (c == '"') {
        take();
        std::string t;
        for (;;) {
          if (i_ >= s_.size() || s_[i_] == '\n') throw SyntaxError("unterminated string", p.line, p.col);
          char d = take();
          if (d == '"') break;
          if (d == '\\' && i_ < s_.size()) d = take();
          t += d;
        }
        out.push_back({Token::Kind::String, t, p});
      } else {
        out.push_back({Token::Kind::Sym, symbol(p), p});
      }
    }
  }

 private:
  char take() {
    char c = s_[i_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) {
      ++col_;
    }
    return c;
  }
  bool starts(std::string_view w) const { return s_.substr(i_, w.size()) == w; }
  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) take();
  }
  void skip() {
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        take();
      } else if (c == '#') {
        while (i_ < s_.size() && s_[i_] != '\n') take();
      } else {
        break;
      }
    }
  }
  std::string ident() {
    std::string t;
    while (i_ < s_.size()) {
      char c = s_[i_];
      if (ident_char(c)) {
        t += take();
      } else if (starts("′")) {  // prime
        advance(3);
        t += '\'';
      } else if (c == '-' && i_ + 1 < s_.size() &&
                 std::isalnum(static_cast<unsigned char>(s_[i_ + 1]))) {
        t += take();
      } else {
        break;
      }
    }
    return t;
  }
  std::string symbol(SrcPos p) {
    struct Alias {
      std::string_view src, tok;
    };
    static const Alias table[] = {
        {"∘", "∘"}, {"<<<", "∘"}, {"λ", "\\"}, {"×", "*"}, {"→", "->"},
        {">>=", ">>="},  {">>", ">>"}, {"->", "->"},     {"==", "=="},    {"\\", "\\"},
        {"(", "("},      {")", ")"},   {"{", "{"},       {"}", "}"},      {",", ","},
        {":", ":"},      {".", "."},   {"+", "+"},       {"*", "*"},      {"@", "@"},
        {"=", "="},      {";", ";"},
    };
    for (const Alias& a : table)
      if (starts(a.src)) {
        advance(a.src.size());
        return std::string(a.tok);
      }
    throw SyntaxError(std::string("unexpected character '") + s_[i_] + "'", p.line, p.col);
  }

  std::string_view s_;
  std::size_t i_ = 0, line_ = 1, col_ = 1;
};

bool reserved(const std::string& w) { return w == "law" || w == "suite" || w == "forall"; }

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  LawFile file() {
    LawFile f;
    while (!at_end()) {
      Attributes attrs = attributes();
      if (is_word("law")) {
        LawExpr l = law();
        l.attrs = std::move(attrs);
        f.laws.push_back(std::move(l));
      } else if (is_word("suite")) {
        SuiteDecl s = suite();
        s.attrs = std::move(attrs);
        f.suites.push_back(std::move(s));
      } else {
        fail("expected 'law' or 'suite'");
      }
    }
    return f;
  }

  TypePtr type_only() {
    TypePtr t = type();
    expect_end();
    return t;
  }
  ExprPtr expr_only() {
    ExprPtr e = expr();
    expect_end();
    return e;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(i_ + k, toks_.size() - 1)]; }
  bool at_end() const { return peek().kind == Token::Kind::End; }
  const Token& next() {
    const Token& t = peek();
    if (i_ < toks_.size() - 1) ++i_;
    return t;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string near = t.kind == Token::Kind::End ? "end of input" : "'" + t.text + "'";
    throw SyntaxError(msg + " near " + near, t.pos.line, t.pos.col);
  }
  bool is_sym(std::string_view s) const {
    return peek().kind == Token::Kind::Sym && peek().text == s;
  }
  bool is_word(std::string_view s) const {
    return peek().kind == Token::Kind::Ident && peek().text == s;
  }
  bool eat_sym(std::string_view s) {
    if (!is_sym(s)) return false;
    next();
    return true;
  }
  void expect_sym(std::string_view s) {
    if (!eat_sym(s)) fail("expected '" + std::string(s) + "'");
  }
  void expect_end() {
    if (!at_end()) fail("unexpected trailing input");
  }
  std::string name(const char* what) {
    if (peek().kind != Token::Kind::Ident || reserved(peek().text)) fail(std::string("expected ") + what);
    return next().text;
  }

  Attributes attributes() {
    Attributes a;
    while (is_sym("@")) {
      next();
      std::string key = name("attribute name");
      const Token& v = peek();
      if (v.kind != Token::Kind::Ident && v.kind != Token::Kind::String && v.kind != Token::Kind::Int)
        fail("expected attribute value");
      a[key] = next().text;
    }
    return a;
  }

  LawExpr law() {
    LawExpr l;
    l.pos = peek().pos;
    next();
    l.name = name("law name");
    expect_sym(":");
    if (!is_word("forall")) fail("expected 'forall'");
    next();
    if (!is_sym(".")) {
      do {
        Binder b;
        b.pos = peek().pos;
        b.name = name("binder name");
        expect_sym(":");
        b.type = type();
        l.binders.push_back(std::move(b));
      } while (eat_sym(","));
    }
    expect_sym(".");
    l.lhs = expr();
    expect_sym("==");
    l.rhs = expr();
    return l;
  }

  SuiteDecl suite() {
    SuiteDecl s;
    s.pos = peek().pos;
    next();
    s.name = name("suite name");
    expect_sym("{");
    if (!is_sym("}")) {
      do s.laws.push_back(name("law name"));
      while (eat_sym(","));
    }
    expect_sym("}");
    return s;
  }

  // ---- types ----

  TypePtr mk(TypeExpr::Kind k, SrcPos p, TypePtr a = nullptr, TypePtr b = nullptr,
             std::string n = "") {
    return std::make_shared<const TypeExpr>(TypeExpr{k, std::move(n), std::move(a), std::move(b), p});
  }

  TypePtr type() {
    SrcPos p = peek().pos;
    TypePtr l = sum_type();
    if (eat_sym("->")) return mk(TypeExpr::Kind::Fn, p, l, type());
    return l;
  }
  TypePtr sum_type() {
    SrcPos p = peek().pos;
    TypePtr l = prod_type();
    while (eat_sym("+")) l = mk(TypeExpr::Kind::Sum, p, l, prod_type());
    return l;
  }
  TypePtr prod_type() {
    SrcPos p = peek().pos;
    TypePtr l = app_type();
    while (eat_sym("*")) l = mk(TypeExpr::Kind::Prod, p, l, app_type());
    return l;
  }
  TypePtr app_type() {
    SrcPos p = peek().pos;
    if (peek().kind == Token::Kind::Ident) {
      const std::string& w = peek().text;
      TypeExpr::Kind k;
      bool unary = true;
      if (w == "M")
        k = TypeExpr::Kind::M;
      else if (w == "N")
        k = TypeExpr::Kind::N;
      else if (w == "J")
        k = TypeExpr::Kind::J;
      else if (w == "Endo")
        k = TypeExpr::Kind::Endo;
      else
        unary = false;
      if (unary) {
        next();
        return mk(k, p, app_type());
      }
    }
    return atom_type();
  }
  TypePtr atom_type() {
    SrcPos p = peek().pos;
    if (eat_sym("(")) {
      TypePtr t = type();
      expect_sym(")");
      return t;
    }
    if (peek().kind != Token::Kind::Ident) fail("expected a type");
    std::string w = next().text;
    if (w == "Unit") return mk(TypeExpr::Kind::Unit, p);
    auto binary = [&](TypeExpr::Kind k) {
      expect_sym("(");
      TypePtr a = type();
      expect_sym(",");
      TypePtr b = type();
      expect_sym(")");
      return mk(k, p, a, b);
    };
    if (w == "F") return binary(TypeExpr::Kind::F);
    if (w == "Sum") return binary(TypeExpr::Kind::Sum);
    if (w == "Prod") return binary(TypeExpr::Kind::Prod);
    if (w == "Fn") return binary(TypeExpr::Kind::Fn);
    if (reserved(w)) {
      --i_;
      fail("expected a type");
    }
    return mk(TypeExpr::Kind::Name, p, nullptr, nullptr, w);
  }

  // ---- expressions ----

  ExprPtr mkx(Expr::Kind k, SrcPos p, ExprPtr a = nullptr, ExprPtr b = nullptr) {
    return std::make_shared<const Expr>(Expr{k, "", nullptr, nullptr, std::move(a), std::move(b), p});
  }

  bool at_lambda() const { return is_sym("\\"); }

  ExprPtr expr() {
    if (at_lambda()) return lambda();
    return bind_expr();
  }

  ExprPtr lambda() {
    SrcPos p = peek().pos;
    next();
    std::vector<PatPtr> pats;
    do pats.push_back(pattern());
    while (!is_sym("."));
    expect_sym(".");
    ExprPtr body = expr();
    for (std::size_t k = pats.size(); k-- > 0;) {
      body = std::make_shared<const Expr>(
          Expr{Expr::Kind::Lam, "", pats[k], nullptr, body, nullptr, k == 0 ? p : pats[k]->pos});
    }
    return body;
  }

  PatPtr pattern() {
    SrcPos p = peek().pos;
    if (eat_sym("(")) {
      PatPtr first = pattern();
      if (eat_sym(":")) {
        if (first->kind != Pattern::Kind::Var) fail("only variables can be annotated");
        TypePtr t = type();
        expect_sym(")");
        return std::make_shared<const Pattern>(Pattern{Pattern::Kind::Var, first->name, nullptr, nullptr, t, p});
      }
      if (eat_sym(")")) return first;
      expect_sym(",");
      PatPtr second = pattern();
      expect_sym(")");
      return std::make_shared<const Pattern>(Pattern{Pattern::Kind::Pair, "", first, second, nullptr, p});
    }
    std::string n = name("pattern");
    if (n == "_") return std::make_shared<const Pattern>(Pattern{Pattern::Kind::Wild, "", nullptr, nullptr, nullptr, p});
    return std::make_shared<const Pattern>(Pattern{Pattern::Kind::Var, n, nullptr, nullptr, nullptr, p});
  }

  ExprPtr bind_expr() {
    ExprPtr l = compose_expr();
    for (;;) {
      SrcPos p = peek().pos;
      Expr::Kind k;
      if (eat_sym(">>="))
        k = Expr::Kind::Bind;
      else if (eat_sym(">>"))
        k = Expr::Kind::Then;
      else
        return l;
      ExprPtr r = at_lambda() ? lambda() : compose_expr();
      l = mkx(k, p, l, r);
    }
  }

  ExprPtr compose_expr() {
    std::vector<ExprPtr> parts{app_expr()};
    std::vector<SrcPos> ops;
    while (is_sym("∘")) {
      ops.push_back(peek().pos);
      next();
      parts.push_back(app_expr());
    }
    ExprPtr r = parts.back();
    for (std::size_t k = parts.size() - 1; k-- > 0;) r = mkx(Expr::Kind::Compose, ops[k], parts[k], r);
    return r;
  }

  bool at_atom() const {
    if (peek().kind == Token::Kind::Ident) return !reserved(peek().text);
    return is_sym("(");
  }

  ExprPtr app_expr() {
    if (!at_atom()) fail("expected an expression");
    SrcPos p = peek().pos;
    std::vector<ExprPtr> head = atom();
    if (head.size() != 1) throw SyntaxError("tuples are written pair(a, b)", p.line, p.col);
    ExprPtr e = head[0];
    while (at_atom()) {
      for (ExprPtr& arg : atom()) e = mkx(Expr::Kind::App, p, e, arg);
    }
    return e;
  }

  // A variable, or a parenthesized comma-separated group.
  std::vector<ExprPtr> atom() {
    SrcPos p = peek().pos;
    if (peek().kind == Token::Kind::Ident) {
      auto v = std::make_shared<Expr>(Expr{Expr::Kind::Var, next().text, nullptr, nullptr, nullptr, nullptr, p});
      return {v};
    }
    expect_sym("(");
    std::vector<ExprPtr> group;
    do {
      SrcPos q = peek().pos;
      ExprPtr e = expr();
      if (eat_sym(":")) {
        TypePtr t = type();
        e = std::make_shared<const Expr>(Expr{Expr::Kind::Annot, "", nullptr, t, e, nullptr, q});
      }
      group.push_back(e);
    } while (eat_sym(","));
    expect_sym(")");
    return group;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

// ---- printing ----

std::string quote_attr(const std::string& v) {
  bool plain = !v.empty();
  for (char c : v)
    if (!ident_char(c) && c != '-') plain = false;
  if (plain && !reserved(v)) return v;
  std::string s = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') s += '\\';
    s += c;
  }
  return s + "\"";
}

std::string print_type_prec(const TypeExpr& t, int prec) {
  auto wrap = [&](int p, std::string s) { return p < prec ? "(" + s + ")" : s; };
  switch (t.kind) {
    case TypeExpr::Kind::Name:
      return t.name;
    case TypeExpr::Kind::Unit:
      return "Unit";
    case TypeExpr::Kind::Fn:
      return wrap(0, print_type_prec(*t.a, 1) + " -> " + print_type_prec(*t.b, 0));
    case TypeExpr::Kind::Sum:
      return wrap(1, print_type_prec(*t.a, 1) + " + " + print_type_prec(*t.b, 2));
    case TypeExpr::Kind::Prod:
      return wrap(2, print_type_prec(*t.a, 2) + " * " + print_type_prec(*t.b, 3));
    case TypeExpr::Kind::M:
      return wrap(3, "M " + print_type_prec(*t.a, 3));
    case TypeExpr::Kind::N:
      return wrap(3, "N " + print_type_prec(*t.a, 3));
    case TypeExpr::Kind::J:
      return wrap(3, "J " + print_type_prec(*t.a, 3));
    case TypeExpr::Kind::Endo:
      return wrap(3, "Endo " + print_type_prec(*t.a, 3));
    case TypeExpr::Kind::F:
      return "F(" + print_type_prec(*t.a, 0) + ", " + print_type_prec(*t.b, 0) + ")";
  }
  return "?";
}

std::string print_pattern(const Pattern& p) {
  switch (p.kind) {
    case Pattern::Kind::Wild:
      return "_";
    case Pattern::Kind::Var:
      return p.type ? "(" + p.name + " : " + print_type(*p.type) + ")" : p.name;
    case Pattern::Kind::Pair:
      return "(" + print_pattern(*p.a) + ", " + print_pattern(*p.b) + ")";
  }
  return "?";
}

std::string print_expr_prec(const Expr& e, int prec) {
  auto wrap = [&](int p, std::string s) { return p < prec ? "(" + s + ")" : s; };
  switch (e.kind) {
    case Expr::Kind::Var:
      return e.name;
    case Expr::Kind::Lam:
      return wrap(0, "\\" + print_pattern(*e.pat) + ". " + print_expr_prec(*e.a, 0));
    case Expr::Kind::Bind:
      return wrap(1, print_expr_prec(*e.a, 1) + " >>= " + print_expr_prec(*e.b, 2));
    case Expr::Kind::Then:
      return wrap(1, print_expr_prec(*e.a, 1) + " >> " + print_expr_prec(*e.b, 2));
    case Expr::Kind::Compose:
      return wrap(2, print_expr_prec(*e.a, 3) + " ∘ " + print_expr_prec(*e.b, 2));
    case Expr::Kind::Annot:
      return "(" + print_expr_prec(*e.a, 0) + " : " + print_type(*e.type) + ")";
    case Expr::Kind::App: {
      std::vector<const Expr*> args;
      const Expr* h = &e;
      while (h->kind == Expr::Kind::App) {
        args.push_back(h->b.get());
        h = h->a.get();
      }
      std::string s = h->kind == Expr::Kind::Var ? h->name : "(" + print_expr_prec(*h, 0) + ")";
      s += "(";
      for (std::size_t k = args.size(); k-- > 0;) {
        s += print_expr_prec(*args[k], 0);
        if (k) s += ", ";
      }
      return s + ")";
    }
  }
  return "?";
}

std::string print_attrs(const Attributes& a) {
  std::string s;
  for (const auto& [k, v] : a) s += "@" + k + " " + quote_attr(v) + "\n";
  return s;
}

bool same_pattern(const Pattern& a, const Pattern& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  if (bool(a.type) != bool(b.type) || (a.type && !same_type(*a.type, *b.type))) return false;
  if (a.kind == Pattern::Kind::Pair) return same_pattern(*a.a, *b.a) && same_pattern(*a.b, *b.b);
  return true;
}

}  // namespace

LawFile parse_law_file(std::string_view text) { return Parser(text).file(); }

LawExpr parse_law(std::string_view text) {
  LawFile f = parse_law_file(text);
  if (f.laws.size() != 1 || !f.suites.empty()) throw SyntaxError("expected exactly one law", 1, 1);
  return f.laws[0];
}

TypePtr parse_type(std::string_view text) { return Parser(text).type_only(); }
ExprPtr parse_expr(std::string_view text) { return Parser(text).expr_only(); }

std::string print_type(const TypeExpr& t) { return print_type_prec(t, 0); }
std::string print_expr(const Expr& e) { return print_expr_prec(e, 0); }

std::string print_law(const LawExpr& l) {
  std::string s = print_attrs(l.attrs) + "law " + l.name + ": forall";
  for (std::size_t k = 0; k < l.binders.size(); ++k)
    s += (k ? ", " : " ") + l.binders[k].name + ": " + print_type(*l.binders[k].type);
  s += " . " + print_expr(*l.lhs) + " == " + print_expr(*l.rhs);
  return s;
}

std::string print_suite(const SuiteDecl& s) {
  std::string out = print_attrs(s.attrs) + "suite " + s.name + " {";
  for (std::size_t k = 0; k < s.laws.size(); ++k) out += (k ? ", " : " ") + s.laws[k];
  return out + " }";
}

bool same_type(const TypeExpr& a, const TypeExpr& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  if (bool(a.a) != bool(b.a) || bool(a.b) != bool(b.b)) return false;
  if (a.a && !same_type(*a.a, *b.a)) return false;
  if (a.b && !same_type(*a.b, *b.b)) return false;
  return true;
}

bool same_expr(const Expr& a, const Expr& b) {
  if (a.kind != b.kind || a.name != b.name) return false;
  if (bool(a.pat) != bool(b.pat) || (a.pat && !same_pattern(*a.pat, *b.pat))) return false;
  if (bool(a.type) != bool(b.type) || (a.type && !same_type(*a.type, *b.type))) return false;
  if (bool(a.a) != bool(b.a) || bool(a.b) != bool(b.b)) return false;
  if (a.a && !same_expr(*a.a, *b.a)) return false;
  if (a.b && !same_expr(*a.b, *b.b)) return false;
  return true;
}

bool same_law(const LawExpr& a, const LawExpr& b) {
  if (a.name != b.name || a.attrs != b.attrs || a.binders.size() != b.binders.size()) return false;
  for (std::size_t k = 0; k < a.binders.size(); ++k)
    if (a.binders[k].name != b.binders[k].name || !same_type(*a.binders[k].type, *b.binders[k].type))
      return false;
  return same_expr(*a.lhs, *b.lhs) && same_expr(*a.rhs, *b.rhs);
}

}  // namespace monadlaw
