#include "monadlaw/finite.hpp"

#include <cctype>
#include <mutex>

namespace monadlaw {

namespace {

std::optional<std::uint64_t> checked_add(std::optional<std::uint64_t> a,
                                         std::optional<std::uint64_t> b) {
  if (!a || !b) return std::nullopt;
  std::uint64_t r;
  if (__builtin_add_overflow(*a, *b, &r)) return std::nullopt;
  return r;
}

std::optional<std::uint64_t> checked_mul(std::optional<std::uint64_t> a,
                                         std::optional<std::uint64_t> b) {
  if (!a || !b) return std::nullopt;
  std::uint64_t r;
  if (__builtin_mul_overflow(*a, *b, &r)) return std::nullopt;
  return r;
}

std::optional<std::uint64_t> checked_pow(std::optional<std::uint64_t> base,
                                         std::optional<std::uint64_t> exp) {
  if (!base || !exp) {
    // 1^n and n^0 stay finite even when the other side overflowed.
    if (base && *base <= 1) return *base;
    if (exp && *exp == 0) return 1;
    return std::nullopt;
  }
  if (*base <= 1) return *exp == 0 ? 1 : *base;
  std::optional<std::uint64_t> r = 1;
  for (std::uint64_t i = 0; i < *exp; ++i) {
    r = checked_mul(r, base);
    if (!r) return std::nullopt;
  }
  return r;
}

}  // namespace

struct FinType::Node {
  Kind kind = Kind::Unit;
  std::uint32_t n = 1;
  FinType a, b;
  std::optional<std::uint64_t> card;
  mutable std::once_flag values_once;
  mutable std::shared_ptr<const std::vector<Value>> values;
};

// A null node denotes Unit so that default construction never allocates.
FinType::FinType() = default;
FinType::FinType(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

FinType FinType::unit() { return FinType(); }

FinType FinType::enumeration(std::uint32_t n) {
  if (n == 0) throw Error("Enum cardinality must be at least 1");
  auto p = std::make_shared<Node>();
  p->kind = Kind::Enum;
  p->n = n;
  p->card = n;
  return FinType(std::move(p));
}

FinType FinType::sum(FinType left, FinType right) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Sum;
  p->card = checked_add(left.cardinality(), right.cardinality());
  p->a = std::move(left);
  p->b = std::move(right);
  return FinType(std::move(p));
}

FinType FinType::prod(FinType first, FinType second) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Prod;
  p->card = checked_mul(first.cardinality(), second.cardinality());
  p->a = std::move(first);
  p->b = std::move(second);
  return FinType(std::move(p));
}

FinType FinType::fn(FinType dom, FinType cod) {
  auto p = std::make_shared<Node>();
  p->kind = Kind::Fn;
  p->card = checked_pow(cod.cardinality(), dom.cardinality());
  p->a = std::move(dom);
  p->b = std::move(cod);
  return FinType(std::move(p));
}

FinType::Kind FinType::kind() const { return node_ ? node_->kind : Kind::Unit; }
std::uint32_t FinType::enum_size() const { return node_ ? node_->n : 1; }
const FinType& FinType::left() const { return node_->a; }
const FinType& FinType::right() const { return node_->b; }
const FinType& FinType::first() const { return node_->a; }
const FinType& FinType::second() const { return node_->b; }
const FinType& FinType::dom() const { return node_->a; }
const FinType& FinType::cod() const { return node_->b; }

std::optional<std::uint64_t> FinType::cardinality() const {
  return node_ ? node_->card : std::optional<std::uint64_t>(1);
}

std::uint64_t FinType::checked_cardinality() const {
  auto c = cardinality();
  if (!c) throw DomainTooLarge(to_string());
  return *c;
}

const std::vector<Value>& FinType::values() const {
  if (!node_) {
    static const std::vector<Value> star{Value::star()};
    return star;
  }
  std::call_once(node_->values_once, [this] {
    node_->values = std::make_shared<const std::vector<Value>>(enumerate_values(*this));
  });
  return *node_->values;
}

std::string FinType::to_string() const {
  switch (kind()) {
    case Kind::Unit:
      return "Unit";
    case Kind::Enum:
      return "Enum(" + std::to_string(enum_size()) + ")";
    case Kind::Sum:
      return "Sum(" + left().to_string() + ", " + right().to_string() + ")";
    case Kind::Prod:
      return "Prod(" + first().to_string() + ", " + second().to_string() + ")";
    case Kind::Fn:
      return "Fn(" + dom().to_string() + ", " + cod().to_string() + ")";
  }
  return "?";
}

bool operator==(const FinType& a, const FinType& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case FinType::Kind::Unit:
      return true;
    case FinType::Kind::Enum:
      return a.enum_size() == b.enum_size();
    default:
      return a.node_->a == b.node_->a && a.node_->b == b.node_->b;
  }
}

// ---------------------------------------------------------------------------

Value Value::elem(std::uint32_t i) {
  Value v;
  v.kind_ = Kind::Elem;
  v.elem_ = i;
  return v;
}

Value Value::inl(Value x) {
  Value v;
  v.kind_ = Kind::InL;
  v.kids_ = std::make_shared<const std::vector<Value>>(1, std::move(x));
  return v;
}

Value Value::inr(Value x) {
  Value v;
  v.kind_ = Kind::InR;
  v.kids_ = std::make_shared<const std::vector<Value>>(1, std::move(x));
  return v;
}

Value Value::pair(Value a, Value b) {
  Value v;
  v.kind_ = Kind::Pair;
  std::vector<Value> kids;
  kids.reserve(2);
  kids.push_back(std::move(a));
  kids.push_back(std::move(b));
  v.kids_ = std::make_shared<const std::vector<Value>>(std::move(kids));
  return v;
}

Value Value::table(std::vector<Value> entries) {
  Value v;
  v.kind_ = Kind::Table;
  v.kids_ = std::make_shared<const std::vector<Value>>(std::move(entries));
  return v;
}

bool operator==(const Value& a, const Value& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Value::Kind::Star:
      return true;
    case Value::Kind::Elem:
      return a.elem_ == b.elem_;
    default:
      break;
  }
  if (a.kids_ == b.kids_) return true;
  const auto& x = *a.kids_;
  const auto& y = *b.kids_;
  if (x.size() != y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] == y[i])) return false;
  return true;
}

std::string Value::to_string() const {
  switch (kind_) {
    case Kind::Star:
      return "Star";
    case Kind::Elem:
      return "Elem " + std::to_string(elem_);
    case Kind::InL:
      return "InL(" + payload().to_string() + ")";
    case Kind::InR:
      return "InR(" + payload().to_string() + ")";
    case Kind::Pair:
      return "Pair(" + first().to_string() + ", " + second().to_string() + ")";
    case Kind::Table: {
      std::string s = "Table[";
      for (std::size_t i = 0; i < size(); ++i) {
        if (i) s += ", ";
        s += at(i).to_string();
      }
      return s + "]";
    }
  }
  return "?";
}

namespace {

struct ValueReader {
  std::string_view s;
  std::size_t pos = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw SyntaxError("value notation: " + what, 1, pos + 1);
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool eat(char c) {
    skip();
    if (pos < s.size() && s[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  std::string word() {
    skip();
    std::size_t b = pos;
    while (pos < s.size() && std::isalpha(static_cast<unsigned char>(s[pos]))) ++pos;
    return std::string(s.substr(b, pos - b));
  }
  std::uint32_t number() {
    skip();
    std::size_t b = pos;
    std::uint64_t n = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
      n = n * 10 + static_cast<std::uint64_t>(s[pos] - '0');
      if (n > UINT32_MAX) fail("index out of range");
      ++pos;
    }
    if (b == pos) fail("expected index");
    return static_cast<std::uint32_t>(n);
  }
  Value value() {
    std::string w = word();
    if (w == "Star") return Value::star();
    if (w == "Elem") return Value::elem(number());
    if (w == "InL" || w == "InR") {
      expect('(');
      Value v = value();
      expect(')');
      return w == "InL" ? Value::inl(std::move(v)) : Value::inr(std::move(v));
    }
    if (w == "Pair") {
      expect('(');
      Value a = value();
      expect(',');
      Value b = value();
      expect(')');
      return Value::pair(std::move(a), std::move(b));
    }
    if (w == "Table") {
      expect('[');
      std::vector<Value> es;
      if (!eat(']')) {
        do es.push_back(value());
        while (eat(','));
        expect(']');
      }
      return Value::table(std::move(es));
    }
    fail("unknown constructor '" + w + "'");
  }
};

}  // namespace

Value Value::parse(std::string_view text) {
  ValueReader r{text};
  Value v = r.value();
  r.skip();
  if (r.pos != text.size()) r.fail("trailing input");
  return v;
}

// ---------------------------------------------------------------------------

std::uint64_t index_of(const Value& v, const FinType& t) {
  switch (t.kind()) {
    case FinType::Kind::Unit:
      return 0;
    case FinType::Kind::Enum:
      return v.index();
    case FinType::Kind::Sum:
      if (v.kind() == Value::Kind::InL) return index_of(v.payload(), t.left());
      return t.left().checked_cardinality() + index_of(v.payload(), t.right());
    case FinType::Kind::Prod:
      return index_of(v.first(), t.first()) * t.second().checked_cardinality() +
             index_of(v.second(), t.second());
    case FinType::Kind::Fn: {
      t.checked_cardinality();
      std::uint64_t base = t.cod().checked_cardinality();
      std::uint64_t acc = 0;
      for (const Value& e : v.entries()) acc = acc * base + index_of(e, t.cod());
      return acc;
    }
  }
  return 0;
}

Value value_at(const FinType& t, std::uint64_t index) {
  switch (t.kind()) {
    case FinType::Kind::Unit:
      return Value::star();
    case FinType::Kind::Enum:
      return Value::elem(static_cast<std::uint32_t>(index));
    case FinType::Kind::Sum: {
      std::uint64_t nl = t.left().checked_cardinality();
      if (index < nl) return Value::inl(value_at(t.left(), index));
      return Value::inr(value_at(t.right(), index - nl));
    }
    case FinType::Kind::Prod: {
      std::uint64_t nb = t.second().checked_cardinality();
      return Value::pair(value_at(t.first(), index / nb), value_at(t.second(), index % nb));
    }
    case FinType::Kind::Fn: {
      std::uint64_t n = t.dom().checked_cardinality();
      std::uint64_t base = t.cod().checked_cardinality();
      std::vector<Value> es(n);
      for (std::uint64_t i = n; i-- > 0;) {
        es[i] = value_at(t.cod(), base ? index % base : 0);
        if (base) index /= base;
      }
      return Value::table(std::move(es));
    }
  }
  return Value::star();
}

std::vector<Value> enumerate_values(const FinType& t) {
  auto card = t.cardinality();
  if (!card || *card > FinType::kMaxMaterialized) throw DomainTooLarge(t.to_string());
  std::vector<Value> out;
  out.reserve(*card);
  switch (t.kind()) {
    case FinType::Kind::Unit:
      out.push_back(Value::star());
      break;
    case FinType::Kind::Enum:
      for (std::uint32_t i = 0; i < t.enum_size(); ++i) out.push_back(Value::elem(i));
      break;
    case FinType::Kind::Sum:
      for (const Value& v : t.left().values()) out.push_back(Value::inl(v));
      for (const Value& v : t.right().values()) out.push_back(Value::inr(v));
      break;
    case FinType::Kind::Prod:
      for (const Value& a : t.first().values())
        for (const Value& b : t.second().values()) out.push_back(Value::pair(a, b));
      break;
    case FinType::Kind::Fn: {
      const auto& cod = t.cod().values();
      std::size_t n = t.dom().values().size();
      std::vector<std::size_t> digits(n, 0);
      for (std::uint64_t k = 0; k < *card; ++k) {
        std::vector<Value> es;
        es.reserve(n);
        for (std::size_t d : digits) es.push_back(cod[d]);
        out.push_back(Value::table(std::move(es)));
        for (std::size_t i = n; i-- > 0;) {
          if (++digits[i] < cod.size()) break;
          digits[i] = 0;
        }
      }
      break;
    }
  }
  return out;
}

std::vector<Value> enumerate_functions(const FinType& dom, const FinType& cod) {
  return enumerate_values(FinType::fn(dom, cod));
}

bool well_typed(const Value& v, const FinType& t) {
  switch (t.kind()) {
    case FinType::Kind::Unit:
      return v.kind() == Value::Kind::Star;
    case FinType::Kind::Enum:
      return v.kind() == Value::Kind::Elem && v.index() < t.enum_size();
    case FinType::Kind::Sum:
      if (v.kind() == Value::Kind::InL) return well_typed(v.payload(), t.left());
      if (v.kind() == Value::Kind::InR) return well_typed(v.payload(), t.right());
      return false;
    case FinType::Kind::Prod:
      return v.kind() == Value::Kind::Pair && well_typed(v.first(), t.first()) &&
             well_typed(v.second(), t.second());
    case FinType::Kind::Fn: {
      if (v.kind() != Value::Kind::Table) return false;
      auto n = t.dom().cardinality();
      if (!n || v.size() != *n) return false;
      for (const Value& e : v.entries())
        if (!well_typed(e, t.cod())) return false;
      return true;
    }
  }
  return false;
}

bool value_eq(const Value& a, const Value& b, const FinType& t) {
  if (!well_typed(a, t) || !well_typed(b, t))
    throw InvariantViolation("value_eq: operand not of type " + t.to_string());
  return a == b;
}

const Value& apply_table(const Value& table, const Value& arg, const FinType& dom) {
  return table.at(static_cast<std::size_t>(index_of(arg, dom)));
}

}  // namespace monadlaw
