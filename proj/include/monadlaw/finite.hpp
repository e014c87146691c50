#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monadlaw/error.hpp"

namespace monadlaw {

class Value;

// Finite type descriptor. Immutable and cheap to copy.
class FinType {
 public:
  enum class Kind : std::uint8_t { Unit, Enum, Sum, Prod, Fn };

  FinType();  // Unit

  static FinType unit();
  static FinType enumeration(std::uint32_t n);
  static FinType sum(FinType left, FinType right);
  static FinType prod(FinType first, FinType second);
  static FinType fn(FinType dom, FinType cod);

  Kind kind() const;
  std::uint32_t enum_size() const;
  const FinType& left() const;
  const FinType& right() const;
  const FinType& first() const;
  const FinType& second() const;
  const FinType& dom() const;
  const FinType& cod() const;

  // nullopt when the count does not fit in 64 bits.
  std::optional<std::uint64_t> cardinality() const;
  std::uint64_t checked_cardinality() const;

  // Canonical enumeration, computed once per descriptor and shared.
  // Throws DomainTooLarge above kMaxMaterialized.
  const std::vector<Value>& values() const;

  std::string to_string() const;

  friend bool operator==(const FinType& a, const FinType& b);

  static constexpr std::uint64_t kMaxMaterialized = 1u << 22;

 private:
  struct Node;
  explicit FinType(std::shared_ptr<const Node> n);
  std::shared_ptr<const Node> node_;
};

// Inhabitant of a FinType. Functions are tables indexed by the canonical
// enumeration of their domain.
class Value {
 public:
  enum class Kind : std::uint8_t { Star, Elem, InL, InR, Pair, Table };

  Value() = default;  // Star

  static Value star() { return Value(); }
  static Value elem(std::uint32_t i);
  static Value inl(Value v);
  static Value inr(Value v);
  static Value pair(Value a, Value b);
  static Value table(std::vector<Value> entries);

  Kind kind() const { return kind_; }
  std::uint32_t index() const { return elem_; }
  const Value& payload() const { return (*kids_)[0]; }
  const Value& first() const { return (*kids_)[0]; }
  const Value& second() const { return (*kids_)[1]; }
  std::size_t size() const { return kids_ ? kids_->size() : 0; }
  const Value& at(std::size_t i) const { return (*kids_)[i]; }
  std::span<const Value> entries() const {
    return kids_ ? std::span<const Value>(*kids_) : std::span<const Value>();
  }

  std::string to_string() const;
  static Value parse(std::string_view text);

  friend bool operator==(const Value& a, const Value& b);

 private:
  Kind kind_ = Kind::Star;
  std::uint32_t elem_ = 0;
  std::shared_ptr<const std::vector<Value>> kids_;
};

// Position of v in the canonical enumeration of t.
std::uint64_t index_of(const Value& v, const FinType& t);
// Inverse of index_of.
Value value_at(const FinType& t, std::uint64_t index);

std::vector<Value> enumerate_values(const FinType& t);
std::vector<Value> enumerate_functions(const FinType& dom, const FinType& cod);

bool well_typed(const Value& v, const FinType& t);
// Throws InvariantViolation when either side is not typed at t.
bool value_eq(const Value& a, const Value& b, const FinType& t);

// Lookup of a table at an argument of the given domain type.
const Value& apply_table(const Value& table, const Value& arg, const FinType& dom);

}  // namespace monadlaw
