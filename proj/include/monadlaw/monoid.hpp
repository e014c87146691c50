#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "monadlaw/finite.hpp"

namespace monadlaw {

// Finite monoid over Enum(size). The table is row-major: mult(a, b) = table[a * size + b].
class MonoidSpec {
 public:
  // Throws Error if the table is not associative or `unit` is not a two-sided unit.
  MonoidSpec(std::string name, std::uint32_t size, std::uint32_t unit,
             std::vector<std::uint32_t> table);

  const std::string& name() const { return name_; }
  std::uint32_t size() const { return size_; }
  FinType carrier() const { return FinType::enumeration(size_); }
  std::uint32_t unit() const { return unit_; }
  std::uint32_t mult(std::uint32_t a, std::uint32_t b) const { return table_[a * size_ + b]; }

  Value unit_value() const { return Value::elem(unit_); }
  Value mult(const Value& a, const Value& b) const {
    return Value::elem(mult(a.index(), b.index()));
  }

  std::string describe() const;

 private:
  std::string name_;
  std::uint32_t size_;
  std::uint32_t unit_;
  std::vector<std::uint32_t> table_;
};

const MonoidSpec& monoid_trivial();
const MonoidSpec& monoid_z2();
const MonoidSpec& monoid_z3();
// Self-maps of {0,1} under composition, a * b = a . b. Elements are the maps
// listed as tables [f 0, f 1] in canonical order: 0 = const 0, 1 = id,
// 2 = swap, 3 = const 1.
const MonoidSpec& monoid_t2();

std::span<const MonoidSpec* const> builtin_monoids();
const MonoidSpec* find_monoid(std::string_view name);

std::vector<Value> monoid_endomorphisms(const MonoidSpec& m);

}  // namespace monadlaw
