#include "monadlaw/monoid.hpp"

#include <array>

namespace monadlaw {

MonoidSpec::MonoidSpec(std::string name, std::uint32_t size, std::uint32_t unit,
                       std::vector<std::uint32_t> table)
    : name_(std::move(name)), size_(size), unit_(unit), table_(std::move(table)) {
  if (size_ == 0) throw Error("monoid " + name_ + ": empty carrier");
  if (table_.size() != std::size_t(size_) * size_)
    throw Error("monoid " + name_ + ": table is not " + std::to_string(size_) + "x" +
                std::to_string(size_));
  if (unit_ >= size_) throw Error("monoid " + name_ + ": unit outside carrier");
  for (auto x : table_)
    if (x >= size_) throw Error("monoid " + name_ + ": table entry outside carrier");
  for (std::uint32_t a = 0; a < size_; ++a)
    if (mult(unit_, a) != a || mult(a, unit_) != a)
      throw Error("monoid " + name_ + ": unit law fails at " + std::to_string(a));
  for (std::uint32_t a = 0; a < size_; ++a)
    for (std::uint32_t b = 0; b < size_; ++b)
      for (std::uint32_t c = 0; c < size_; ++c)
        if (mult(mult(a, b), c) != mult(a, mult(b, c)))
          throw Error("monoid " + name_ + ": not associative at (" + std::to_string(a) + ", " +
                      std::to_string(b) + ", " + std::to_string(c) + ")");
}

std::string MonoidSpec::describe() const {
  std::string s = name_ + ": carrier Enum(" + std::to_string(size_) + "), unit " +
                  std::to_string(unit_) + ", table [";
  for (std::uint32_t a = 0; a < size_; ++a) {
    if (a) s += "; ";
    for (std::uint32_t b = 0; b < size_; ++b) {
      if (b) s += " ";
      s += std::to_string(mult(a, b));
    }
  }
  return s + "]";
}

namespace {

std::vector<std::uint32_t> addition_table(std::uint32_t n) {
  std::vector<std::uint32_t> t(std::size_t(n) * n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
  return t;
}

std::vector<std::uint32_t> composition_table() {
  // Element i is the map [i / 2, i % 2]; (a . b)(x) = a(b(x)).
  auto ap = [](std::uint32_t f, std::uint32_t x) { return x == 0 ? f / 2 : f % 2; };
  std::vector<std::uint32_t> t(16);
  for (std::uint32_t a = 0; a < 4; ++a)
    for (std::uint32_t b = 0; b < 4; ++b) t[a * 4 + b] = ap(a, ap(b, 0)) * 2 + ap(a, ap(b, 1));
  return t;
}

}  // namespace

const MonoidSpec& monoid_trivial() {
  static const MonoidSpec m("Trivial", 1, 0, {0});
  return m;
}
const MonoidSpec& monoid_z2() {
  static const MonoidSpec m("Z2", 2, 0, addition_table(2));
  return m;
}
const MonoidSpec& monoid_z3() {
  static const MonoidSpec m("Z3", 3, 0, addition_table(3));
  return m;
}
const MonoidSpec& monoid_t2() {
  static const MonoidSpec m("T2", 4, 1, composition_table());
  return m;
}

std::span<const MonoidSpec* const> builtin_monoids() {
  static const std::array<const MonoidSpec*, 4> all{&monoid_trivial(), &monoid_z2(),
                                                    &monoid_z3(), &monoid_t2()};
  return all;
}

const MonoidSpec* find_monoid(std::string_view name) {
  for (const MonoidSpec* m : builtin_monoids())
    if (m->name() == name) return m;
  return nullptr;
}

std::vector<Value> monoid_endomorphisms(const MonoidSpec& m) {
  std::vector<Value> out;
  for (const Value& h : enumerate_functions(m.carrier(), m.carrier())) {
    auto at = [&](std::uint32_t x) { return h.at(x).index(); };
    bool ok = at(m.unit()) == m.unit();
    for (std::uint32_t a = 0; ok && a < m.size(); ++a)
      for (std::uint32_t b = 0; ok && b < m.size(); ++b)
        ok = at(m.mult(a, b)) == m.mult(at(a), at(b));
    if (ok) out.push_back(h);
  }
  return out;
}

}  // namespace monadlaw
