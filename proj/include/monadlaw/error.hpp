#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace monadlaw {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Cardinality overflowed 64 bits or exceeds what can be materialized.
struct DomainTooLarge : Error {
  std::string type;
  explicit DomainTooLarge(std::string t)
      : Error("domain too large: " + t), type(std::move(t)) {}
};

// An internal contract was broken. Never a law failure.
struct InvariantViolation : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

// Lookup of a law, suite or monoid that does not exist.
struct UnknownName : ConfigError {
  std::vector<std::string> suggestions;
  UnknownName(const std::string& what, const std::string& name, std::vector<std::string> near)
      : ConfigError(message(what, name, near)), suggestions(std::move(near)) {}

 private:
  static std::string message(const std::string& what, const std::string& name,
                             const std::vector<std::string>& near) {
    std::string m = "unknown " + what + " '" + name + "'";
    if (!near.empty()) {
      m += "; did you mean ";
      for (std::size_t i = 0; i < near.size(); ++i) m += (i ? ", " : "") + near[i];
      m += "?";
    }
    return m;
  }
};

struct SyntaxError : Error {
  std::size_t line, column;
  SyntaxError(const std::string& msg, std::size_t l, std::size_t c)
      : Error(std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
        line(l),
        column(c) {}
};

struct TypeError : Error {
  using Error::Error;
};

struct UnavailablePrimitive : TypeError {
  std::string primitive;
  explicit UnavailablePrimitive(std::string p, const std::string& why = "")
      : TypeError("primitive " + p + " unavailable" + (why.empty() ? "" : " (" + why + ")")),
        primitive(std::move(p)) {}
};

}  // namespace monadlaw
