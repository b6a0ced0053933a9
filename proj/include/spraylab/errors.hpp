#pragma once

#include <stdexcept>
#include <string>

namespace spraylab {

/// Malformed inputs: dimension mismatches, zero vectors where m\{0} is
/// required, inconsistent index sets. Maps to CLI exit code 2.
class InvalidInputError : public std::invalid_argument {
public:
  explicit InvalidInputError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// DSL syntax errors. `offset` is the byte position in the source string.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}

  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// DSL evaluation errors (division by zero, sqrt of a negative value).
/// Carries the pretty-printed offending subexpression.
class DomainError : public std::runtime_error {
public:
  DomainError(const std::string& what, std::string subexpr)
      : std::runtime_error(what + " in subexpression: " + subexpr),
        subexpr_(std::move(subexpr)) {}

  const std::string& subexpression() const { return subexpr_; }

private:
  std::string subexpr_;
};

/// Integration failures: blow-up (non-finite state) or leaving the slit
/// domain m\{0}. Carries the last time reached. Maps to CLI exit code 3.
class FlowError : public std::runtime_error {
public:
  enum class Kind { blow_up, domain_exit };

  FlowError(Kind kind, double t_reached, const std::string& what)
      : std::runtime_error(what + " (reached t = " + std::to_string(t_reached) + ")"),
        kind_(kind),
        t_reached_(t_reached) {}

  Kind kind() const { return kind_; }
  double t_reached() const { return t_reached_; }

private:
  Kind kind_;
  double t_reached_;
};

}  // namespace spraylab
