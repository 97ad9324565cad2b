#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mimkit {

// Operand dimensions disagree (e.g. distribution size vs channel rows).
class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A parameter lies outside the domain an operation is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class SolveMethod { closed_form, numeric, endpoint };

constexpr std::string_view to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::closed_form:
      return "closed_form";
    case SolveMethod::numeric:
      return "numeric";
    case SolveMethod::endpoint:
      return "endpoint";
  }
  return "unknown";
}

namespace detail {

[[noreturn]] inline void domain_fail(const std::string& what) { throw DomainError(what); }

inline void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) {
    domain_fail(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace detail
}  // namespace mimkit
