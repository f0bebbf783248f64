#ifndef EULERSUM_ERRORS_HPP
#define EULERSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace eulersum {

/// A parameter lies outside the documented precondition of an operation.
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

/// The series named by a SumId does not converge for the given parameters.
class DivergentParameters : public DomainError {
 public:
  explicit DivergentParameters(const std::string& what) : DomainError(what) {}
};

/// Rounding or cancellation consumed the guard bits of a PrecisionContext.
class PrecisionExhausted : public std::runtime_error {
 public:
  explicit PrecisionExhausted(const std::string& what) : std::runtime_error(what) {}
};

/// An oracle could not certify its tolerance within max_terms.
class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
  if (!cond) throw DomainError(what);
}

}  // namespace eulersum

#endif  // EULERSUM_ERRORS_HPP
