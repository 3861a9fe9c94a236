#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace pgn {

// Domain failures. The cli maps every DomainError to exit code 3.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : DomainError {
  BudgetExceeded(const std::string& what, std::optional<double> at = std::nullopt)
      : DomainError(what), time(at) {}
  std::optional<double> time;
};

struct InadmissiblePair : DomainError {
  InadmissiblePair(const std::string& what, std::optional<std::size_t> idx = std::nullopt)
      : DomainError(what), index(idx) {}
  std::optional<std::size_t> index;
};

struct NoValidK0 : DomainError {
  using DomainError::DomainError;
};

struct NonIntegerClassSlope : DomainError {
  using DomainError::DomainError;
};

struct SupViolated : DomainError {
  using DomainError::DomainError;
};

struct BandTooWide : DomainError {
  using DomainError::DomainError;
};

// Raised when concatenated pieces do not meet at a junction.
struct TemplateDiscontinuity : DomainError {
  using DomainError::DomainError;
};

}  // namespace pgn
