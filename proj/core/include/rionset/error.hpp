#pragma once

#include <stdexcept>
#include <string>

namespace rionset {

// Invalid parameters or non-finite inputs to a pure model function.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A state became non-finite during integration.
class BlowupError : public std::runtime_error {
 public:
  BlowupError(const std::string& what, double last_valid_time)
      : std::runtime_error(what), last_valid_time_(last_valid_time) {}

  double last_valid_time() const noexcept { return last_valid_time_; }

 private:
  double last_valid_time_;
};

class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The small-noise Gaussian limit does not apply (no deterministic onset).
class NoAsymptoticsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A requested density is a point mass (zero variance).
class PointMassError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller-side precondition that is not a numeric domain issue.
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace rionset
