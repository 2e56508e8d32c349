#pragma once

#include <stdexcept>
#include <string>

namespace vragt {

enum class ErrorKind {
  InvalidInput,
  InvalidTopology,
  InvalidConfiguration,
  UnsupportedConfiguration,
  ValidationFailure,
  NumericalFailure,
  Divergence,
  InsufficientData,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace vragt
