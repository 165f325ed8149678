#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace fkdvb {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A violated precondition or type invariant (bad parameters, malformed input).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Evaluation of a fractional power on the open negative real axis.
class BranchCutError : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// A numerical procedure failed to deliver a result of the promised quality.
/// `diagnostics()` holds a JSON object with whatever the failing routine measured.
class NumericalError : public Error {
 public:
  explicit NumericalError(const std::string& what, std::string diagnostics = "{}")
      : Error(what), diagnostics_(std::move(diagnostics)) {}
  const std::string& diagnostics() const noexcept { return diagnostics_; }

 private:
  std::string diagnostics_;
};

}  // namespace fkdvb
