#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace axionkit {

//! Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

//! A precondition on an argument was violated (bad parameter, empty grid...).
class InvalidArgument : public Error {
public:
  using Error::Error;
};

//! A computation could not produce a finite or well-posed result.
class NumericalError : public Error {
public:
  using Error::Error;
};

//! Least-squares design matrix lost rank.
class DegenerateFitError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

//! Sampling interval too coarse for the requested band.
class AliasingError : public InvalidArgument {
public:
  using InvalidArgument::InvalidArgument;
};

struct FieldIssue {
  std::string field;
  std::string message;
};

//! Configuration failed to parse or validate. Carries one entry per bad field.
class ConfigError : public Error {
public:
  explicit ConfigError(std::vector<FieldIssue> issues);
  ConfigError(std::string field, std::string message);

  const std::vector<FieldIssue> &issues() const noexcept { return issues_; }

private:
  std::vector<FieldIssue> issues_;
};

} // namespace axionkit
