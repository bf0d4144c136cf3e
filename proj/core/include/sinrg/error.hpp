#pragma once

#include <stdexcept>
#include <string>

namespace sinrg {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied invalid arguments or configuration.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A quantity is undefined at a point (r = 0 in the path loss).
class SingularityError : public Error {
 public:
  using Error::Error;
};

// An integral over the domain does not converge.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

class RuntimeFailure : public Error {
 public:
  using Error::Error;
};

[[noreturn]] void throw_usage(const std::string& what);

}  // namespace sinrg
