#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace irs {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class LevelTooShallow : public Error {
 public:
  using Error::Error;
};

class EqualPrefixes : public Error {
 public:
  using Error::Error;
};

class ArityMismatch : public Error {
 public:
  using Error::Error;
};

class EqualElements : public Error {
 public:
  using Error::Error;
};

class DepthExceeded : public Error {
 public:
  using Error::Error;
};

class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

class RigidTrivial : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Thrown when a breadth-first closure grows past its element cap.
class OrderCapExceeded : public Error {
 public:
  OrderCapExceeded(std::size_t cap, std::size_t partial)
      : Error("subgroup enumeration exceeded order cap " + std::to_string(cap) +
              " (reached " + std::to_string(partial) + " elements)"),
        cap_(cap),
        partial_(partial) {}

  std::size_t cap() const { return cap_; }
  std::size_t partial_count() const { return partial_; }

 private:
  std::size_t cap_;
  std::size_t partial_;
};

}  // namespace irs
