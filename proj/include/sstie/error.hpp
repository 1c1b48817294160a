#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace sstie {

// Base for everything the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotFound : public Error {
 public:
  using Error::Error;
};

// A pair of nodes with no connecting path.
class NoPath : public Error {
 public:
  using Error::Error;
};

// A correlation column with zero variance; the coefficient is undefined.
class ZeroVariance : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t row, const std::string& what)
      : Error("row " + std::to_string(row) + ": " + what), row_(row) {}

  std::size_t row() const noexcept { return row_; }

 private:
  std::size_t row_;
};

}  // namespace sstie
