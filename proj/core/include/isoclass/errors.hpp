#pragma once

#include <stdexcept>
#include <string>

namespace isoclass {

// Input failed validation (bad CSV row, negative weight, etc.).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Refusal to run an exponential-size routine beyond its configured limit.
class SizeLimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace isoclass
