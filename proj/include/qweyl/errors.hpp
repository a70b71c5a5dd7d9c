#pragma once

#include <stdexcept>
#include <string>

namespace qweyl {

/// Invalid combination of arguments, e.g. mixing truncation orders.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inverse requested of an element with no inverse in its ring.
class NonInvertibleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Square root requested of a series whose constant term is not 1.
class NormalizationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace qweyl
