#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace jetsegre {

/// Raised when an operation is called outside its mathematical domain
/// (level out of range, wrong degree, negative exponent, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised by the expression parser. Carries the byte offset of the offending token.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace jetsegre
