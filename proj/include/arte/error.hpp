#pragma once

#include <stdexcept>
#include <string>

namespace arte {

// Precondition or domain violation in a numeric routine (empty inputs,
// non-positive prices, zero volatility, mismatched calendars, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Fatal input problem: unreadable file, malformed header, bad config line.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace arte
