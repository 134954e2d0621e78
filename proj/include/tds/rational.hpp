#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace tds {

using Rational = mpq_class;
using Integer = mpz_class;

/// Raised for every input that is well-formed but mathematically invalid
/// (wrong sign branch, not two-distance, indefinite Gram, ...).
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string error, std::string detail = {})
      : std::runtime_error(detail.empty() ? error : error + ": " + detail),
        error_(std::move(error)),
        detail_(std::move(detail)) {}

  const std::string& error() const noexcept { return error_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string error_;
  std::string detail_;
};

/// Raised when textual input (rationals, matrix files, CSV) cannot be parsed.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p/q", an integer, or a plain decimal literal such as "-0.25"
/// (decimals are converted exactly). Result is canonicalized.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" or "p" rendering.
std::string to_string(const Rational& q);

Integer floor(const Rational& q);
Integer ceil(const Rational& q);
bool is_integer(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact conversion of a finite double (every double is a dyadic rational).
Rational from_double(double x);

}  // namespace tds
