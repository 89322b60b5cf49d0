#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace freemult {

using Rational = boost::multiprecision::cpp_rational;

/// Parses "3/2", "-0.25", "1e-3", "7" into an exact rational. Every finite
/// decimal literal is an exact rational, so nothing is rounded here.
Rational parse_rational(std::string_view text);

/// Canonical spelling: "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Rational& q);

/// Shortest decimal spelling that round-trips through strtod.
std::string format_double(double x);

double to_double(const Rational& q);

/// A real number that remembers whether it is known exactly, and how it was
/// spelled on input so measure files re-serialize bit-for-bit.
class Scalar {
 public:
  Scalar() : exact_(Rational(0)), value_(0.0), text_("0") {}

  static Scalar parse(std::string_view text);
  static Scalar exact(const Rational& q);
  static Scalar inexact(double x);

  bool is_exact() const noexcept { return exact_.has_value(); }
  double value() const noexcept { return value_; }
  const std::string& text() const noexcept { return text_; }

  /// Throws ExactnessLost for inexact scalars.
  const Rational& rational() const;

 private:
  std::optional<Rational> exact_;
  double value_;
  std::string text_;
};

}  // namespace freemult
