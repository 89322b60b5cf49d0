#include "freemult/scalar.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "freemult/error.hpp"

namespace freemult {
namespace {

using boost::multiprecision::cpp_int;

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorCode::ParseError, "not a number: '" + std::string(text) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

cpp_int pow10(long n) {
  cpp_int p = 1;
  for (long i = 0; i < n; ++i) p *= 10;
  return p;
}

Rational parse_decimal(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) bad_number(text);
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  cpp_int digits = 0;
  long scale = 0;
  bool any_digit = false;
  bool seen_point = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      any_digit = true;
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else if (c == '_') {
      continue;
    } else {
      break;
    }
  }
  if (!any_digit) bad_number(text);
  long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') bad_number(text);
    std::string_view ex = s.substr(i + 1);
    if (!ex.empty() && ex.front() == '+') ex.remove_prefix(1);
    auto [ptr, ec] = std::from_chars(ex.data(), ex.data() + ex.size(), exponent);
    if (ec != std::errc() || ptr != ex.data() + ex.size() || ex.empty()) bad_number(text);
    if (exponent > 4000 || exponent < -4000) bad_number(text);
  }
  const long shift = exponent - scale;
  Rational q = shift >= 0 ? Rational(digits * pow10(shift)) : Rational(digits, pow10(-shift));
  return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  const auto slash = s.find('/');
  if (slash == std::string_view::npos) return parse_decimal(s);
  const Rational num = parse_decimal(s.substr(0, slash));
  const Rational den = parse_decimal(s.substr(slash + 1));
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return num / den;
}

std::string to_string(const Rational& q) {
  const cpp_int num = boost::multiprecision::numerator(q);
  const cpp_int den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string format_double(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

double to_double(const Rational& q) {
  // Route through a wide binary float so the final rounding is correct.
  using Wide = boost::multiprecision::cpp_bin_float_100;
  const Wide num(boost::multiprecision::numerator(q));
  const Wide den(boost::multiprecision::denominator(q));
  return static_cast<double>(num / den);
}

Scalar Scalar::parse(std::string_view text) {
  Scalar s;
  s.exact_ = parse_rational(text);
  s.value_ = to_double(*s.exact_);
  s.text_ = std::string(trim(text));
  return s;
}

Scalar Scalar::exact(const Rational& q) {
  Scalar s;
  s.exact_ = q;
  s.value_ = to_double(q);
  s.text_ = to_string(q);
  return s;
}

Scalar Scalar::inexact(double x) {
  if (!std::isfinite(x)) throw Error(ErrorCode::InvalidArgument, "non-finite scalar");
  Scalar s;
  s.exact_.reset();
  s.value_ = x;
  s.text_ = format_double(x);
  return s;
}

const Rational& Scalar::rational() const {
  if (!exact_) throw Error(ErrorCode::ExactnessLost, "scalar " + text_ + " is not exact");
  return *exact_;
}

}  // namespace freemult
