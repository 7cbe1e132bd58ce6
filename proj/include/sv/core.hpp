#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace sv {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class ErrorCode {
  OddSum,
  InvalidStratum,
  MissingVolume,
  NotAdmissible,
  ParseError,
  ZeroNotInStratum,
  NoSpinStructure,
  UnknownComponent,
  MalformedCycle,
  DimensionMismatch,
  BadGluing,
  Reducible,
  SamplingFailure,
  ToleranceBreach,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Accepts "p", "-p" or "p/q" with q != 0.
Rational parse_rational(std::string_view text);

// Reduced form; integers are printed without a denominator.
std::string to_string(const Rational& value);

Integer factorial(int n);

}  // namespace sv
