#include "sv/core.hpp"

#include <cctype>

namespace sv {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::OddSum: return "OddSum";
    case ErrorCode::InvalidStratum: return "InvalidStratum";
    case ErrorCode::MissingVolume: return "MissingVolume";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ZeroNotInStratum: return "ZeroNotInStratum";
    case ErrorCode::NoSpinStructure: return "NoSpinStructure";
    case ErrorCode::UnknownComponent: return "UnknownComponent";
    case ErrorCode::MalformedCycle: return "MalformedCycle";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadGluing: return "BadGluing";
    case ErrorCode::Reducible: return "Reducible";
    case ErrorCode::SamplingFailure: return "SamplingFailure";
    case ErrorCode::ToleranceBreach: return "ToleranceBreach";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_name(code)) + ": " + message), code_(code) {}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) throw Error(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
  Integer value = 0;
  for (; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i])))
      throw Error(ErrorCode::ParseError, "bad rational '" + std::string(whole) + "'");
    value = value * 10 + (text[i] - '0');
  }
  return negative ? Integer(-value) : value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view t = trim(text);
  auto slash = t.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(t, text));
  Integer num = parse_integer(trim(t.substr(0, slash)), text);
  Integer den = parse_integer(trim(t.substr(slash + 1)), text);
  if (den == 0) throw Error(ErrorCode::ParseError, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  Integer num = boost::multiprecision::numerator(value);
  Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

Integer factorial(int n) {
  Integer r = 1;
  for (int k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace sv
