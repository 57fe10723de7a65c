#include "ctwist/rational.hpp"

#include "ctwist/errors.hpp"

#include <cctype>

namespace ctwist {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotContact: return "NotContact";
    case Errc::NoReeb: return "NoReeb";
    case Errc::BadParameter: return "BadParameter";
    case Errc::Degenerate: return "Degenerate";
    case Errc::OmegaDegenerate: return "OmegaDegenerate";
    case Errc::InvalidDeformation: return "InvalidDeformation";
    case Errc::InvalidConnection: return "InvalidConnection";
    case Errc::NotSPD: return "NotSPD";
    case Errc::NotSymplectic: return "NotSymplectic";
    case Errc::SingularDenominator: return "SingularDenominator";
    case Errc::NonPositiveT: return "NonPositiveT";
    case Errc::NotInE: return "NotInE";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

namespace {

bool parse_integer(std::string_view s, BigInt& out) {
  if (s.empty()) return false;
  std::size_t start = 0;
  if (s[0] == '+' || s[0] == '-') start = 1;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  out = BigInt(std::string(s));
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view s) {
  const auto slash = s.find('/');
  BigInt num, den = 1;
  if (slash == std::string_view::npos) {
    if (!parse_integer(s, num)) return std::nullopt;
  } else {
    if (!parse_integer(s.substr(0, slash), num)) return std::nullopt;
    if (!parse_integer(s.substr(slash + 1), den)) return std::nullopt;
    if (den == 0) return std::nullopt;
  }
  return Rational(num, den);
}

std::string rational_string(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += "/";
    s += denominator(r).str();
  }
  return s;
}

}  // namespace ctwist
