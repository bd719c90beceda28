#include "cubeavg/rational.hpp"

#include <stdexcept>

#include "cubeavg/errors.hpp"

namespace cubeavg {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw Error(Errc::BadConfig, "empty rational literal");
  // cpp_rational accepts "p/q" and plain integers, but silently accepts
  // some junk prefixes; validate the character set ourselves.
  std::size_t slashes = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (c == '/') {
      ++slashes;
      continue;
    }
    if (c == '-' && (i == 0 || s[i - 1] == '/')) continue;
    if (c < '0' || c > '9')
      throw Error(Errc::BadConfig, "bad rational literal: " + s);
  }
  if (slashes > 1) throw Error(Errc::BadConfig, "bad rational literal: " + s);
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw Error(Errc::BadConfig, "bad rational literal: " + s);
  }
}

std::string rational_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational rational_pow(const Rational& base, unsigned exp) {
  Rational acc = 1;
  Rational b = base;
  while (exp > 0) {
    if (exp & 1u) acc *= b;
    b *= b;
    exp >>= 1;
  }
  return acc;
}

Rational rational_abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonBijective: return "NonBijective";
    case Errc::NotMeasurePreserving: return "NotMeasurePreserving";
    case Errc::NotCommuting: return "NotCommuting";
    case Errc::BadWeights: return "BadWeights";
    case Errc::MismatchedSpace: return "MismatchedSpace";
    case Errc::EmptyCellMass: return "EmptyCellMass";
    case Errc::SupportOverflow: return "SupportOverflow";
    case Errc::EmptyBox: return "EmptyBox";
    case Errc::NotIndicator: return "NotIndicator";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace cubeavg
