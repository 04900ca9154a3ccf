#include "dpp/rational.hpp"

#include <cctype>

#include "dpp/errors.hpp"

namespace dpp {

std::string format_rational(const Rational& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

namespace {

bool is_integer_token(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

// BigInt's string constructor rejects a leading '+'.
BigInt to_bigint(const std::string& s) {
  return BigInt(s[0] == '+' ? s.substr(1) : s);
}

}  // namespace

Rational parse_rational(const std::string& text, const std::string& where) {
  auto bad = [&] { return ParseError(where, "expected \"num/den\", got \"" + text + "\""); };
  std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_integer_token(text)) throw bad();
    return Rational(to_bigint(text));
  }
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!is_integer_token(num) || !is_integer_token(den)) throw bad();
  BigInt n = to_bigint(num);
  BigInt d = to_bigint(den);
  if (d == 0) throw ParseError(where, "zero denominator in \"" + text + "\"");
  if (d < 0) {  // Rational's two-argument constructor wants d > 0.
    n = -n;
    d = -d;
  }
  return Rational(n, d);
}

}  // namespace dpp
