#include "bvlab/rational.hpp"

#include <cctype>

namespace bvlab {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  const std::string original(text);

  bool negative = false;
  if (!text.empty() && (text.front() == '+' || text.front() == '-')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw std::invalid_argument("malformed rational '" + original + "'");
  }
  if (den.find_first_not_of('0') == std::string_view::npos) {
    throw std::invalid_argument("zero denominator in '" + original + "'");
  }
  Rational q{mpz_class{std::string(num)}, mpz_class{std::string(den)}};
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace bvlab
