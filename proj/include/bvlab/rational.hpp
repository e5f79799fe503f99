#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace bvlab {

/// Exact rational scalar used for every matrix entry and model coefficient.
using Rational = mpq_class;

/// Thrown when an operation would exceed a configured size cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "p", "-p", "p/q". Rejects zero denominators and anything else.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

/// num/den in lowest terms. mpq_class(num, den) skips that step, and GMP arithmetic
/// assumes it.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace bvlab
