#ifndef RPT_RATIONAL_HPP
#define RPT_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

namespace rpt {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p/q" or a plain integer "p" into a reduced rational with
/// positive denominator. Throws std::invalid_argument on syntax errors
/// or a zero denominator.
Rational rational_from_string(const std::string& text);

/// Lowest terms, positive denominator, "/q" omitted when q = 1. This is
/// the canonical form used by every serialization in the project.
std::string rational_to_string(const Rational& value);

BigInt factorial(int n);
BigInt binomial(int n, int k);

}  // namespace rpt

#endif
