#include "rpt/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace rpt {

Rational rational_from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  for (char c : text) {
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '/')) {
      throw std::invalid_argument("bad rational literal: " + text);
    }
  }
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw std::invalid_argument("bad rational literal: " + text);
  }
  if (q.get_den() == 0) {
    throw std::invalid_argument("zero denominator: " + text);
  }
  q.canonicalize();
  return q;
}

std::string rational_to_string(const Rational& value) { return value.get_str(); }

BigInt factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial of negative argument");
  BigInt result;
  mpz_fac_ui(result.get_mpz_t(), static_cast<unsigned long>(n));
  return result;
}

BigInt binomial(int n, int k) {
  if (n < 0 || k < 0) throw std::invalid_argument("binomial with negative argument");
  if (k > n) return 0;
  BigInt result;
  mpz_bin_uiui(result.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return result;
}

}  // namespace rpt
