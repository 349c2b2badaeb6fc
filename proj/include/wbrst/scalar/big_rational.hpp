#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace wbrst {

/// Arbitrary-precision rational. GMP keeps it canonical (reduced, positive
/// denominator) after every arithmetic operation.
using BigRational = mpq_class;
using BigInteger = mpz_class;

/// Raised on division by zero, evaluation at a pole and similar exact-math
/// failures.
class MathError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Parses "p", "-p" or "p/q" into a reduced rational.
BigRational parse_rational(const std::string& text);

std::string to_string(const BigRational& q);

inline bool is_integer(const BigRational& q) { return q.get_den() == 1; }

BigRational binomial(const BigRational& top, long k);
BigRational factorial(long n);

}  // namespace wbrst
