#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace arctic {

// Exact integer / rational scalars. Everything combinatorial in the library is
// computed over these; doubles appear only after taking logarithms.
using ExactInteger = mpz_class;
using ExactRational = mpq_class;

// Binomial coefficient C(n, k) as an exact integer (0 when k < 0 or k > n).
ExactInteger binomial(long n, long k);

// n! as an exact integer.
ExactInteger factorial(unsigned long n);

// q^e for exact rational q and nonnegative integer exponent.
ExactRational pow_rational(const ExactRational& q, unsigned long e);

// Natural log of a positive exact rational, evaluated with a 128-bit
// significand so that numbers with many thousands of digits keep ~30 accurate
// decimal digits in the result.
double log_rational(const ExactRational& q);
double log_integer(const ExactInteger& z);

// Determinant by fraction-free Bareiss elimination over exact integers; the
// rational matrix is scaled row-by-row to integers first and the scale divided
// back out of the result, so no intermediate rounding ever happens.
ExactRational determinant(std::vector<std::vector<ExactRational>> m);
ExactInteger determinant_integer(std::vector<std::vector<ExactInteger>> m);

// Decimal rendering used by the CLI: plain integer string when the denominator
// is one, otherwise "num/den".
std::string to_decimal_string(const ExactRational& q);

// Parses "3", "-2", "1/2", "3.25" into an exact rational.
ExactRational parse_rational(const std::string& text);

}  // namespace arctic
