/**
 * Exact scalar types used throughout the library.
 *
 * All arithmetic is carried out over arbitrary-precision rationals
 * (GMP-backed, always canonical: lowest terms, positive denominator).
 * No floating point enters any computation path; doubles appear only
 * in optional decimal renderings of results.
 */

#ifndef KSTAB_RATIONAL_HPP
#define KSTAB_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace kstab {

using Int = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

/// Parse "p/q" or "p" (optional sign, arbitrary precision). Throws
/// std::invalid_argument on malformed input or zero denominator.
Rational parse_rational(const std::string& text);

/// Serialize as "p/q", or "p" when the denominator is 1.
std::string format_rational(const Rational& value);

/// Decimal rendering with the given number of fractional digits,
/// for human-readable output only. Rounds toward zero.
std::string decimal_string(const Rational& value, int digits = 6);

inline Int rational_floor(const Rational& value) {
    Int n = numerator(value), d = denominator(value);
    Int q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
}

inline Int rational_ceil(const Rational& value) { return -rational_floor(-value); }

inline Rational abs_rational(const Rational& value) { return value < 0 ? Rational(-value) : value; }

/// n! as an exact integer.
Int factorial(unsigned n);

}  // namespace kstab

#endif  // KSTAB_RATIONAL_HPP
