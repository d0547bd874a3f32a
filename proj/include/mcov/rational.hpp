#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace mcov {

/** Exact rational number used throughout the geometry kernel. */
using Rat = mpq_class;

/**
 * Parses a decimal literal (optional sign, digits, optional fractional part,
 * optional e/E exponent) into an exact rational. "0.3" becomes 3/10, not the
 * nearest double. Throws std::invalid_argument on malformed input.
 */
Rat parse_decimal(const std::string& text);

/** Exact conversion of a finite double into a rational (denominator 2^k). */
Rat rat_from_double(double value);

/** Nearest-double approximation of a rational. */
double rat_to_double(const Rat& value);

/** True when the rational is exactly representable as a double. */
bool fits_double_exactly(const Rat& value);

/**
 * Exact finite decimal expansion of a rational whose reduced denominator has
 * no prime factors other than 2 and 5 (all parsed decimals and all doubles
 * qualify). Throws std::invalid_argument otherwise.
 */
std::string exact_decimal_string(const Rat& value);

/** sqrt of a nonnegative rational, rounded to double, formatted with 17
 *  significant digits (round-trips through strtod). */
std::string radius_string(const Rat& r_squared);

/** Smallest nonnegative integer i with i*i*den >= num (num, den > 0). */
unsigned long ceil_sqrt_ratio(const mpz_class& num, const mpz_class& den);

}  // namespace mcov
