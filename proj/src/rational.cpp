#include "mcov/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace mcov {

Rat parse_decimal(const std::string& text) {
  const char* s = text.c_str();
  const char* p = s;
  bool negative = false;
  if (*p == '+' || *p == '-') {
    negative = (*p == '-');
    ++p;
  }
  std::string digits;  // significand with the decimal point removed
  long frac_digits = 0;
  bool any_digit = false;
  while (std::isdigit(static_cast<unsigned char>(*p))) {
    digits.push_back(*p);
    any_digit = true;
    ++p;
  }
  if (*p == '.') {
    ++p;
    while (std::isdigit(static_cast<unsigned char>(*p))) {
      digits.push_back(*p);
      ++frac_digits;
      any_digit = true;
      ++p;
    }
  }
  if (!any_digit) throw std::invalid_argument("malformed decimal: '" + text + "'");
  long exponent = 0;
  if (*p == 'e' || *p == 'E') {
    ++p;
    bool exp_negative = false;
    if (*p == '+' || *p == '-') {
      exp_negative = (*p == '-');
      ++p;
    }
    if (!std::isdigit(static_cast<unsigned char>(*p)))
      throw std::invalid_argument("malformed exponent: '" + text + "'");
    while (std::isdigit(static_cast<unsigned char>(*p))) {
      exponent = exponent * 10 + (*p - '0');
      if (exponent > 1000000) throw std::invalid_argument("exponent out of range: '" + text + "'");
      ++p;
    }
    if (exp_negative) exponent = -exponent;
  }
  if (*p != '\0') throw std::invalid_argument("trailing characters in decimal: '" + text + "'");

  mpz_class mantissa(digits.empty() ? "0" : digits, 10);
  if (negative) mantissa = -mantissa;
  long power = exponent - frac_digits;  // value = mantissa * 10^power
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(power < 0 ? -power : power));
  Rat result;
  if (power >= 0) {
    result = Rat(mantissa * scale);
  } else {
    result = Rat(mantissa, scale);
  }
  result.canonicalize();
  return result;
}

Rat rat_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite double");
  Rat r;
  mpq_set_d(r.get_mpq_t(), value);
  return r;
}

double rat_to_double(const Rat& value) { return value.get_d(); }

bool fits_double_exactly(const Rat& value) {
  double approx = value.get_d();
  if (!std::isfinite(approx)) return false;
  return rat_from_double(approx) == value;
}

std::string exact_decimal_string(const Rat& value) {
  mpz_class num = value.get_num();
  mpz_class den = value.get_den();
  // Strip factors of 2 and 5; anything left means no finite expansion.
  unsigned long twos = 0, fives = 0;
  mpz_class rest = den;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 2)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), 2);
    ++twos;
  }
  while (mpz_divisible_ui_p(rest.get_mpz_t(), 5)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), 5);
    ++fives;
  }
  if (rest != 1) throw std::invalid_argument("rational has no finite decimal expansion");
  unsigned long k = std::max(twos, fives);
  mpz_class pow2, pow5;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, k - twos);
  mpz_ui_pow_ui(pow5.get_mpz_t(), 5, k - fives);
  mpz_class scaled = num * pow2 * pow5;  // value = scaled / 10^k
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string body = scaled.get_str();
  std::string out;
  if (k == 0) {
    out = body;
  } else {
    if (body.size() <= k) body.insert(0, k + 1 - body.size(), '0');
    out = body.substr(0, body.size() - k) + "." + body.substr(body.size() - k);
    // Trim trailing zeros but keep at least one fractional digit trimmed cleanly.
    while (out.back() == '0') out.pop_back();
    if (out.back() == '.') out.pop_back();
  }
  if (negative) out.insert(out.begin(), '-');
  return out;
}

std::string radius_string(const Rat& r_squared) {
  double v = std::sqrt(r_squared.get_d());
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

unsigned long ceil_sqrt_ratio(const mpz_class& num, const mpz_class& den) {
  if (num <= 0) return 0;
  // i = ceil(sqrt(num/den)): start from the floor integer sqrt and bump.
  mpz_class q = num / den;
  mpz_class root;
  mpz_sqrt(root.get_mpz_t(), q.get_mpz_t());
  unsigned long i = root.get_ui();
  while (mpz_class(i) * mpz_class(i) * den < num) ++i;
  while (i > 0 && mpz_class(i - 1) * mpz_class(i - 1) * den >= num) --i;
  return i;
}

}  // namespace mcov
