#include "mixtree/rational.hpp"

#include <algorithm>

namespace mixtree {

std::string to_fraction_string(const Rat& value) {
  const Integer num = numerator(value);
  const Integer den = denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

Integer pow10(int k) {
  Integer p = 1;
  for (int i = 0; i < k; ++i) p *= 10;
  return p;
}

// round(a / b) for a >= 0, b > 0, halves rounded up
Integer div_round(const Integer& a, const Integer& b) {
  Integer q = a / b;
  Integer rem = a - q * b;
  if (2 * rem >= b) q += 1;
  return q;
}

}  // namespace

std::string to_decimal_string(const Rat& value, int significant) {
  if (value == 0) return "0";
  significant = std::max(significant, 1);
  const bool negative = value < 0;
  const Integer num = abs(numerator(value));
  const Integer den = denominator(value);

  // Pick the scale k so that num * 10^k / den has exactly `significant`
  // integer digits.
  const Integer low = pow10(significant - 1);
  const Integer high = pow10(significant);
  int k = significant - static_cast<int>(num.str().size()) + static_cast<int>(den.str().size());
  Integer scaled;
  for (;;) {
    scaled = k >= 0 ? div_round(num * pow10(k), den) : div_round(num, den * pow10(-k));
    if (scaled >= high) {
      --k;
    } else if (scaled < low) {
      ++k;
    } else {
      break;
    }
  }

  std::string digits = scaled.str();
  std::string out;
  if (k <= 0) {
    out = digits + std::string(static_cast<std::size_t>(-k), '0');
  } else {
    if (static_cast<int>(digits.size()) <= k) {
      digits.insert(0, static_cast<std::size_t>(k) - digits.size() + 1, '0');
    }
    const std::size_t point = digits.size() - static_cast<std::size_t>(k);
    std::string frac = digits.substr(point);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    out = digits.substr(0, point);
    if (!frac.empty()) out += "." + frac;
  }
  return negative ? "-" + out : out;
}

std::string format_rat(const Rat& value) {
  return to_fraction_string(value) + " (~" + to_decimal_string(value) + ")";
}

double to_double(const Rat& value) { return value.convert_to<double>(); }

}  // namespace mixtree
