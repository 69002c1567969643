#pragma once

#include <cstdint>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace mixtree {

using Integer =
    boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;

/// Exact rational; always kept in lowest terms with a positive denominator.
using Rat =
    boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

inline Rat make_rat(std::int64_t num, std::int64_t den = 1) {
  return Rat(Integer(num), Integer(den));
}

/// "19/6", or "3" for integral values.
std::string to_fraction_string(const Rat& value);

/// Decimal rendering rounded half away from zero to `significant` digits,
/// trailing zeros removed.
std::string to_decimal_string(const Rat& value, int significant = 20);

/// "19/6 (~3.1666666666666666667)"
std::string format_rat(const Rat& value);

/// Lossy conversion, for statistics only.
double to_double(const Rat& value);

}  // namespace mixtree
