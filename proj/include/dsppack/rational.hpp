#pragma once

// Exact rationals for error metrics and their decimal rendering. Stats
// are carried as integer counts so every displayed figure can be
// audited against the exact fraction; rounding happens only at the
// final formatting step, with an explicit mode.

#include <numeric>
#include <string>

#include "dsppack/wide.hpp"

namespace dsppack {

struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction reduced() const {
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g == 0) return {0, 1};
    return {num / g, den / g};
  }
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

enum class Rounding { half_even, half_up, truncate };

// num/den rendered with a fixed number of fractional digits, computed
// in integer arithmetic.
inline std::string format_decimal(long long num, long long den, int digits,
                                  Rounding mode = Rounding::half_even) {
  if (den <= 0) throw Error("non-positive denominator");
  bool neg = num < 0;
  wide_int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  wide_int scaled = static_cast<wide_int>(neg ? -num : num) * scale;
  wide_int q = scaled / den;
  wide_int rem = scaled % den;
  switch (mode) {
    case Rounding::truncate:
      break;
    case Rounding::half_up:
      if (2 * rem >= den) ++q;
      break;
    case Rounding::half_even:
      if (2 * rem > den || (2 * rem == den && (q & 1))) ++q;
      break;
  }
  std::string s = to_string(q);
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<size_t>(digits + 1) - s.size(), '0');
    s.insert(s.size() - static_cast<size_t>(digits), ".");
  }
  if (neg && q != 0) s.insert(0, "-");
  return s;
}

inline std::string format_decimal(const Fraction& f, int digits,
                                  Rounding mode = Rounding::half_even) {
  return format_decimal(f.num, f.den, digits, mode);
}

}  // namespace dsppack
