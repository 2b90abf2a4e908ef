#pragma once

// 128-bit integer support used throughout the library. All internal
// arithmetic runs on __int128 so 48-bit datapath values and their
// intermediate products never overflow; widths are enforced only at
// module boundaries (port loading, field extraction).

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dsppack {

using wide_int = __int128;
using wide_uint = unsigned __int128;

inline constexpr int kMaxWordWidth = 128;

// Low `width` bits set. width is clamped to [0, 128].
constexpr wide_uint mask_bits(int width) {
  if (width <= 0) return 0;
  if (width >= kMaxWordWidth) return ~wide_uint{0};
  return (wide_uint{1} << width) - 1;
}

// v reduced modulo 2^width, reinterpreted into [-2^(width-1), 2^(width-1)-1].
constexpr wide_int wrap_signed_value(wide_int v, int width) {
  wide_uint u = static_cast<wide_uint>(v) & mask_bits(width);
  if ((u >> (width - 1)) & 1) u |= ~mask_bits(width);
  return static_cast<wide_int>(u);
}

// v reduced modulo 2^width, kept non-negative.
constexpr wide_int wrap_unsigned_value(wide_int v, int width) {
  return static_cast<wide_int>(static_cast<wide_uint>(v) & mask_bits(width));
}

constexpr bool fits_signed(wide_int v, int width) {
  return wrap_signed_value(v, width) == v;
}

constexpr bool fits_unsigned(wide_int v, int width) {
  return v >= 0 && wrap_unsigned_value(v, width) == v;
}

// floor(v / 2^n) for n >= 0. Arithmetic shift; shifts past the word
// size saturate to the sign.
constexpr wide_int floor_shift_right(wide_int v, int n) {
  if (n >= kMaxWordWidth) return v < 0 ? -1 : 0;
  return v >> n;
}

// Bit `index` of the two's-complement representation, sign-extended
// upward without bound.
constexpr int bit_at(wide_int v, int index) {
  return static_cast<int>((static_cast<wide_uint>(floor_shift_right(v, index))) & 1);
}

constexpr wide_int wide_abs(wide_int v) { return v < 0 ? -v : v; }

inline std::string to_string(wide_int v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  wide_uint u = neg ? static_cast<wide_uint>(-(v + 1)) + 1 : static_cast<wide_uint>(v);
  char buf[48];
  int pos = 48;
  while (u != 0) {
    buf[--pos] = static_cast<char>('0' + static_cast<int>(u % 10));
    u /= 10;
  }
  std::string s(buf + pos, 48 - pos);
  return neg ? "-" + s : s;
}

// Zero-padded lowercase hex of the low `bits` bits (bits rounded up to
// a whole number of digits).
inline std::string to_hex(wide_int v, int bits) {
  wide_uint u = static_cast<wide_uint>(v) & mask_bits(bits);
  int digits = (bits + 3) / 4;
  std::string s(static_cast<size_t>(digits), '0');
  for (int i = digits - 1; i >= 0; --i) {
    s[static_cast<size_t>(i)] = "0123456789abcdef"[static_cast<int>(u & 0xf)];
    u >>= 4;
  }
  return s;
}

// Zero-padded binary of the low `bits` bits.
inline std::string to_binary(wide_int v, int bits) {
  wide_uint u = static_cast<wide_uint>(v) & mask_bits(bits);
  std::string s(static_cast<size_t>(bits), '0');
  for (int i = bits - 1; i >= 0; --i) {
    s[static_cast<size_t>(i)] = static_cast<char>('0' + static_cast<int>(u & 1));
    u >>= 1;
  }
  return s;
}

// Base error type for this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dsppack
