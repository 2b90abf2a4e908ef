#pragma once

// Fixed-width two's-complement words and the bit-field operations the
// packing schemes are built from: wrapping, arithmetic-shift field
// extraction, single-bit tests and overlap-checked OR composition.

#include <span>
#include <vector>

#include "dsppack/wide.hpp"

namespace dsppack {

// A value together with the width and signedness of its container.
// Signed words hold values in [-2^(width-1), 2^(width-1)-1], unsigned
// words in [0, 2^width-1]; bits above the width behave as the
// two's-complement extension of the stored value.
struct Word {
  wide_int value{0};
  int width{1};
  bool is_signed{true};

  friend bool operator==(const Word&, const Word&) = default;
};

inline std::string to_string(const Word& w) {
  return to_string(w.value) + (w.is_signed ? ":s" : ":u") + std::to_string(w.width);
}

inline void check_width(int width) {
  if (width < 1 || width > kMaxWordWidth)
    throw Error("word width " + std::to_string(width) + " out of range 1..128");
}

// v mod 2^width as a signed word.
inline Word wrap_signed(wide_int v, int width) {
  check_width(width);
  return Word{wrap_signed_value(v, width), width, true};
}

// v mod 2^width as an unsigned word.
inline Word wrap_unsigned(wide_int v, int width) {
  check_width(width);
  return Word{wrap_unsigned_value(v, width), width, false};
}

// floor(v / 2^offset) mod 2^width. Arithmetic-shift-then-mask: right
// shifts of signed values round toward negative infinity.
inline Word extract_field(const Word& v, int offset, int width, bool sign) {
  check_width(width);
  if (offset < 0) throw Error("negative field offset");
  wide_int shifted = floor_shift_right(v.value, offset);
  return sign ? wrap_signed(shifted, width) : wrap_unsigned(shifted, width);
}

// Bit `index`, sign-extended above the word's width.
inline int test_bit(const Word& v, int index) {
  if (index < 0) throw Error("negative bit index");
  return bit_at(v.value, index);
}

class OverlapError : public Error {
 public:
  OverlapError(size_t first, size_t second)
      : Error("fields " + std::to_string(first) + " and " + std::to_string(second) +
              " occupy intersecting bit ranges"),
        first_field(first),
        second_field(second) {}
  size_t first_field;
  size_t second_field;
};

class OperandRange : public Error {
 public:
  OperandRange(char vec, size_t index, wide_int value, int width, bool is_signed)
      : Error(std::string(1, vec) + "[" + std::to_string(index) + "] = " +
              dsppack::to_string(value) + " outside " + (is_signed ? "signed " : "unsigned ") +
              std::to_string(width) + "-bit range") {}
};

struct PlacedField {
  Word field;
  int offset{0};
};

// Bitwise-OR composition of fields inside a container word. A signed
// field reserves its sign-extension range up to the container's top
// bit, so at most one signed field fits and only at the highest
// position. Throws OverlapError naming the colliding fields.
inline Word or_pack(std::span<const PlacedField> fields, int container_width = 48) {
  check_width(container_width);
  struct Range {
    int lo, hi;  // [lo, hi)
  };
  std::vector<Range> ranges;
  ranges.reserve(fields.size());
  bool any_signed = false;
  for (const PlacedField& f : fields) {
    if (f.offset < 0) throw Error("negative field offset");
    int hi = f.field.is_signed ? container_width : f.offset + f.field.width;
    if (hi > container_width)
      throw Error("field at offset " + std::to_string(f.offset) + " exceeds container width " +
                  std::to_string(container_width));
    ranges.push_back({f.offset, hi});
    any_signed = any_signed || f.field.is_signed;
  }
  for (size_t i = 0; i < ranges.size(); ++i)
    for (size_t j = i + 1; j < ranges.size(); ++j)
      if (ranges[i].lo < ranges[j].hi && ranges[j].lo < ranges[i].hi) throw OverlapError(i, j);

  wide_uint bits = 0;
  for (const PlacedField& f : fields)
    bits |= (static_cast<wide_uint>(f.field.value) << f.offset) & mask_bits(container_width);
  return any_signed ? wrap_signed(static_cast<wide_int>(bits), container_width)
                    : wrap_unsigned(static_cast<wide_int>(bits), container_width);
}

inline Word or_pack(std::initializer_list<PlacedField> fields, int container_width = 48) {
  return or_pack(std::span<const PlacedField>(fields.begin(), fields.size()), container_width);
}

}  // namespace dsppack
