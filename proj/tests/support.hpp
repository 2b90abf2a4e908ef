#pragma once

#include <catch_amalgamated.hpp>

#include "dsppack/wide.hpp"

namespace Catch {

template <>
struct StringMaker<__int128> {
  static std::string convert(__int128 v) { return dsppack::to_string(v); }
};

template <>
struct StringMaker<unsigned __int128> {
  static std::string convert(unsigned __int128 v) {
    return dsppack::to_string(static_cast<__int128>(v));
  }
};

}  // namespace Catch
