#pragma once

// Counter-based deterministic sampling. Every drawn value is a pure
// function of (seed, sample index, coordinate), so a sample stream can
// be partitioned across workers or replayed byte-identically on any
// platform. Standard-library distributions are implementation-defined
// and would break that contract.

#include <cstdint>

namespace dsppack {

// splitmix64 finalizer.
constexpr uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

struct IndexSampler {
  uint64_t seed = 0;

  uint64_t raw(uint64_t sample_index, uint64_t coordinate) const {
    return mix64(mix64(seed ^ (sample_index * 0x9e3779b97f4a7c15ull)) + coordinate);
  }
  // Uniform in [0, domain). Modulo bias is below 2^-54 for the domain
  // sizes used here (operand domains are at most a few thousand values).
  uint64_t draw(uint64_t sample_index, uint64_t coordinate, uint64_t domain) const {
    return raw(sample_index, coordinate) % domain;
  }
};

}  // namespace dsppack
