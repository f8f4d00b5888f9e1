#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace tailopt {

// Seeded random source with fixed output mappings.  The std:: distribution
// templates are implementation-defined, so we map raw mt19937_64 words to
// doubles and bounded integers ourselves; identical seeds therefore produce
// identical streams on every platform.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1) with 53 bits of precision.
  double uniform_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform on [lo, hi).
  double uniform_double(double lo, double hi) {
    return lo + (hi - lo) * uniform_double();
  }

  // Uniform on {0, ..., bound-1}; rejection sampling, no modulo bias.
  std::uint64_t uniform_index(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

// splitmix64-style mix of two words; used to derive independent sub-seeds
// (e.g. per instance or per run) from a master seed.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b);

// FNV-1a hash, used for stable run-identity and parameter hashes.
std::uint64_t fnv1a64(const void* data, std::size_t size);
std::uint64_t fnv1a64(std::string_view text);

}  // namespace tailopt
