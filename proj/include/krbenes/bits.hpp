#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>

namespace krbenes {

using Line = std::uint32_t;

constexpr bool is_power_of_two(std::size_t x) { return x != 0 && std::has_single_bit(x); }

/// log2 of a power of two.
constexpr unsigned log2_exact(std::size_t x) { return static_cast<unsigned>(std::countr_zero(x)); }

/// Reverses the low `width` bits of `x`.
constexpr Line reverse_bits(Line x, unsigned width) {
  Line r = 0;
  for (unsigned b = 0; b < width; ++b) {
    r = (r << 1) | ((x >> b) & 1u);
  }
  return r;
}

/// Smallest power of two >= k, with 0 and 1 both mapping to 1.
constexpr std::size_t ceil_power_of_two(std::size_t k) { return k <= 1 ? 1 : std::bit_ceil(k); }

}  // namespace krbenes
