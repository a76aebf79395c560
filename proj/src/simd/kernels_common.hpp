#pragma once

#include <cstddef>

namespace ipdw::simd {

// Accumulator lanes shared by all variants (one AVX2 register of doubles).
inline constexpr std::size_t kLanes = 4;

namespace detail {

// Square-and-multiply; vector variants replay the same sequence per lane.
inline double ipow(double base, unsigned exponent) {
  double result = 1.0;
  while (exponent != 0) {
    if (exponent & 1u)
      result *= base;
    exponent >>= 1;
    if (exponent != 0)
      base *= base;
  }
  return result;
}

} // namespace detail
} // namespace ipdw::simd
