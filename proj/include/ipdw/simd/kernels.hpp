#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace ipdw::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

// Sums of w_i * v_i and w_i with w_i = d_i^-power.
struct WeightedSums {
  double numerator = 0.0;
  double denominator = 0.0;
};

// Function table for one instruction set. All entries accept arbitrary
// lengths and unaligned data.
struct Kernels {
  Isa isa;

  // out[i] = (xs[i] - qx)^2 + (ys[i] - qy)^2
  void (*squared_distances)(const double *xs, const double *ys, std::size_t n, double qx,
                            double qy, double *out);

  // Requires every d_i > 0.
  WeightedSums (*inverse_power_sums)(const double *dist, const double *values, std::size_t n,
                                     double power);

  // Count of i in [0, n) with a[i] != b[i] and neither equal to nodata.
  std::size_t (*count_differing_pairs)(const double *a, const double *b, std::size_t n,
                                       double nodata);
};

const Kernels &scalar_kernels();
// Null when the variant was not compiled in.
const Kernels *avx2_kernels();
const Kernels *neon_kernels();

bool isa_supported(Isa isa);

// The table in use: the widest supported variant unless overridden by
// force_isa() or the IPDW_SIMD environment variable (scalar|avx2|neon).
const Kernels &active();

// Throws ArgumentError if the ISA is not available on this machine.
void force_isa(Isa isa);

inline void squared_distances(std::span<const double> xs, std::span<const double> ys, double qx,
                              double qy, std::span<double> out) {
  active().squared_distances(xs.data(), ys.data(), xs.size(), qx, qy, out.data());
}

inline WeightedSums inverse_power_sums(std::span<const double> dist,
                                       std::span<const double> values, double power) {
  return active().inverse_power_sums(dist.data(), values.data(), dist.size(), power);
}

inline std::size_t count_differing_pairs(std::span<const double> a, std::span<const double> b,
                                         double nodata) {
  return active().count_differing_pairs(a.data(), b.data(), a.size(), nodata);
}

// Shared by every variant so integer powers round the same way everywhere.
// Returns true and sets `exponent` when power is an integer in [1, 64].
inline bool integer_power(double power, unsigned &exponent) {
  if (power >= 1.0 && power <= 64.0 && power == static_cast<double>(static_cast<unsigned>(power))) {
    exponent = static_cast<unsigned>(power);
    return true;
  }
  return false;
}

} // namespace ipdw::simd
