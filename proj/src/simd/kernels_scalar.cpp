#include "ipdw/simd/kernels.hpp"

#include "kernels_common.hpp"

#include <cmath>

namespace ipdw::simd {

namespace {

void squared_distances_scalar(const double *xs, const double *ys, std::size_t n, double qx,
                              double qy, double *out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    out[i] = dx * dx + dy * dy;
  }
}

// Four interleaved partial sums, combined as (s0 + s1) + (s2 + s3): the
// same association the vector variants use, so every ISA agrees bit for bit.
WeightedSums inverse_power_sums_scalar(const double *dist, const double *values, std::size_t n,
                                       double power) {
  double num[kLanes] = {0.0, 0.0, 0.0, 0.0};
  double den[kLanes] = {0.0, 0.0, 0.0, 0.0};
  unsigned exponent = 0;
  const bool integral = integer_power(power, exponent);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = integral ? 1.0 / detail::ipow(dist[i], exponent) : std::pow(dist[i], -power);
    num[i % kLanes] += w * values[i];
    den[i % kLanes] += w;
  }
  return {(num[0] + num[1]) + (num[2] + num[3]), (den[0] + den[1]) + (den[2] + den[3])};
}

std::size_t count_differing_pairs_scalar(const double *a, const double *b, std::size_t n,
                                         double nodata) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    count += (a[i] != b[i]) && (a[i] != nodata) && (b[i] != nodata);
  return count;
}

const Kernels kScalar{Isa::Scalar, squared_distances_scalar, inverse_power_sums_scalar,
                      count_differing_pairs_scalar};

} // namespace

const Kernels &scalar_kernels() { return kScalar; }

} // namespace ipdw::simd
