#include "ipdw/simd/kernels.hpp"

#include "kernels_common.hpp"

#include <arm_neon.h>

#include <cmath>

namespace ipdw::simd {

namespace {

void squared_distances_neon(const double *xs, const double *ys, std::size_t n, double qx,
                            double qy, double *out) {
  const float64x2_t vqx = vdupq_n_f64(qx);
  const float64x2_t vqy = vdupq_n_f64(qy);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t dx = vsubq_f64(vld1q_f64(xs + i), vqx);
    const float64x2_t dy = vsubq_f64(vld1q_f64(ys + i), vqy);
    vst1q_f64(out + i, vaddq_f64(vmulq_f64(dx, dx), vmulq_f64(dy, dy)));
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    out[i] = dx * dx + dy * dy;
  }
}

inline float64x2_t ipow_neon(float64x2_t base, unsigned exponent) {
  float64x2_t result = vdupq_n_f64(1.0);
  while (exponent != 0) {
    if (exponent & 1u)
      result = vmulq_f64(result, base);
    exponent >>= 1;
    if (exponent != 0)
      base = vmulq_f64(base, base);
  }
  return result;
}

inline float64x2_t weights_neon(const double *d, bool integral, unsigned exponent, double power) {
  if (integral)
    return vdivq_f64(vdupq_n_f64(1.0), ipow_neon(vld1q_f64(d), exponent));
  const double w[2] = {std::pow(d[0], -power), std::pow(d[1], -power)};
  return vld1q_f64(w);
}

// Two q-registers emulate the four accumulator lanes of the other variants.
WeightedSums inverse_power_sums_neon(const double *dist, const double *values, std::size_t n,
                                     double power) {
  unsigned exponent = 0;
  const bool integral = integer_power(power, exponent);
  float64x2_t num_lo = vdupq_n_f64(0.0), num_hi = vdupq_n_f64(0.0);
  float64x2_t den_lo = vdupq_n_f64(0.0), den_hi = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const float64x2_t w_lo = weights_neon(dist + i, integral, exponent, power);
    const float64x2_t w_hi = weights_neon(dist + i + 2, integral, exponent, power);
    num_lo = vaddq_f64(num_lo, vmulq_f64(w_lo, vld1q_f64(values + i)));
    num_hi = vaddq_f64(num_hi, vmulq_f64(w_hi, vld1q_f64(values + i + 2)));
    den_lo = vaddq_f64(den_lo, w_lo);
    den_hi = vaddq_f64(den_hi, w_hi);
  }
  double nl[kLanes], dl[kLanes];
  vst1q_f64(nl, num_lo);
  vst1q_f64(nl + 2, num_hi);
  vst1q_f64(dl, den_lo);
  vst1q_f64(dl + 2, den_hi);
  for (; i < n; ++i) {
    const double w = integral ? 1.0 / detail::ipow(dist[i], exponent) : std::pow(dist[i], -power);
    nl[i % kLanes] += w * values[i];
    dl[i % kLanes] += w;
  }
  return {(nl[0] + nl[1]) + (nl[2] + nl[3]), (dl[0] + dl[1]) + (dl[2] + dl[3])};
}

std::size_t count_differing_pairs_neon(const double *a, const double *b, std::size_t n,
                                       double nodata) {
  const float64x2_t vnd = vdupq_n_f64(nodata);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t va = vld1q_f64(a + i);
    const float64x2_t vb = vld1q_f64(b + i);
    // Equal lanes are all-ones; a hit needs all three comparisons false.
    const uint64x2_t same = vceqq_f64(va, vb);
    const uint64x2_t a_nd = vceqq_f64(va, vnd);
    const uint64x2_t b_nd = vceqq_f64(vb, vnd);
    const uint64x2_t miss = vorrq_u64(same, vorrq_u64(a_nd, b_nd));
    count += (vgetq_lane_u64(miss, 0) == 0) + (vgetq_lane_u64(miss, 1) == 0);
  }
  for (; i < n; ++i)
    count += (a[i] != b[i]) && (a[i] != nodata) && (b[i] != nodata);
  return count;
}

const Kernels kNeon{Isa::Neon, squared_distances_neon, inverse_power_sums_neon,
                    count_differing_pairs_neon};

} // namespace

const Kernels *neon_kernels() { return &kNeon; }

} // namespace ipdw::simd
