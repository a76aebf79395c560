#include "ipdw/simd/kernels.hpp"

#include "kernels_common.hpp"

#include <immintrin.h>

#include <bit>
#include <cmath>

namespace ipdw::simd {

namespace {

void squared_distances_avx2(const double *xs, const double *ys, std::size_t n, double qx,
                            double qy, double *out) {
  const __m256d vqx = _mm256_set1_pd(qx);
  const __m256d vqy = _mm256_set1_pd(qy);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d dx = _mm256_sub_pd(_mm256_loadu_pd(xs + i), vqx);
    const __m256d dy = _mm256_sub_pd(_mm256_loadu_pd(ys + i), vqy);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_mul_pd(dx, dx), _mm256_mul_pd(dy, dy)));
  }
  for (; i < n; ++i) {
    const double dx = xs[i] - qx;
    const double dy = ys[i] - qy;
    out[i] = dx * dx + dy * dy;
  }
}

inline __m256d ipow_avx2(__m256d base, unsigned exponent) {
  __m256d result = _mm256_set1_pd(1.0);
  while (exponent != 0) {
    if (exponent & 1u)
      result = _mm256_mul_pd(result, base);
    exponent >>= 1;
    if (exponent != 0)
      base = _mm256_mul_pd(base, base);
  }
  return result;
}

WeightedSums inverse_power_sums_avx2(const double *dist, const double *values, std::size_t n,
                                     double power) {
  unsigned exponent = 0;
  const bool integral = integer_power(power, exponent);
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d num = _mm256_setzero_pd();
  __m256d den = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d w;
    if (integral) {
      w = _mm256_div_pd(one, ipow_avx2(_mm256_loadu_pd(dist + i), exponent));
    } else {
      w = _mm256_setr_pd(std::pow(dist[i], -power), std::pow(dist[i + 1], -power),
                         std::pow(dist[i + 2], -power), std::pow(dist[i + 3], -power));
    }
    num = _mm256_add_pd(num, _mm256_mul_pd(w, _mm256_loadu_pd(values + i)));
    den = _mm256_add_pd(den, w);
  }
  alignas(32) double nl[kLanes];
  alignas(32) double dl[kLanes];
  _mm256_store_pd(nl, num);
  _mm256_store_pd(dl, den);
  // Tail elements continue in the lane they would occupy in the scalar loop.
  for (; i < n; ++i) {
    const double w = integral ? 1.0 / detail::ipow(dist[i], exponent) : std::pow(dist[i], -power);
    nl[i % kLanes] += w * values[i];
    dl[i % kLanes] += w;
  }
  return {(nl[0] + nl[1]) + (nl[2] + nl[3]), (dl[0] + dl[1]) + (dl[2] + dl[3])};
}

std::size_t count_differing_pairs_avx2(const double *a, const double *b, std::size_t n,
                                       double nodata) {
  const __m256d vnd = _mm256_set1_pd(nodata);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d va = _mm256_loadu_pd(a + i);
    const __m256d vb = _mm256_loadu_pd(b + i);
    const __m256d differ = _mm256_cmp_pd(va, vb, _CMP_NEQ_UQ);
    const __m256d a_valid = _mm256_cmp_pd(va, vnd, _CMP_NEQ_UQ);
    const __m256d b_valid = _mm256_cmp_pd(vb, vnd, _CMP_NEQ_UQ);
    const __m256d hit = _mm256_and_pd(differ, _mm256_and_pd(a_valid, b_valid));
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(hit))));
  }
  for (; i < n; ++i)
    count += (a[i] != b[i]) && (a[i] != nodata) && (b[i] != nodata);
  return count;
}

const Kernels kAvx2{Isa::Avx2, squared_distances_avx2, inverse_power_sums_avx2,
                    count_differing_pairs_avx2};

} // namespace

const Kernels *avx2_kernels() { return &kAvx2; }

} // namespace ipdw::simd
