#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace ipdw {

enum class WilcoxonMethod { Exact, NormalApproximation };

std::string_view to_string(WilcoxonMethod m);

// Exact distribution is used up to this many non-zero differences.
inline constexpr std::size_t kWilcoxonExactMax = 25;

struct PairedTestResult {
  // V: sum of ranks of positive differences a_i - b_i.
  double statistic = 0.0;
  double w_minus = 0.0;
  double p_value = 1.0;
  std::size_t n_pairs = 0;
  std::size_t n_zero_diffs = 0;
  WilcoxonMethod method = WilcoxonMethod::Exact;
  bool degenerate = false;
};

// Two-sided paired signed-rank test. Zero differences are dropped, tied
// magnitudes get mid-ranks. Throws ArgumentError on length mismatch or n < 2.
PairedTestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

// Same test with the method forced; used to compare the two p-value paths.
PairedTestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                      WilcoxonMethod method);

// Two-sided exact p for V = w_plus given the (mid-)ranks of the non-zero
// differences. Ranks must be multiples of 1/2.
double wilcoxon_exact_p(std::span<const double> ranks, double w_plus);

// Normal approximation with tie and continuity correction.
double wilcoxon_normal_p(std::span<const double> ranks, double w_plus);

} // namespace ipdw
