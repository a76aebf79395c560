#include "ipdw/wilcoxon.hpp"

#include "ipdw/error.hpp"
#include "ipdw/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace ipdw {

std::string_view to_string(WilcoxonMethod m) {
  return m == WilcoxonMethod::Exact ? "exact" : "normal-approximation";
}

double wilcoxon_exact_p(std::span<const double> ranks, double w_plus) {
  // Mid-ranks are multiples of 1/2, so doubled ranks index an integer DP.
  std::vector<std::size_t> doubled;
  doubled.reserve(ranks.size());
  std::size_t total = 0;
  for (double r : ranks) {
    const double twice = 2.0 * r;
    if (twice != std::round(twice) || r <= 0.0)
      throw ArgumentError("exact signed-rank distribution needs positive half-integer ranks");
    doubled.push_back(static_cast<std::size_t>(twice));
    total += doubled.back();
  }
  // counts[s]: number of sign assignments whose doubled positive-rank sum is s.
  // Counts stay below 2^53 for the sizes routed here.
  std::vector<double> counts(total + 1, 0.0);
  counts[0] = 1.0;
  std::size_t reach = 0;
  for (std::size_t r : doubled) {
    reach += r;
    for (std::size_t s = reach; s >= r; --s) {
      counts[s] += counts[s - r];
      if (s == r)
        break;
    }
  }
  const auto observed = static_cast<std::size_t>(std::llround(2.0 * w_plus));
  double lower = 0.0, upper = 0.0;
  for (std::size_t s = 0; s <= total; ++s) {
    if (s <= observed)
      lower += counts[s];
    if (s >= observed)
      upper += counts[s];
  }
  const double all = std::ldexp(1.0, static_cast<int>(ranks.size()));
  return std::min(1.0, 2.0 * std::min(lower / all, upper / all));
}

double wilcoxon_normal_p(std::span<const double> ranks, double w_plus) {
  const auto n = static_cast<double>(ranks.size());
  double tie_term = 0.0;
  std::map<double, std::size_t> groups;
  for (double r : ranks)
    ++groups[r];
  for (const auto &[rank, t] : groups) {
    const auto tt = static_cast<double>(t);
    tie_term += tt * tt * tt - tt;
  }
  const double mean = n * (n + 1.0) / 4.0;
  const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
  if (!(var > 0.0))
    return 1.0;
  const double z = std::max(0.0, std::abs(w_plus - mean) - 0.5) / std::sqrt(var);
  return std::min(1.0, std::erfc(z / std::sqrt(2.0)));
}

namespace {

PairedTestResult run(std::span<const double> a, std::span<const double> b,
                     const WilcoxonMethod *forced) {
  if (a.size() != b.size())
    throw ArgumentError("paired samples differ in length (" + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
  if (a.size() < 2)
    throw ArgumentError("signed-rank test needs at least 2 pairs");

  PairedTestResult res;
  res.n_pairs = a.size();
  std::vector<double> diffs;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!std::isfinite(a[i]) || !std::isfinite(b[i]))
      throw ArgumentError("paired value " + std::to_string(i) + " is not finite");
    const double d = a[i] - b[i];
    if (d == 0.0)
      ++res.n_zero_diffs;
    else
      diffs.push_back(d);
  }
  res.method = forced ? *forced
                      : (diffs.size() <= kWilcoxonExactMax ? WilcoxonMethod::Exact
                                                           : WilcoxonMethod::NormalApproximation);
  if (diffs.empty()) {
    res.degenerate = true;
    res.p_value = 1.0;
    return res;
  }

  std::vector<double> magnitude(diffs.size());
  for (std::size_t i = 0; i < diffs.size(); ++i)
    magnitude[i] = std::abs(diffs[i]);
  const std::vector<double> ranks = mid_ranks(magnitude);
  for (std::size_t i = 0; i < diffs.size(); ++i)
    (diffs[i] > 0.0 ? res.statistic : res.w_minus) += ranks[i];

  res.p_value = res.method == WilcoxonMethod::Exact ? wilcoxon_exact_p(ranks, res.statistic)
                                                    : wilcoxon_normal_p(ranks, res.statistic);
  return res;
}

} // namespace

PairedTestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
  return run(a, b, nullptr);
}

PairedTestResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                      WilcoxonMethod method) {
  return run(a, b, &method);
}

} // namespace ipdw
