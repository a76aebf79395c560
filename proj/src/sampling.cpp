#include "ipdw/sampling.hpp"

#include "ipdw/error.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>

namespace ipdw {

SplitResult grid_split(const PointSet &points, double mesh_cellsize, std::size_t per_cell,
                       std::uint64_t seed) {
  if (points.empty())
    throw ArgumentError("cannot split an empty point set");
  if (!(mesh_cellsize > 0.0) || !std::isfinite(mesh_cellsize))
    throw ArgumentError("mesh cellsize must be positive");
  if (per_cell == 0)
    throw ArgumentError("per-cell count must be at least 1");

  double xmin = points.front().x, ymin = points.front().y;
  for (const Measurement &m : points) {
    xmin = std::min(xmin, m.x);
    ymin = std::min(ymin, m.y);
  }

  // Ordered by (column, row) so the draw sequence is reproducible.
  std::map<std::pair<long long, long long>, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto cx = static_cast<long long>(std::floor((points[i].x - xmin) / mesh_cellsize));
    const auto cy = static_cast<long long>(std::floor((points[i].y - ymin) / mesh_cellsize));
    cells[{cx, cy}].push_back(i);
  }

  std::mt19937_64 rng(seed);
  std::vector<unsigned char> chosen(points.size(), 0);
  for (auto &[key, members] : cells) {
    const std::size_t take = std::min(per_cell, members.size());
    // Partial Fisher-Yates: the first `take` slots become a uniform sample.
    for (std::size_t k = 0; k < take; ++k) {
      std::uniform_int_distribution<std::size_t> pick(k, members.size() - 1);
      std::swap(members[k], members[pick(rng)]);
      chosen[members[k]] = 1;
    }
  }

  SplitResult out;
  out.mesh_cellsize = mesh_cellsize;
  out.seed = seed;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (chosen[i]) {
      out.training.push_back(points[i]);
      out.training_index.push_back(i);
    } else {
      out.validation.push_back(points[i]);
      out.validation_index.push_back(i);
    }
  }
  return out;
}

ErrorReport cross_validate(const RasterGrid &predicted, const PointSet &validation) {
  ErrorReport rep;
  double abs_sum = 0.0, sq_sum = 0.0;
  double lo = 0.0, hi = 0.0;
  for (std::size_t i = 0; i < validation.size(); ++i) {
    const Measurement &m = validation[i];
    const auto cell = cell_of(predicted.geometry(), m.x, m.y);
    if (!cell)
      throw ArgumentError("validation point " + std::to_string(i) +
                          " lies outside the prediction raster");
    if (i == 0) {
      lo = hi = m.value;
    } else {
      lo = std::min(lo, m.value);
      hi = std::max(hi, m.value);
    }
    if (predicted.is_nodata(*cell)) {
      ++rep.n_nodata;
      continue;
    }
    const double pred = predicted.at(*cell);
    const double r = pred - m.value;
    rep.residuals.push_back({i, m.x, m.y, m.value, pred, r});
    abs_sum += std::abs(r);
    sq_sum += r * r;
  }
  rep.n_evaluated = rep.residuals.size();
  if (rep.n_evaluated == 0)
    throw ArgumentError("no validation point has a prediction to compare against");
  const auto n = static_cast<double>(rep.n_evaluated);
  rep.mae = abs_sum / n;
  rep.rmse = std::sqrt(sq_sum / n);
  rep.value_range = hi - lo;
  return rep;
}

std::vector<double> mid_ranks(const std::vector<double> &values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]])
      ++j;
    // Positions i..j (0-based) share the mean of ranks i+1..j+1.
    const double rank = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k)
      ranks[order[k]] = rank;
    i = j + 1;
  }
  return ranks;
}

std::optional<double> spearman(const std::vector<double> &a, const std::vector<double> &b) {
  if (a.size() != b.size() || a.size() < 2)
    return std::nullopt;
  const std::vector<double> ra = mid_ranks(a), rb = mid_ranks(b);
  const double n = static_cast<double>(a.size());
  const double mean = (n + 1.0) / 2.0;
  double sab = 0.0, saa = 0.0, sbb = 0.0;
  for (std::size_t i = 0; i < ra.size(); ++i) {
    const double da = ra[i] - mean, db = rb[i] - mean;
    sab += da * db;
    saa += da * da;
    sbb += db * db;
  }
  if (saa == 0.0 || sbb == 0.0)
    return std::nullopt;
  return sab / std::sqrt(saa * sbb);
}

RangeErrorTable range_vs_error(const std::vector<std::pair<double, ErrorReport>> &reports) {
  if (reports.empty())
    throw ArgumentError("range-vs-error table needs at least one report");
  RangeErrorTable t;
  std::vector<double> ranges, maes;
  for (const auto &[range, rep] : reports) {
    t.rows.push_back({range, rep.mae});
    ranges.push_back(range);
    maes.push_back(rep.mae);
  }
  t.rank_correlation = spearman(ranges, maes);
  return t;
}

} // namespace ipdw
