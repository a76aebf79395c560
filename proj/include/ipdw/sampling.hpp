#pragma once

#include "ipdw/raster.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace ipdw {

struct SplitResult {
  PointSet training;
  PointSet validation;
  std::vector<std::size_t> training_index;
  std::vector<std::size_t> validation_index;
  double mesh_cellsize = 0.0;
  std::uint64_t seed = 0;
};

// sqrt(1.2 km^2): one mesh cell per 1.2 square kilometres.
inline constexpr double kDefaultMeshCellsize = 1095.4451150103321;

// Stratified thinning: within each mesh cell (mesh anchored at the point
// cloud's lower-left corner) draws up to `per_cell` points uniformly into
// training; the rest go to validation. Both outputs keep input order.
SplitResult grid_split(const PointSet &points, double mesh_cellsize, std::size_t per_cell,
                       std::uint64_t seed);

struct Residual {
  std::size_t index = 0;
  double x = 0.0;
  double y = 0.0;
  double observed = 0.0;
  double predicted = 0.0;
  double residual = 0.0; // predicted - observed
};

struct ErrorReport {
  std::vector<Residual> residuals;
  double mae = 0.0;
  double rmse = 0.0;
  std::size_t n_evaluated = 0;
  std::size_t n_nodata = 0;
  // max - min of the observed validation values.
  double value_range = 0.0;
};

// Reads the prediction at each validation point's containing cell.
// Nodata predictions are counted, never imputed. Throws ArgumentError when
// a point is outside the raster or nothing could be evaluated.
ErrorReport cross_validate(const RasterGrid &predicted, const PointSet &validation);

struct RangeErrorRow {
  double range = 0.0;
  double mae = 0.0;
};

struct RangeErrorTable {
  std::vector<RangeErrorRow> rows;
  // Spearman rank correlation; absent with < 2 rows or a constant column.
  std::optional<double> rank_correlation;
};

RangeErrorTable range_vs_error(const std::vector<std::pair<double, ErrorReport>> &reports);

// Spearman correlation with mid-ranks for ties.
std::optional<double> spearman(const std::vector<double> &a, const std::vector<double> &b);

// 1-based ranks of `values`, tied entries share the average rank.
std::vector<double> mid_ranks(const std::vector<double> &values);

} // namespace ipdw
