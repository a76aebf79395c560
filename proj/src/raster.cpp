#include "ipdw/raster.hpp"

#include "ipdw/error.hpp"

#include <cmath>
#include <string>

namespace ipdw {

void GridGeometry::validate() const {
  if (ncols < 1 || nrows < 1)
    throw ArgumentError("grid must have at least one row and one column");
  if (!(cellsize > 0.0) || !std::isfinite(cellsize))
    throw ArgumentError("cellsize must be positive and finite, got " + std::to_string(cellsize));
  if (!std::isfinite(xll) || !std::isfinite(yll))
    throw ArgumentError("grid origin must be finite");
}

std::optional<Cell> cell_of(const GridGeometry &g, double x, double y) {
  if (!std::isfinite(x) || !std::isfinite(y))
    return std::nullopt;
  const double fx = (x - g.xll) / g.cellsize;
  const double fy = (y - g.yll) / g.cellsize;
  if (fx < 0.0 || fy < 0.0)
    return std::nullopt;
  const double col = std::floor(fx);
  const double row_from_bottom = std::floor(fy);
  if (col >= static_cast<double>(g.ncols) || row_from_bottom >= static_cast<double>(g.nrows))
    return std::nullopt;
  const auto c = static_cast<std::size_t>(col);
  const auto rb = static_cast<std::size_t>(row_from_bottom);
  return Cell{g.nrows - 1 - rb, c};
}

Point2 center_of(const GridGeometry &g, Cell c) {
  if (c.row >= g.nrows || c.col >= g.ncols)
    throw ArgumentError("cell (" + std::to_string(c.row) + ", " + std::to_string(c.col) +
                        ") is outside the grid");
  return {g.xll + (static_cast<double>(c.col) + 0.5) * g.cellsize,
          g.yll + (static_cast<double>(g.nrows - c.row) - 0.5) * g.cellsize};
}

RasterGrid::RasterGrid(const GridGeometry &geometry, double fill, double nodata)
    : geometry_(geometry), nodata_(nodata) {
  geometry_.validate();
  if (!std::isfinite(nodata))
    throw ArgumentError("nodata sentinel must be finite");
  values_.assign(geometry_.size(), std::isfinite(fill) ? fill : nodata_);
}

RasterGrid::RasterGrid(const GridGeometry &geometry, std::vector<double> values, double nodata)
    : geometry_(geometry), nodata_(nodata), values_(std::move(values)) {
  geometry_.validate();
  if (!std::isfinite(nodata))
    throw ArgumentError("nodata sentinel must be finite");
  if (values_.size() != geometry_.size())
    throw ArgumentError("raster holds " + std::to_string(values_.size()) + " values, expected " +
                        std::to_string(geometry_.size()));
  for (double &v : values_)
    if (!std::isfinite(v))
      v = nodata_;
}

void RasterGrid::set(std::size_t idx, double v) {
  values_[idx] = std::isfinite(v) ? v : nodata_;
}

std::size_t RasterGrid::count_valid() const {
  std::size_t n = 0;
  for (double v : values_)
    n += v != nodata_;
  return n;
}

GridGeometry Extent::grid(double cellsize) const {
  if (!(xmax > xmin) || !(ymax > ymin))
    throw ArgumentError("extent must have xmax > xmin and ymax > ymin");
  if (!(cellsize > 0.0))
    throw ArgumentError("cellsize must be positive");
  // Tolerance keeps exact multiples from gaining a sliver column.
  auto span_cells = [&](double len) {
    const double n = std::ceil(len / cellsize - 1e-9);
    return static_cast<std::size_t>(n < 1.0 ? 1.0 : n);
  };
  GridGeometry g{span_cells(xmax - xmin), span_cells(ymax - ymin), xmin, ymin, cellsize};
  g.validate();
  return g;
}

} // namespace ipdw
