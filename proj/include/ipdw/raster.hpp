#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace ipdw {

inline constexpr double kDefaultNoData = -9999.0;

struct Cell {
  std::size_t row = 0;
  std::size_t col = 0;

  friend bool operator==(const Cell &, const Cell &) = default;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

// Square-cell grid anchored at its lower-left corner. Row 0 is the top row.
struct GridGeometry {
  std::size_t ncols = 1;
  std::size_t nrows = 1;
  double xll = 0.0;
  double yll = 0.0;
  double cellsize = 1.0;

  // Throws ArgumentError when dimensions or cellsize are not positive/finite.
  void validate() const;

  std::size_t size() const { return ncols * nrows; }
  double width() const { return static_cast<double>(ncols) * cellsize; }
  double height() const { return static_cast<double>(nrows) * cellsize; }

  bool in_bounds(long long row, long long col) const {
    return row >= 0 && col >= 0 && static_cast<std::size_t>(row) < nrows &&
           static_cast<std::size_t>(col) < ncols;
  }

  std::size_t index(Cell c) const { return c.row * ncols + c.col; }
  Cell cell_at(std::size_t idx) const { return {idx / ncols, idx % ncols}; }

  friend bool operator==(const GridGeometry &, const GridGeometry &) = default;
};

// Containing cell of (x, y) over the half-open extent; points on the
// left/bottom edge of a cell belong to it.
std::optional<Cell> cell_of(const GridGeometry &g, double x, double y);

// Center of an in-bounds cell. Throws ArgumentError on out-of-bounds.
Point2 center_of(const GridGeometry &g, Cell c);

// Dense row-major value plane. Every value is finite or the nodata sentinel.
class RasterGrid {
public:
  RasterGrid() = default;
  RasterGrid(const GridGeometry &geometry, double fill, double nodata = kDefaultNoData);
  RasterGrid(const GridGeometry &geometry, std::vector<double> values,
             double nodata = kDefaultNoData);

  const GridGeometry &geometry() const { return geometry_; }
  double nodata() const { return nodata_; }

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }

  double at(std::size_t idx) const { return values_[idx]; }
  double at(Cell c) const { return values_[geometry_.index(c)]; }
  bool is_nodata(std::size_t idx) const { return values_[idx] == nodata_; }
  bool is_nodata(Cell c) const { return is_nodata(geometry_.index(c)); }

  // Non-finite values are stored as nodata.
  void set(std::size_t idx, double v);
  void set(Cell c, double v) { set(geometry_.index(c), v); }
  void set_nodata(std::size_t idx) { values_[idx] = nodata_; }

  std::size_t count_valid() const;

  friend bool operator==(const RasterGrid &, const RasterGrid &) = default;

private:
  GridGeometry geometry_;
  double nodata_ = kDefaultNoData;
  std::vector<double> values_;
};

// Measurement point in projected meters.
struct Measurement {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;

  friend bool operator==(const Measurement &, const Measurement &) = default;
};

using PointSet = std::vector<Measurement>;

// Axis-aligned extent used to lay grids of varying cellsize over one area.
struct Extent {
  double xmin = 0.0;
  double ymin = 0.0;
  double xmax = 0.0;
  double ymax = 0.0;

  // Smallest grid of the given cellsize anchored at (xmin, ymin) covering the extent.
  GridGeometry grid(double cellsize) const;
};

} // namespace ipdw
