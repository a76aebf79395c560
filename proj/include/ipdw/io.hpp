#pragma once

#include "ipdw/cost_surface.hpp"
#include "ipdw/landscape.hpp"
#include "ipdw/raster.hpp"
#include "ipdw/sampling.hpp"
#include "ipdw/wilcoxon.hpp"

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ipdw::io {

// Ordered "# key=value" lines written ahead of report tables.
using Metadata = std::vector<std::pair<std::string, std::string>>;

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

// Fixed-point with `decimals` digits after the point.
std::string format_fixed(double v, int decimals);

struct PointsFile {
  PointSet points;
  std::size_t na_skipped = 0;
};

// Header "x,y,value"; '#' lines are comments; "NA" values are skipped and counted.
PointsFile read_points(std::istream &in);
PointsFile read_points(const std::filesystem::path &path);
void write_points(std::ostream &out, const PointSet &points, const Metadata &meta = {});
void write_points(const std::filesystem::path &path, const PointSet &points,
                  const Metadata &meta = {});

inline constexpr int kDefaultDecimals = 6;

RasterGrid read_ascii_grid(std::istream &in);
RasterGrid read_ascii_grid(const std::filesystem::path &path);
void write_ascii_grid(std::ostream &out, const RasterGrid &r, int decimals = kDefaultDecimals);
void write_ascii_grid(const std::filesystem::path &path, const RasterGrid &r,
                      int decimals = kDefaultDecimals);

// "x y" vertex lines, one ring per block terminated by "END".
PolygonSet read_polygons(std::istream &in);
PolygonSet read_polygons(const std::filesystem::path &path);
void write_polygons(std::ostream &out, const PolygonSet &polygons);
void write_polygons(const std::filesystem::path &path, const PolygonSet &polygons);

void write_error_report(std::ostream &out, const ErrorReport &report, const Metadata &meta = {});
void write_error_report(const std::filesystem::path &path, const ErrorReport &report,
                        const Metadata &meta = {});

struct ErrorReportFile {
  ErrorReport report;
  Metadata meta;
};
ErrorReportFile read_error_report(std::istream &in);
ErrorReportFile read_error_report(const std::filesystem::path &path);

void write_comparison(std::ostream &out, const PairedTestResult &test,
                      const RangeErrorTable &table_a, const RangeErrorTable &table_b,
                      const Metadata &meta = {});

void write_scalogram(std::ostream &out, const Scalogram &s, const Metadata &meta = {});
void write_scalogram(const std::filesystem::path &path, const Scalogram &s,
                     const Metadata &meta = {});

// Whole-file helpers.
std::string read_text(const std::filesystem::path &path);
void write_text(const std::filesystem::path &path, const std::string &text);

} // namespace ipdw::io
