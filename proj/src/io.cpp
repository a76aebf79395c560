#include "ipdw/io.hpp"

#include "ipdw/error.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string_view>

namespace ipdw::io {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string format_fixed(double v, int decimals) {
  std::array<char, 512> buf{};
  const auto res =
      std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, decimals);
  if (res.ec != std::errc{})
    throw FormatError("value " + format_double(v) + " is too large to print in fixed notation");
  return std::string(buf.data(), res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::optional<double> parse_number(std::string_view tok) {
  tok = trim(tok);
  if (!tok.empty() && tok.front() == '+')
    tok.remove_prefix(1);
  double v = 0.0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

std::string where(std::size_t line) { return "line " + std::to_string(line) + ": "; }

std::ifstream open_in(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw InputError("cannot open " + path.string() + " for reading");
  return in;
}

template <class Fn> void with_out(const std::filesystem::path &path, Fn &&fn) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw InputError("cannot open " + path.string() + " for writing");
  fn(out);
  out.flush();
  if (!out)
    throw InputError("failed writing " + path.string());
}

// getline that also drops a trailing '\r'.
bool next_line(std::istream &in, std::string &line) {
  if (!std::getline(in, line))
    return false;
  if (!line.empty() && line.back() == '\r')
    line.pop_back();
  return true;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos)
      break;
    start = pos + 1;
  }
  return out;
}

void write_meta(std::ostream &out, const Metadata &meta) {
  for (const auto &[k, v] : meta)
    out << "# " << k << '=' << v << '\n';
}

} // namespace

// ---------------------------------------------------------------- points

PointsFile read_points(std::istream &in) {
  PointsFile file;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (next_line(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#')
      continue;
    const auto fields = split(body, ',');
    if (!header) {
      if (fields.size() != 3 || lower(trim(fields[0])) != "x" || lower(trim(fields[1])) != "y" ||
          lower(trim(fields[2])) != "value")
        throw FormatError(where(lineno) + "expected header \"x,y,value\"");
      header = true;
      continue;
    }
    if (fields.size() != 3)
      throw FormatError(where(lineno) + "expected 3 fields, found " +
                        std::to_string(fields.size()));
    const auto x = parse_number(fields[0]);
    const auto y = parse_number(fields[1]);
    if (!x || !y)
      throw FormatError(where(lineno) + "coordinates must be finite numbers");
    if (trim(fields[2]) == "NA") {
      ++file.na_skipped;
      continue;
    }
    const auto v = parse_number(fields[2]);
    if (!v)
      throw FormatError(where(lineno) + "value must be a finite number or NA");
    file.points.push_back({*x, *y, *v});
  }
  if (!header)
    throw FormatError("missing header \"x,y,value\"");
  return file;
}

PointsFile read_points(const std::filesystem::path &path) {
  auto in = open_in(path);
  try {
    return read_points(in);
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_points(std::ostream &out, const PointSet &points, const Metadata &meta) {
  write_meta(out, meta);
  out << "x,y,value\n";
  for (const Measurement &m : points)
    out << format_double(m.x) << ',' << format_double(m.y) << ',' << format_double(m.value)
        << '\n';
}

void write_points(const std::filesystem::path &path, const PointSet &points,
                  const Metadata &meta) {
  with_out(path, [&](std::ostream &out) { write_points(out, points, meta); });
}

// ---------------------------------------------------------------- ASCII grid

RasterGrid read_ascii_grid(std::istream &in) {
  std::map<std::string, double> header;
  std::map<std::string, std::size_t> header_line;
  std::string line;
  std::size_t lineno = 0;
  bool pending = false;

  // Header: "key value" lines until the first line starting with a number.
  while (next_line(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty())
      continue;
    const std::size_t sp = body.find_first_of(" \t");
    const std::string key = lower(body.substr(0, sp));
    if (!key.empty() && (std::isdigit(static_cast<unsigned char>(key[0])) || key[0] == '-' ||
                         key[0] == '+' || key[0] == '.')) {
      pending = true;
      break;
    }
    if (sp == std::string_view::npos)
      throw FormatError(where(lineno) + "header key '" + key + "' has no value");
    const auto v = parse_number(body.substr(sp));
    if (!v)
      throw FormatError(where(lineno) + "header value for '" + key + "' is not a number");
    header[key] = *v;
    header_line[key] = lineno;
  }

  auto require = [&](std::initializer_list<const char *> keys) -> std::pair<std::string, double> {
    for (const char *k : keys)
      if (auto it = header.find(k); it != header.end())
        return *it;
    throw FormatError(std::string("header key '") + *keys.begin() + "' missing");
  };
  const auto [ncols_key, ncols_v] = require({"ncols"});
  const auto [nrows_key, nrows_v] = require({"nrows"});
  const auto [xkey, xv] = require({"xllcorner", "xllcenter"});
  const auto [ykey, yv] = require({"yllcorner", "yllcenter"});
  const auto [cs_key, cs] = require({"cellsize"});
  const double nodata = header.count("nodata_value") ? header["nodata_value"] : kDefaultNoData;
  for (const auto &[key, v] : std::initializer_list<std::pair<const char *, double>>{
           {"ncols", ncols_v}, {"nrows", nrows_v}})
    if (v < 1.0 || v != std::floor(v))
      throw FormatError(where(header_line[key]) + key + " must be a positive integer");
  if (!(cs > 0.0))
    throw FormatError(where(header_line["cellsize"]) + "cellsize must be positive");

  GridGeometry g;
  g.ncols = static_cast<std::size_t>(ncols_v);
  g.nrows = static_cast<std::size_t>(nrows_v);
  g.cellsize = cs;
  g.xll = xkey == "xllcenter" ? xv - cs / 2.0 : xv;
  g.yll = ykey == "yllcenter" ? yv - cs / 2.0 : yv;

  std::vector<double> values;
  values.reserve(g.size());
  std::size_t rows_read = 0;
  auto data_line = [&] {
    const std::string_view full(line);
    if (trim(full).empty())
      return;
    if (rows_read == g.nrows)
      throw FormatError(where(lineno) + "more than nrows=" + std::to_string(g.nrows) +
                        " data lines");
    std::size_t count = 0;
    std::size_t pos = 0;
    while (pos < full.size()) {
      while (pos < full.size() && std::isspace(static_cast<unsigned char>(full[pos])))
        ++pos;
      if (pos >= full.size())
        break;
      std::size_t end = pos;
      while (end < full.size() && !std::isspace(static_cast<unsigned char>(full[end])))
        ++end;
      const std::string_view tok = full.substr(pos, end - pos);
      const auto v = parse_number(tok);
      if (!v)
        throw FormatError("line " + std::to_string(lineno) + ", column " +
                          std::to_string(pos + 1) + ": non-numeric token '" + std::string(tok) +
                          "'");
      ++count;
      if (count <= g.ncols)
        values.push_back(*v);
      pos = end;
    }
    if (count != g.ncols)
      throw FormatError(where(lineno) + "dimension mismatch: expected " +
                        std::to_string(g.ncols) + " values, found " + std::to_string(count));
    ++rows_read;
  };
  if (pending) {
    data_line();
    while (next_line(in, line)) {
      ++lineno;
      data_line();
    }
  }
  if (rows_read != g.nrows)
    throw FormatError("dimension mismatch: expected " + std::to_string(g.nrows) +
                      " data lines, found " + std::to_string(rows_read));
  return RasterGrid(g, std::move(values), nodata);
}

RasterGrid read_ascii_grid(const std::filesystem::path &path) {
  auto in = open_in(path);
  try {
    return read_ascii_grid(in);
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_ascii_grid(std::ostream &out, const RasterGrid &r, int decimals) {
  const GridGeometry &g = r.geometry();
  const std::string nodata = format_double(r.nodata());
  out << "ncols " << g.ncols << '\n'
      << "nrows " << g.nrows << '\n'
      << "xllcorner " << format_double(g.xll) << '\n'
      << "yllcorner " << format_double(g.yll) << '\n'
      << "cellsize " << format_double(g.cellsize) << '\n'
      << "NODATA_value " << nodata << '\n';
  std::string row;
  for (std::size_t i = 0; i < g.nrows; ++i) {
    row.clear();
    for (std::size_t j = 0; j < g.ncols; ++j) {
      if (j)
        row += ' ';
      const std::size_t idx = i * g.ncols + j;
      row += r.is_nodata(idx) ? nodata : format_fixed(r.at(idx), decimals);
    }
    row += '\n';
    out << row;
  }
}

void write_ascii_grid(const std::filesystem::path &path, const RasterGrid &r, int decimals) {
  with_out(path, [&](std::ostream &out) { write_ascii_grid(out, r, decimals); });
}

// ---------------------------------------------------------------- polygons

PolygonSet read_polygons(std::istream &in) {
  constexpr double kClosureTolerance = 1e-9;
  PolygonSet set;
  Ring ring;
  std::string line;
  std::size_t lineno = 0;
  while (next_line(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#')
      continue;
    if (body == "END") {
      const std::size_t k = set.rings.size();
      if (ring.empty())
        throw FormatError(where(lineno) + "ring " + std::to_string(k) + " has no vertices");
      Point2 &last = ring.back();
      const Point2 &first = ring.front();
      if (last.x != first.x || last.y != first.y) {
        if (std::abs(last.x - first.x) <= kClosureTolerance &&
            std::abs(last.y - first.y) <= kClosureTolerance)
          last = first;
        else
          throw FormatError(where(lineno) + "ring " + std::to_string(k) +
                            " is not closed (first and last vertex differ)");
      }
      if (ring.size() < 4)
        throw FormatError(where(lineno) + "ring " + std::to_string(k) + " has " +
                          std::to_string(ring.size()) + " vertices, need at least 4");
      set.rings.push_back(std::move(ring));
      ring.clear();
      continue;
    }
    std::istringstream tokens{std::string(body)};
    std::string xs, ys, extra;
    tokens >> xs >> ys;
    const auto x = parse_number(xs);
    const auto y = parse_number(ys);
    if (!x || !y || (tokens >> extra))
      throw FormatError(where(lineno) + "expected a vertex \"x y\" or END");
    ring.push_back({*x, *y});
  }
  if (!ring.empty())
    throw FormatError("ring " + std::to_string(set.rings.size()) + " is missing its END line");
  return set;
}

PolygonSet read_polygons(const std::filesystem::path &path) {
  auto in = open_in(path);
  try {
    return read_polygons(in);
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_polygons(std::ostream &out, const PolygonSet &polygons) {
  for (const Ring &r : polygons.rings) {
    for (const Point2 &p : r)
      out << format_double(p.x) << ' ' << format_double(p.y) << '\n';
    out << "END\n";
  }
}

void write_polygons(const std::filesystem::path &path, const PolygonSet &polygons) {
  with_out(path, [&](std::ostream &out) { write_polygons(out, polygons); });
}

// ---------------------------------------------------------------- reports

void write_error_report(std::ostream &out, const ErrorReport &rep, const Metadata &meta) {
  out << "# report=error\n";
  write_meta(out, meta);
  out << "# mae=" << format_double(rep.mae) << '\n'
      << "# rmse=" << format_double(rep.rmse) << '\n'
      << "# n_evaluated=" << rep.n_evaluated << '\n'
      << "# n_nodata=" << rep.n_nodata << '\n'
      << "# value_range=" << format_double(rep.value_range) << '\n'
      << "index,x,y,observed,predicted,residual\n";
  for (const Residual &r : rep.residuals)
    out << r.index << ',' << format_double(r.x) << ',' << format_double(r.y) << ','
        << format_double(r.observed) << ',' << format_double(r.predicted) << ','
        << format_double(r.residual) << '\n';
}

void write_error_report(const std::filesystem::path &path, const ErrorReport &rep,
                        const Metadata &meta) {
  with_out(path, [&](std::ostream &out) { write_error_report(out, rep, meta); });
}

ErrorReportFile read_error_report(std::istream &in) {
  ErrorReportFile file;
  std::map<std::string, std::string> keys;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (next_line(in, line)) {
    ++lineno;
    const std::string_view body = trim(line);
    if (body.empty())
      continue;
    if (body.front() == '#') {
      const std::string_view kv = trim(body.substr(1));
      const std::size_t eq = kv.find('=');
      if (eq != std::string_view::npos) {
        std::string k(trim(kv.substr(0, eq))), v(trim(kv.substr(eq + 1)));
        keys[k] = v;
        file.meta.emplace_back(std::move(k), std::move(v));
      }
      continue;
    }
    if (!header) {
      if (body != "index,x,y,observed,predicted,residual")
        throw FormatError(where(lineno) + "expected error-report column header");
      header = true;
      continue;
    }
    const auto f = split(body, ',');
    if (f.size() != 6)
      throw FormatError(where(lineno) + "expected 6 fields, found " + std::to_string(f.size()));
    Residual r;
    const auto idx = parse_number(f[0]);
    const auto x = parse_number(f[1]), y = parse_number(f[2]);
    const auto o = parse_number(f[3]), p = parse_number(f[4]), d = parse_number(f[5]);
    if (!idx || *idx < 0 || !x || !y || !o || !p || !d)
      throw FormatError(where(lineno) + "malformed residual row");
    r.index = static_cast<std::size_t>(*idx);
    r.x = *x;
    r.y = *y;
    r.observed = *o;
    r.predicted = *p;
    r.residual = *d;
    file.report.residuals.push_back(r);
  }
  if (keys["report"] != "error")
    throw FormatError("not an error report (missing '# report=error')");
  auto number = [&](const char *k) {
    const auto it = keys.find(k);
    const auto v = it == keys.end() ? std::nullopt : parse_number(it->second);
    if (!v)
      throw FormatError(std::string("error report lacks numeric '") + k + "'");
    return *v;
  };
  file.report.mae = number("mae");
  file.report.rmse = number("rmse");
  file.report.n_evaluated = static_cast<std::size_t>(number("n_evaluated"));
  file.report.n_nodata = static_cast<std::size_t>(number("n_nodata"));
  file.report.value_range = number("value_range");
  std::erase_if(file.meta, [](const auto &kv) {
    return kv.first == "report" || kv.first == "mae" || kv.first == "rmse" ||
           kv.first == "n_evaluated" || kv.first == "n_nodata" || kv.first == "value_range";
  });
  return file;
}

ErrorReportFile read_error_report(const std::filesystem::path &path) {
  auto in = open_in(path);
  try {
    return read_error_report(in);
  } catch (const FormatError &e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_comparison(std::ostream &out, const PairedTestResult &test,
                      const RangeErrorTable &table_a, const RangeErrorTable &table_b,
                      const Metadata &meta) {
  auto corr = [](const std::optional<double> &c) {
    return c ? format_double(*c) : std::string("undefined");
  };
  out << "# report=comparison\n";
  write_meta(out, meta);
  out << "# test=wilcoxon_signed_rank\n"
      << "# statistic_convention=V = sum of ranks of positive differences (a - b)\n"
      << "# statistic=" << format_double(test.statistic) << '\n'
      << "# w_minus=" << format_double(test.w_minus) << '\n'
      << "# p_value=" << format_double(test.p_value) << '\n'
      << "# alternative=two-sided\n"
      << "# n_pairs=" << test.n_pairs << '\n'
      << "# n_zero_diffs=" << test.n_zero_diffs << '\n'
      << "# method=" << to_string(test.method) << '\n'
      << "# degenerate=" << (test.degenerate ? "true" : "false") << '\n'
      << "# rank_correlation_a=" << corr(table_a.rank_correlation) << '\n'
      << "# rank_correlation_b=" << corr(table_b.rank_correlation) << '\n'
      << "survey,range_a,mae_a,range_b,mae_b\n";
  const std::size_t n = std::max(table_a.rows.size(), table_b.rows.size());
  for (std::size_t i = 0; i < n; ++i) {
    out << i;
    for (const RangeErrorTable *t : {&table_a, &table_b}) {
      if (i < t->rows.size())
        out << ',' << format_double(t->rows[i].range) << ',' << format_double(t->rows[i].mae);
      else
        out << ",,";
    }
    out << '\n';
  }
}

void write_scalogram(std::ostream &out, const Scalogram &s, const Metadata &meta) {
  out << "# report=scalogram\n"
      << "# metric=" << s.metric_name << '\n'
      << "# units=" << s.units << '\n';
  write_meta(out, meta);
  out << "cellsize," << s.metric_name << '\n';
  for (const ScalogramRow &r : s.rows)
    out << format_double(r.cellsize) << ',' << format_double(r.metric_value) << '\n';
}

void write_scalogram(const std::filesystem::path &path, const Scalogram &s, const Metadata &meta) {
  with_out(path, [&](std::ostream &out) { write_scalogram(out, s, meta); });
}

std::string read_text(const std::filesystem::path &path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path &path, const std::string &text) {
  with_out(path, [&](std::ostream &out) { out << text; });
}

} // namespace ipdw::io
