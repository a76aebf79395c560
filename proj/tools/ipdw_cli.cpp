#include "ipdw/cost_surface.hpp"
#include "ipdw/error.hpp"
#include "ipdw/interpolation.hpp"
#include "ipdw/io.hpp"
#include "ipdw/landscape.hpp"
#include "ipdw/sampling.hpp"
#include "ipdw/simd/kernels.hpp"
#include "ipdw/synth.hpp"
#include "ipdw/wilcoxon.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace ipdw;

namespace {

double parse_double(const std::string &s, const std::string &what) {
  double v = 0.0;
  const char *end = s.data() + s.size();
  const auto res = std::from_chars(s.data(), end, v);
  if (res.ec != std::errc{} || res.ptr != end || !std::isfinite(v))
    throw ArgumentError(what + ": '" + s + "' is not a finite number");
  return v;
}

std::vector<std::string> split_on(const std::string &s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? pos : pos - start));
    if (pos == std::string::npos)
      return out;
    start = pos + 1;
  }
}

// "xmin,ymin,xmax,ymax"
Extent parse_extent(const std::string &s) {
  const auto parts = split_on(s, ',');
  if (parts.size() != 4)
    throw ArgumentError("--extent expects xmin,ymin,xmax,ymax");
  Extent e{parse_double(parts[0], "--extent"), parse_double(parts[1], "--extent"),
           parse_double(parts[2], "--extent"), parse_double(parts[3], "--extent")};
  if (!(e.xmax > e.xmin) || !(e.ymax > e.ymin))
    throw ArgumentError("--extent must have xmax > xmin and ymax > ymin");
  return e;
}

// "50..100:10" or "50,60,75"
std::vector<double> parse_cellsizes(const std::string &s) {
  std::vector<double> out;
  if (const auto dots = s.find(".."); dots != std::string::npos) {
    const auto colon = s.find(':', dots);
    if (colon == std::string::npos)
      throw ArgumentError("--cellsizes range needs a step, e.g. 50..100:10");
    const double lo = parse_double(s.substr(0, dots), "--cellsizes");
    const double hi = parse_double(s.substr(dots + 2, colon - dots - 2), "--cellsizes");
    const double step = parse_double(s.substr(colon + 1), "--cellsizes");
    if (!(step > 0.0) || hi < lo)
      throw ArgumentError("--cellsizes range needs lo <= hi and a positive step");
    const auto n = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
    if (n > 100000)
      throw ArgumentError("--cellsizes range has too many rows");
    for (std::size_t i = 0; i <= n; ++i)
      out.push_back(lo + step * static_cast<double>(i));
    return out;
  }
  for (const auto &part : split_on(s, ','))
    out.push_back(parse_double(part, "--cellsizes"));
  return out;
}

void ensure_dir(const fs::path &dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw InputError("cannot create directory " + dir.string() + ": " + ec.message());
}

CostSurface load_cost(const fs::path &path, double water, double land) {
  return CostSurface(io::read_ascii_grid(path), water, land);
}

struct Options {
  unsigned threads = 1;

  std::string polygons, extent, cellsizes = "50..100:10";
  double cellsize = 0.0, water_cost = kDefaultWaterCost, land_cost = kDefaultLandCost;

  std::string points;
  double mesh_cellsize = kDefaultMeshCellsize;
  std::size_t per_cell = 1;
  std::uint64_t seed = 1;

  std::string method, train, cost;
  double power = 2.0;
  std::size_t neighbors = 10;
  std::optional<double> max_distance;
  bool all_points = false;
  int snap_radius = kDefaultSnapRadius;

  std::string pred, valid, label;
  std::vector<std::string> reports_a, reports_b;

  std::string scene = "two-basin";
  double step = 10.0, noise = 0.0, base = 20.0, scene_cellsize = 60.0;
  std::size_t ncols = 100, nrows = 100;

  std::string out, out_dir;
};

std::string version_text(const Options &o) {
  InterpConfig defaults;
  std::string s = std::string("ipdw ") + IPDW_VERSION + "\n";
  s += "simd=" + std::string(simd::to_string(simd::active().isa)) + "\n";
  s += "threads=" + std::to_string(o.threads) + "\n";
  s += "water_cost=" + io::format_double(kDefaultWaterCost) +
       " land_cost=" + io::format_double(kDefaultLandCost) + "\n";
  s += "interp " + defaults.describe() + "\n";
  s += "mesh_cellsize=" + io::format_double(kDefaultMeshCellsize) + "\n";
  return s;
}

void cmd_costraster(const Options &o) {
  const Extent e = parse_extent(o.extent);
  if (!(o.cellsize > 0.0))
    throw ArgumentError("--cellsize must be positive");
  const PolygonSet polys = io::read_polygons(o.polygons);
  io::write_ascii_grid(
      o.out, rasterize_land(polys, e.grid(o.cellsize), o.water_cost, o.land_cost).raster());
}

void cmd_scalogram(const Options &o) {
  const Extent e = parse_extent(o.extent);
  const std::vector<double> sizes = parse_cellsizes(o.cellsizes);
  const PolygonSet polys = io::read_polygons(o.polygons);
  const Scalogram s = scalogram(polys, e, sizes, o.threads);
  io::Metadata meta{{"polygons", o.polygons}, {"extent", o.extent}};
  if (const auto k = knee_candidate(s)) {
    meta.emplace_back("knee_cellsize", io::format_double(k->cellsize));
    meta.emplace_back("knee_score", io::format_double(k->score));
    meta.emplace_back("knee_flat", k->flat ? "true" : "false");
    std::cerr << "knee advisory: cellsize " << io::format_double(k->cellsize)
              << (k->flat ? " (no pronounced knee)" : "") << '\n';
  }
  io::write_scalogram(o.out, s, meta);
}

void cmd_split(const Options &o) {
  const io::PointsFile in = io::read_points(o.points);
  if (in.na_skipped)
    std::cerr << "warning: skipped " << in.na_skipped << " NA rows\n";
  const SplitResult s = grid_split(in.points, o.mesh_cellsize, o.per_cell, o.seed);
  const io::Metadata meta{{"mesh_cellsize", io::format_double(o.mesh_cellsize)},
                          {"per_cell", std::to_string(o.per_cell)},
                          {"seed", std::to_string(o.seed)}};
  ensure_dir(o.out_dir);
  io::write_points(fs::path(o.out_dir) / "train.csv", s.training, meta);
  io::write_points(fs::path(o.out_dir) / "valid.csv", s.validation, meta);
}

void cmd_interpolate(const Options &o) {
  InterpConfig cfg;
  cfg.power = o.power;
  cfg.snap_radius = o.snap_radius;
  cfg.threads = o.threads;
  if (o.all_points)
    cfg.neighborhood = AllPoints{};
  else if (o.max_distance)
    cfg.neighborhood = MaxDistance{*o.max_distance};
  else
    cfg.neighborhood = NearestN{o.neighbors};
  cfg.validate();
  const io::PointsFile train = io::read_points(o.train);
  if (train.na_skipped)
    std::cerr << "warning: skipped " << train.na_skipped << " NA rows\n";
  const CostSurface cost = load_cost(o.cost, o.water_cost, o.land_cost);
  const RasterGrid pred = o.method == "ipdw"
                              ? interpolate_ipdw(train.points, cost, cfg)
                              : interpolate_idw(train.points, cost.geometry(), &cost, cfg);
  io::write_ascii_grid(o.out, pred);
}

void cmd_crossval(const Options &o) {
  const RasterGrid pred = io::read_ascii_grid(o.pred);
  const io::PointsFile valid = io::read_points(o.valid);
  if (valid.na_skipped)
    std::cerr << "warning: skipped " << valid.na_skipped << " NA rows\n";
  const ErrorReport r = cross_validate(pred, valid.points);
  if (r.n_nodata)
    std::cerr << "warning: " << r.n_nodata << " validation points fell on nodata cells\n";
  io::Metadata meta{{"pred", o.pred}, {"valid", o.valid}};
  if (!o.label.empty())
    meta.emplace_back("label", o.label);
  io::write_error_report(o.out, r, meta);
}

void cmd_compare(const Options &o) {
  if (o.reports_a.size() != o.reports_b.size())
    throw ArgumentError("--reports-a and --reports-b need the same number of files");
  std::vector<double> mae_a, mae_b;
  std::vector<std::pair<double, ErrorReport>> ra, rb;
  for (std::size_t i = 0; i < o.reports_a.size(); ++i) {
    const ErrorReport a = io::read_error_report(o.reports_a[i]).report;
    const ErrorReport b = io::read_error_report(o.reports_b[i]).report;
    mae_a.push_back(a.mae);
    mae_b.push_back(b.mae);
    ra.emplace_back(a.value_range, a);
    rb.emplace_back(b.value_range, b);
  }
  const PairedTestResult t = wilcoxon_signed_rank(mae_a, mae_b);
  std::ofstream out(o.out, std::ios::binary);
  if (!out)
    throw InputError("cannot open " + o.out + " for writing");
  io::write_comparison(out, t, range_vs_error(ra), range_vs_error(rb),
                       {{"n_reports", std::to_string(o.reports_a.size())}});
  if (!out)
    throw InputError("failed writing " + o.out);
}

void cmd_synth(const Options &o) {
  const auto kind = synth::parse_scene_kind(o.scene);
  if (!kind)
    throw ArgumentError("--scene must be two-basin, gradient or plume");
  if (o.noise < 0.0)
    throw ArgumentError("--noise must be non-negative");
  synth::SceneConfig cfg;
  cfg.kind = *kind;
  cfg.step = o.step;
  cfg.noise = o.noise;
  cfg.seed = o.seed;
  cfg.ncols = o.ncols;
  cfg.nrows = o.nrows;
  cfg.cellsize = o.scene_cellsize;
  cfg.base = o.base;
  const synth::SyntheticScene s = synth::make_scene(cfg);
  const fs::path dir(o.out_dir);
  ensure_dir(dir);
  io::write_polygons(dir / "barriers.txt", s.barriers);
  io::write_ascii_grid(dir / "truth.asc", s.truth);
  io::write_ascii_grid(dir / "cost.asc", s.cost.raster());
  io::write_points(dir / "track.csv", s.track,
                   {{"scene", o.scene},
                    {"step", io::format_double(o.step)},
                    {"noise", io::format_double(o.noise)},
                    {"seed", std::to_string(o.seed)}});
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Inverse path distance weighting over barrier-split water bodies"};
  app.require_subcommand(0, 1);
  Options o;
  bool version = false;
  app.add_flag("--version", version, "Print version and configuration");
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::Range(1u, 1024u));

  auto *cost = app.add_subcommand("costraster", "Rasterize land polygons into a cost grid");
  cost->add_option("--polygons", o.polygons)->required();
  cost->add_option("--extent", o.extent, "xmin,ymin,xmax,ymax")->required();
  cost->add_option("--cellsize", o.cellsize)->required();
  cost->add_option("--water-cost", o.water_cost, "")->capture_default_str();
  cost->add_option("--land-cost", o.land_cost, "")->capture_default_str();
  cost->add_option("--out", o.out, "Output .asc")->required();

  auto *scal = app.add_subcommand("scalogram", "Edge density across cell sizes");
  scal->add_option("--polygons", o.polygons)->required();
  scal->add_option("--extent", o.extent, "xmin,ymin,xmax,ymax")->required();
  scal->add_option("--cellsizes", o.cellsizes, "lo..hi:step or a comma list")
      ->capture_default_str();
  scal->add_option("--out", o.out, "Output CSV")->required();

  auto *split = app.add_subcommand("split", "Grid-stratified training/validation split");
  split->add_option("--points", o.points)->required();
  split->add_option("--mesh-cellsize", o.mesh_cellsize)->capture_default_str();
  split->add_option("--per-cell", o.per_cell)->capture_default_str();
  split->add_option("--seed", o.seed)->capture_default_str();
  split->add_option("--out-dir", o.out_dir, "Receives train.csv and valid.csv")->required();

  auto *interp = app.add_subcommand("interpolate", "Predict a surface from training points");
  interp->add_option("--method", o.method)->required()->check(CLI::IsMember({"ipdw", "idw"}));
  interp->add_option("--train", o.train)->required();
  interp->add_option("--cost", o.cost, "Cost .asc; also fixes the output grid")->required();
  interp->add_option("--power", o.power)->capture_default_str();
  auto *nn = interp->add_option("--neighbors", o.neighbors)->capture_default_str();
  auto *md = interp->add_option("--max-distance", o.max_distance, "Radius neighbourhood (m)");
  auto *all = interp->add_flag("--all-points", o.all_points);
  nn->excludes(md)->excludes(all);
  md->excludes(all);
  interp->add_option("--snap-radius", o.snap_radius)->capture_default_str();
  interp->add_option("--water-cost", o.water_cost)->capture_default_str();
  interp->add_option("--land-cost", o.land_cost)->capture_default_str();
  interp->add_option("--out", o.out, "Output .asc")->required();

  auto *cv = app.add_subcommand("crossval", "Score a prediction against validation points");
  cv->add_option("--pred", o.pred)->required();
  cv->add_option("--valid", o.valid)->required();
  cv->add_option("--label", o.label, "Recorded in the report metadata");
  cv->add_option("--out", o.out, "Output CSV")->required();

  auto *cmp = app.add_subcommand("compare", "Paired Wilcoxon test over per-survey reports");
  cmp->add_option("--reports-a", o.reports_a)->required();
  cmp->add_option("--reports-b", o.reports_b)->required();
  cmp->add_option("--out", o.out, "Output CSV")->required();

  auto *syn = app.add_subcommand("synth", "Write a synthetic scene");
  syn->add_option("--scene", o.scene)->capture_default_str();
  syn->add_option("--step", o.step)->capture_default_str();
  syn->add_option("--noise", o.noise)->capture_default_str();
  syn->add_option("--seed", o.seed)->capture_default_str();
  syn->add_option("--base", o.base)->capture_default_str();
  syn->add_option("--ncols", o.ncols)->capture_default_str();
  syn->add_option("--nrows", o.nrows)->capture_default_str();
  syn->add_option("--cellsize", o.scene_cellsize)->capture_default_str();
  syn->add_option("--out-dir", o.out_dir)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (version) {
      std::cout << version_text(o);
      return 0;
    }
    if (app.got_subcommand(cost))
      cmd_costraster(o);
    else if (app.got_subcommand(scal))
      cmd_scalogram(o);
    else if (app.got_subcommand(split))
      cmd_split(o);
    else if (app.got_subcommand(interp))
      cmd_interpolate(o);
    else if (app.got_subcommand(cv))
      cmd_crossval(o);
    else if (app.got_subcommand(cmp))
      cmd_compare(o);
    else if (app.got_subcommand(syn))
      cmd_synth(o);
    else {
      std::cerr << app.help();
      return 1;
    }
  } catch (const InputError &e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const ConsistencyError &e) {
    std::cerr << "internal consistency failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception &e) {
    std::cerr << "internal failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
