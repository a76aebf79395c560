#include "doctest.h"

#include "ipdw/io.hpp"

#include <cstdlib>
#include <filesystem>
#include <set>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace ipdw;

namespace {

fs::path scratch() {
  static const fs::path dir = [] {
    const fs::path d = fs::temp_directory_path() / ("ipdw_cli_test_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int run(const std::string &args) {
  const std::string cmd = std::string(IPDW_CLI_PATH) + " " + args + " 2>" +
                          (scratch() / "stderr.txt").string() + " >" +
                          (scratch() / "stdout.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string p(const std::string &name) { return (scratch() / name).string(); }

// synth -> split -> interpolate (both methods) -> crossval, all under `dir`.
void pipeline(const std::string &dir, const std::string &extra = "") {
  REQUIRE(run("synth --scene two-basin --step 10 --noise 0.5 --seed 3 --out-dir " + p(dir)) == 0);
  REQUIRE(run("split --points " + p(dir + "/track.csv") + " --seed 3 --out-dir " + p(dir)) == 0);
  for (const std::string m : {"ipdw", "idw"}) {
    REQUIRE(run(extra + " interpolate --method " + m + " --train " + p(dir + "/train.csv") +
                " --cost " + p(dir + "/cost.asc") + " --out " + p(dir + "/" + m + ".asc")) == 0);
    REQUIRE(run("crossval --pred " + p(dir + "/" + m + ".asc") + " --valid " +
                p(dir + "/valid.csv") + " --label " + m + " --out " +
                p(dir + "/" + m + ".csv")) == 0);
  }
}

} // namespace

TEST_SUITE("cli") {

TEST_CASE("version prints the artifact version") {
  REQUIRE(run("--version") == 0);
  const std::string out = io::read_text(scratch() / "stdout.txt");
  CHECK(out.rfind(std::string("ipdw ") + IPDW_VERSION, 0) == 0);
  CHECK(out.find("power=2") != std::string::npos);
}

TEST_CASE("full pipeline: IPDW beats IDW and repeated runs are byte-identical") {
  pipeline("a");
  pipeline("b", "--threads 3");
  const auto ipdw = io::read_error_report(fs::path(p("a/ipdw.csv"))).report;
  const auto idw = io::read_error_report(fs::path(p("a/idw.csv"))).report;
  CHECK(ipdw.mae < idw.mae);
  for (const std::string f : {"track.csv", "train.csv", "valid.csv", "ipdw.asc", "idw.asc"})
    CHECK(io::read_text(p("a/" + f)) == io::read_text(p("b/" + f)));

  REQUIRE(run("compare --reports-a " + p("a/idw.csv") + " " + p("a/ipdw.csv") + " --reports-b " +
              p("a/ipdw.csv") + " " + p("a/idw.csv") + " --out " + p("cmp.csv")) == 0);
  const std::string cmp = io::read_text(p("cmp.csv"));
  CHECK(cmp.find("# test=wilcoxon_signed_rank") != std::string::npos);
  CHECK(cmp.find("range_a,mae_a") != std::string::npos);
}

TEST_CASE("two-basin truth raster holds exactly two values") {
  REQUIRE(run("synth --scene two-basin --step 10 --out-dir " + p("t")) == 0);
  const RasterGrid truth = io::read_ascii_grid(fs::path(p("t/truth.asc")));
  std::set<double> values;
  for (std::size_t i = 0; i < truth.geometry().size(); ++i)
    if (!truth.is_nodata(i))
      values.insert(truth.at(i));
  CHECK(values == std::set<double>{20.0, 30.0});
}

TEST_CASE("costraster reproduces the synthetic cost grid; scalogram writes rows") {
  REQUIRE(run("synth --scene gradient --out-dir " + p("g")) == 0);
  REQUIRE(run("costraster --polygons " + p("g/barriers.txt") +
              " --extent 0,0,6000,6000 --cellsize 60 --out " + p("g/c.asc")) == 0);
  CHECK(io::read_text(p("g/c.asc")) == io::read_text(p("g/cost.asc")));
  REQUIRE(run("scalogram --polygons " + p("g/barriers.txt") +
              " --extent 0,0,6000,6000 --cellsizes 50..100:10 --out " + p("g/s.csv")) == 0);
  const std::string s = io::read_text(p("g/s.csv"));
  CHECK(s.find("\n100,") != std::string::npos);
  CHECK(s.find("# knee_cellsize=") != std::string::npos);
}

TEST_CASE("exit status 1 on input errors") {
  CHECK(run("crossval --pred " + p("missing.asc") + " --valid x --out " + p("o.csv")) == 1);
  CHECK(run("interpolate --method kriging --train a --cost b --out c") == 1);
  CHECK(run("interpolate --method idw --idw-power 3 --train a --cost b --out c") == 1);
  CHECK(run("interpolate --method idw --neighbors 4 --max-distance 50 --train a --cost b --out c") == 1);
  CHECK(run("costraster --polygons a --extent 0,0,1 --cellsize 5 --out c") == 1);
  CHECK(run("synth --scene lake --out-dir " + p("x")) == 1);
  CHECK(run("") == 1);
  io::write_text(p("bad.csv"), "x,y,value\n10,20\n");
  CHECK(run("split --points " + p("bad.csv") + " --out-dir " + p("s")) == 1);
  CHECK(io::read_text(scratch() / "stderr.txt").find("line 2") != std::string::npos);
}

}
