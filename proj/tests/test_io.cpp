#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tcflow/config.hpp"
#include "tcflow/output.hpp"

using namespace tcflow;
namespace fs = std::filesystem;

namespace {

fs::path temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("tcflow_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p);
  REQUIRE(bool(in));
  std::vector<std::string> lines;
  std::string l;
  while (std::getline(in, l)) lines.push_back(l);
  return lines;
}

std::string read_all(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("vtk writer emits the full structured-points layout") {
  fs::path dir = temp_dir("vtk");
  Grid g = build_grid(10, 10, 1.0, 1.0, 3);
  ScalarField a(g, 0.5), T(g, 290.0), p(g, 1.25), sig(g, 0.1), d(g, 0.0);
  VectorField u(g);
  u.x(3, 3) = 1.0 / 3.0;
  const fs::path path = dir / "state.vtk";
  write_vtk(path.string(), a, T, p, sig, d, u);
  auto lines = read_lines(path);

  int cell_values = 0, point_values = 0, scalars = 0;
  bool in_cell = false, in_point = false;
  for (const auto& l : lines) {
    if (l.rfind("CELL_DATA", 0) == 0) {
      CHECK(l == "CELL_DATA 100");
      in_cell = true;
      in_point = false;
    } else if (l.rfind("POINT_DATA", 0) == 0) {
      CHECK(l == "POINT_DATA 121");
      in_point = true;
      in_cell = false;
    } else if (l.rfind("SCALARS", 0) == 0) {
      ++scalars;
    } else if (l.rfind("LOOKUP_TABLE", 0) == 0 || l.rfind("VECTORS", 0) == 0) {
      // header lines
    } else if (in_point) {
      ++point_values;
    } else if (in_cell) {
      ++cell_values;
    }
  }
  CHECK(scalars == 5);
  CHECK(cell_values == 5 * 100);
  CHECK(point_values == 121);
  CHECK(lines[4] == "DIMENSIONS 11 11 1");
}

TEST_CASE("vtk values survive a text round trip bit-exactly") {
  fs::path dir = temp_dir("roundtrip");
  Grid g = build_grid(4, 4, 1.0, 1.0, 3);
  ScalarField a(g), T(g, 290.0), p(g), sig(g), d(g);
  a(0, 0) = 1.0 / 3.0;
  a(1, 0) = 0.1;
  a(2, 0) = 6.51691008e-06;
  VectorField u(g);
  const fs::path path = dir / "rt.vtk";
  write_vtk(path.string(), a, T, p, sig, d, u);
  auto lines = read_lines(path);
  // first alpha value follows the first LOOKUP_TABLE line
  size_t k = 0;
  while (lines[k].rfind("LOOKUP_TABLE", 0) != 0) ++k;
  CHECK(std::stod(lines[k + 1]) == 1.0 / 3.0);
  CHECK(std::stod(lines[k + 2]) == 0.1);
  CHECK(std::stod(lines[k + 3]) == 6.51691008e-06);
  // locale-independent decimal point
  CHECK(lines[k + 1].find('.') != std::string::npos);
  CHECK(lines[k + 1].find(',') == std::string::npos);
}

TEST_CASE("output error paths") {
  Grid g = build_grid(4, 4, 1.0, 1.0, 3);
  ScalarField a(g), T(g), p(g), sig(g), d(g);
  VectorField u(g);
  CHECK_THROWS_AS(write_vtk("", a, T, p, sig, d, u), ConfigError);
  CHECK_THROWS_AS(write_vtk("/nonexistent_dir_xyz/out.vtk", a, T, p, sig, d, u),
                  ConfigError);
  Diagnostics empty;
  CHECK_THROWS_AS(write_diagnostics_csv(empty, "/tmp/x.csv"), ConfigError);
}

TEST_CASE("diagnostics csv layout") {
  fs::path dir = temp_dir("csv");
  Diagnostics diag;
  DiagnosticsSample s1;
  s1.t = 0.0;
  s1.mass = 6.5e-6;
  s1.transition_width_cells = 1.5;
  DiagnosticsSample s2;
  s2.t = 0.12;
  s2.mass = 6.5e-6;
  // second sample has no interface -> empty last column
  diag.samples = {s1, s2};
  const fs::path path = dir / "diag.csv";
  write_diagnostics_csv(diag, path.string());
  auto lines = read_lines(path);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "t,mass,max_u,centroid_y,kinetic_energy,transition_width");
  for (size_t k = 1; k < lines.size(); ++k) {
    CHECK(std::count(lines[k].begin(), lines[k].end(), ',') == 5);
    CHECK(lines[k].find("nan") == std::string::npos);
  }
  CHECK(lines[2].back() == ',');  // missing width stays empty
}

TEST_CASE("diagonal profile csv") {
  fs::path dir = temp_dir("prof");
  Grid g = build_grid(8, 8, 1.0, 1.0, 3);
  ScalarField a(g, 0.25);
  apply_boundary(a, BcSet::all_zero_gradient());
  const fs::path path = dir / "prof.csv";
  write_diagonal_profile_csv(a, 0.5, path.string());
  auto lines = read_lines(path);
  CHECK(lines[0].rfind("# t = ", 0) == 0);
  CHECK(lines[1] == "arclength,alpha");
  CHECK(lines.size() == 2 + 8 * 8 + 1);  // 8 samples/cell over 8 cells + end
}

TEST_CASE("manifest is written atomically with all keys") {
  fs::path dir = temp_dir("manifest");
  RunManifest m;
  m.config_path = "droplet.cfg";
  m.steps = 42;
  m.reached_time = 0.12;
  m.mass_drift = 1e-15;
  const fs::path path = dir / "manifest.txt";
  write_manifest(m, path.string());
  CHECK_FALSE(fs::exists(path.string() + ".tmp"));
  const std::string text = read_all(path);
  for (const char* key :
       {"solver_version", "config = droplet.cfg", "termination = completed",
        "steps = 42", "reached_time", "wall_seconds", "mass_drift",
        "clipped_mass"})
    CHECK(text.find(key) != std::string::npos);
}

TEST_CASE("case file parsing") {
  SUBCASE("shipped benchmark case matches the built-in defaults") {
    CaseConfig cfg = load_case_config(std::string(TCFLOW_CASE_DIR) +
                                      "/droplet.cfg");
    CHECK(cfg.nx == 100);
    CHECK(cfg.radius == doctest::Approx(1.44e-3));
    CHECK(cfg.phase1.rho == doctest::Approx(250.0));
    CHECK(cfg.phase2.rho == doctest::Approx(500.0));
    CHECK(cfg.sigma0 == doctest::Approx(0.1));
    CHECK(cfg.sigma_T == doctest::Approx(-0.02));
    CHECK(cfg.end_time == doctest::Approx(0.12));
    CHECK(cfg.t_top() == doctest::Approx(291.152));
  }
  SUBCASE("unknown keys are hard errors") {
    std::istringstream in("[grid]\nnx = 16\nmisspelled = 3\n");
    CHECK_THROWS_AS(parse_case_config(in), ConfigError);
  }
  SUBCASE("unknown sections are hard errors") {
    std::istringstream in("[gridx]\nnx = 16\n");
    CHECK_THROWS_AS(parse_case_config(in), ConfigError);
  }
  SUBCASE("malformed numbers are rejected") {
    std::istringstream in("[time]\nend_time = 0.12abc\n");
    CHECK_THROWS_AS(parse_case_config(in), ConfigError);
  }
  SUBCASE("comments and blank lines are ignored") {
    std::istringstream in(
        "# header comment\n\n[grid]\nnx = 32  # trailing\nny = 32\n");
    CaseConfig cfg = parse_case_config(in);
    CHECK(cfg.nx == 32);
    CHECK(cfg.ny == 32);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_case_config("/no/such/file.cfg"), ConfigError);
  }
  SUBCASE("validation runs after parsing") {
    std::istringstream in("[time]\ncfl = 2.0\n");
    CHECK_THROWS_AS(parse_case_config(in), ConfigError);
  }
}

TEST_CASE("command-line runner end to end") {
  const std::string bin = std::string(TCFLOW_BIN_DIR) + "/tcflow";
  REQUIRE(fs::exists(bin));
  fs::path dir = temp_dir("cli");

  // tiny fast case: 16^2, a handful of steps
  const fs::path cfgpath = dir / "tiny.cfg";
  {
    std::ofstream out(cfgpath);
    out << "[grid]\nnx = 16\nny = 16\n[time]\nend_time = 5e-4\n"
        << "[output]\nwrite_every = 2\n";
  }

  SUBCASE("successful run produces outputs and exit code 0") {
    const fs::path outdir = dir / "run1";
    const std::string cmd = bin + " --case " + cfgpath.string() +
                            " --output-dir " + outdir.string() +
                            " --quiet > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(fs::exists(outdir / "state_000000.vtk"));
    CHECK(fs::exists(outdir / "diagnostics.csv"));
    CHECK(fs::exists(outdir / "profile_initial.csv"));
    CHECK(fs::exists(outdir / "profile_final.csv"));
    CHECK(fs::exists(outdir / "manifest.txt"));
    const std::string man = read_all(outdir / "manifest.txt");
    CHECK(man.find("termination = completed") != std::string::npos);
  }

  SUBCASE("missing case file exits with code 2 and a manifest") {
    const fs::path outdir = dir / "run_bad";
    const std::string cmd = bin + " --case " + (dir / "absent.cfg").string() +
                            " --output-dir " + outdir.string() +
                            " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    CHECK(WEXITSTATUS(rc) == 2);
    const std::string man = read_all(outdir / "manifest.txt");
    CHECK(man.find("termination = config_error") != std::string::npos);
  }

  SUBCASE("repeated runs are byte-identical") {
    const fs::path o1 = dir / "det1", o2 = dir / "det2";
    for (const fs::path& o : {o1, o2}) {
      const std::string cmd = bin + " --case " + cfgpath.string() +
                              " --output-dir " + o.string() +
                              " --quiet > /dev/null 2>&1";
      REQUIRE(WEXITSTATUS(std::system(cmd.c_str())) == 0);
    }
    CHECK(read_all(o1 / "diagnostics.csv") == read_all(o2 / "diagnostics.csv"));
    CHECK(read_all(o1 / "state_000000.vtk") == read_all(o2 / "state_000000.vtk"));
    auto finals = [](const fs::path& o) {
      std::vector<std::string> v;
      for (auto& e : fs::directory_iterator(o))
        if (e.path().filename().string().rfind("state_", 0) == 0)
          v.push_back(e.path().filename().string());
      std::sort(v.begin(), v.end());
      return v;
    };
    auto f1 = finals(o1), f2 = finals(o2);
    REQUIRE(f1 == f2);
    CHECK(read_all(o1 / f1.back()) == read_all(o2 / f2.back()));
  }
}
