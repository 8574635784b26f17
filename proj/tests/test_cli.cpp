#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "confocal/cli.hpp"
#include "test_util.hpp"

using namespace confocal;
using testutil::expect_errc;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempFile {
  std::filesystem::path path;
  explicit TempFile(const std::string& name)
      : path(std::filesystem::temp_directory_path() /
             ("confocal_test_" + name)) {}
  ~TempFile() {
    std::error_code ec;
    std::filesystem::remove(path, ec);
  }
};

int run(std::initializer_list<const char*> args) {
  std::vector<const char*> argv = {"confocal"};
  argv.insert(argv.end(), args.begin(), args.end());
  return run_cli(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("parse_run_config accepts known keys and rejects unknown ones") {
  Json doc = Json::parse(R"({
    "geometry": "euclidean",
    "axes": [3, 2, 1],
    "kind": "homeoid",
    "gammas": [2.0, 5.0],
    "seed": 9,
    "quad": {"order": 32, "min_sep": 0.01}
  })");
  RunConfig cfg = parse_run_config(doc);
  CHECK(cfg.axes == std::vector<double>{3, 2, 1});
  CHECK(cfg.gammas == std::vector<double>{2.0, 5.0});
  CHECK(cfg.seed == 9);
  CHECK(cfg.quad.order == 32);
  CHECK(cfg.quad.min_sep == 0.01);
  CHECK(cfg.dim == 3);

  expect_errc(Errc::config_error,
              [] { parse_run_config(Json::parse(R"({"axis": [1,2]})")); });
  expect_errc(Errc::config_error, [] {
    parse_run_config(Json::parse(R"({"quad": {"oreder": 32}})"));
  });
  expect_errc(Errc::config_error, [] {
    parse_run_config(Json::parse(R"({"geometry": "hyperbolic"})"));
  });
  expect_errc(Errc::config_error, [] {
    parse_run_config(Json::parse(R"({"params": [1, 2, 3]})"));
  });
  expect_errc(Errc::config_error, [] {
    parse_run_config(Json::parse(R"({"sheet": "west"})"));
  });
  expect_errc(Errc::config_error, [] {
    parse_run_config(Json::parse(R"({"dim": 4, "axes": [3, 2, 1]})"));
  });
  expect_errc(Errc::config_error,
              [] { parse_run_config(Json::parse(R"([1, 2])")); });
}

TEST_CASE("config round trip preserves exactly the explicit keys") {
  Json doc = Json::parse(R"({
    "geometry": "spherical",
    "params": [2, 1, 1.5, 1],
    "sheet": "north",
    "gammas": [0.3],
    "tol": 1e-7
  })");
  RunConfig cfg = parse_run_config(doc);
  Json round = to_json(cfg);
  CHECK(round.size() == doc.size());
  for (const auto& [key, value] : doc.items())
    CHECK(round.at(key) == value);

  Json full = to_full_json(cfg);
  CHECK(full.contains("quad"));
  CHECK(full.contains("n_points"));
  CHECK(full.at("sheet") == "north");
  CHECK(full.size() > round.size());
}

TEST_CASE("default config serializes every field") {
  Json full = to_full_json(default_run_config());
  for (const char* key :
       {"geometry", "dim", "axes", "params", "sheet", "kind", "mass",
        "lambda", "thick_param", "gammas", "quad", "tol", "tol_overrides",
        "seed", "n_points", "n_layers", "points", "grid"})
    CHECK_MESSAGE(full.contains(key), "missing key: " << key);
  // Defaults must themselves be parseable (print-config -> config file).
  RunConfig cfg = parse_run_config(full);
  CHECK(cfg.geometry == "euclidean");
  CHECK(to_full_json(cfg) == full);
}

TEST_CASE("cmd_eval emits the CSV contract") {
  RunConfig cfg = default_run_config();
  cfg.points = {{4.0, 0.5, 0.25}, {0.2, 0.1, 0.0}, {3.0, 0.0, 0.0}};
  std::ostringstream out;
  REQUIRE(cmd_eval(cfg, out) == 0);
  auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 5);
  CHECK(lines[0] == "# seed=1 version=0.1.0");
  CHECK(lines[1] == "x,y,z,region,V,Fx,Fy,Fz,V_err,reason");
  CHECK(lines[2].find("exterior") != std::string::npos);
  CHECK(lines[3].find("interior") != std::string::npos);
  // The on-surface point is refused: region column still filled, V..V_err
  // empty, reason at the end.
  CHECK(lines[4].find("surface") != std::string::npos);
  CHECK(lines[4].find("TooCloseToSurface") != std::string::npos);
  CHECK(lines[4].find(",,,,,TooCloseToSurface") != std::string::npos);
  // LF-only line endings.
  CHECK(out.str().find('\r') == std::string::npos);
}

TEST_CASE("cmd_eval validates points") {
  RunConfig cfg = default_run_config();
  std::ostringstream out;
  CHECK(cmd_eval(cfg, out) == 2);  // no points
  cfg.points = {{1.0, 2.0}};
  CHECK(cmd_eval(cfg, out) == 2);  // wrong arity for dim 3
  cfg.points = {{1.0, 2.0, 3.0}};
  cfg.kind = "unknown_kind";
  CHECK(cmd_eval(cfg, out) == 2);
}

TEST_CASE("cmd_eval spherical requires homeoid kind and 4-vectors") {
  RunConfig cfg = default_run_config();
  cfg.geometry = "spherical";
  cfg.kind = "focaloid";
  cfg.points = {{1.0, 0, 0, 0}};
  std::ostringstream out;
  CHECK(cmd_eval(cfg, out) == 2);

  cfg.kind = "homeoid";
  cfg.params = {1, 1, 1, 1};
  cfg.sheet = "north";
  cfg.points = {{0.0, 0.0, 0.0, 1.0}};
  std::ostringstream ok;
  REQUIRE(cmd_eval(cfg, ok) == 0);
  auto lines = lines_of(ok.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[1] == "x,y,z,w,region,V,Fx,Fy,Fz,Fw,V_err,reason");
  // North pole of the equal-axes surface: V = cot(pi/4) = 1.
  CHECK(lines[2].rfind("0,0,0,1,interior,", 0) == 0);
  std::istringstream row(lines[2].substr(lines[2].find("interior,") + 9));
  double v = 0;
  row >> v;
  CHECK(v == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("cmd_sweep walks the grid row-major") {
  RunConfig cfg = default_run_config();
  cfg.grid.nu = 3;
  cfg.grid.nv = 2;
  cfg.grid.u0 = -4;
  cfg.grid.u1 = 4;
  cfg.grid.v0 = 0;
  cfg.grid.v1 = 1;
  cfg.grid.fixed_axis = 2;
  cfg.grid.fixed_value = 0.25;
  std::ostringstream out;
  REQUIRE(cmd_sweep(cfg, out) == 0);
  auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 2 + 3 * 2);
  // Row-major: u (x here) outer, v (y) inner; z pinned at 0.25.
  CHECK(lines[2].rfind("-4,0,0.25,", 0) == 0);
  CHECK(lines[3].rfind("-4,1,0.25,", 0) == 0);
  CHECK(lines[4].rfind("0,0,0.25,", 0) == 0);
  CHECK(lines[7].rfind("4,1,0.25,", 0) == 0);
}

TEST_CASE("cmd_sweep handles degenerate grids and fixed axes") {
  RunConfig cfg = default_run_config();
  cfg.grid.nu = 1;
  cfg.grid.nv = 1;
  cfg.grid.u0 = 5;
  cfg.grid.v0 = 0.5;
  cfg.grid.fixed_axis = 0;  // x pinned; (u,v) -> (y,z)
  cfg.grid.fixed_value = 1.0;
  std::ostringstream out;
  REQUIRE(cmd_sweep(cfg, out) == 0);
  auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 3);
  CHECK(lines[2].rfind("1,5,0.5,", 0) == 0);

  cfg.grid.fixed_axis = 7;
  std::ostringstream bad;
  CHECK(cmd_sweep(cfg, bad) == 2);
}

TEST_CASE("cmd_sweep spherical grid stays on the unit sphere") {
  RunConfig cfg = default_run_config();
  cfg.geometry = "spherical";
  cfg.params = {1, 1, 1, 1};
  cfg.sheet = "north";
  cfg.grid.nu = 4;
  cfg.grid.nv = 3;
  cfg.grid.u0 = 0.2;
  cfg.grid.u1 = 3.0;
  cfg.grid.v0 = 0.0;
  cfg.grid.v1 = 3.0;
  std::ostringstream out;
  REQUIRE(cmd_sweep(cfg, out) == 0);
  auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 2 + 4 * 3);
  CHECK(lines[1] == "x,y,z,w,region,V,Fx,Fy,Fz,Fw,V_err,reason");
}

TEST_CASE("cmd_verify writes the report schema and respects overrides") {
  RunConfig cfg = default_run_config();
  cfg.n_points = 6;
  cfg.explicit_keys = {"n_points"};
  std::ostringstream out;
  int rc = cmd_verify(cfg, {"euclidean_interior"}, out);
  CHECK(rc == 0);
  Json doc = Json::parse(out.str());
  CHECK(doc.at("run").at("seed").get<std::uint64_t>() == 1);
  CHECK(doc.at("run").at("version") == "0.1.0");
  CHECK(doc.at("run").at("config") == Json::parse(R"({"n_points": 6})"));
  REQUIRE(doc.at("checks").size() == 1);
  const Json& check = doc.at("checks").at(0);
  CHECK(check.at("name") == "euclidean_interior");
  CHECK(check.at("pass").get<bool>());
  CHECK(check.at("inputs").at("n_points").get<int>() == 6);
  // The registry's own default for this check survives the merge.
  CHECK(check.at("tolerances").at("max_interior_force").get<double>() ==
        1e-7);
}

TEST_CASE("cmd_verify resolves 'all' and unknown names") {
  RunConfig cfg = default_run_config();
  std::ostringstream out;
  CHECK(cmd_verify(cfg, {"not_a_check"}, out) == 2);
}

TEST_CASE("run_cli end to end: eval with config and output file") {
  TempFile cfg_file("eval_cfg.json");
  TempFile out_file("eval_out.csv");
  {
    std::ofstream cfg(cfg_file.path);
    cfg << R"({"axes": [3, 2, 1], "points": [[4.0, 0.5, 0.25]]})";
  }
  const std::string cfg_arg = cfg_file.path.string();
  const std::string out_arg = out_file.path.string();
  int rc = run({"eval", "--config", cfg_arg.c_str(), "--out",
                out_arg.c_str(), "--seed", "123"});
  CHECK(rc == 0);
  std::string text = slurp(out_file.path);
  auto lines = lines_of(text);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == "# seed=123 version=0.1.0");

  // Determinism: a second run writes byte-identical output.
  TempFile out2("eval_out2.csv");
  const std::string out2_arg = out2.path.string();
  REQUIRE(run({"eval", "--config", cfg_arg.c_str(), "--out",
               out2_arg.c_str(), "--seed", "123"}) == 0);
  CHECK(slurp(out2.path) == text);
}

TEST_CASE("run_cli end to end: verify report and exit codes") {
  TempFile out_file("verify_out.json");
  const std::string out_arg = out_file.path.string();
  int rc = run({"verify", "--check", "ivory_identities", "--out",
                out_arg.c_str(), "--seed", "4"});
  CHECK(rc == 0);
  Json doc = Json::parse(slurp(out_file.path));
  CHECK(doc.at("run").at("seed").get<std::uint64_t>() == 4);
  CHECK(doc.at("checks").at(0).at("inputs").at("seed").get<std::uint64_t>() ==
        4);

  CHECK(run({"verify", "--check", "bogus"}) == 2);
  CHECK(run({"eval", "--config", "/no/such/file.json"}) == 2);
  CHECK(run({"frobnicate"}) == 2);
  CHECK(run({}) == 2);
}

TEST_CASE("run_cli --print-config emits a parseable full config") {
  TempFile out_file("print_cfg.json");
  const std::string out_arg = out_file.path.string();
  REQUIRE(run({"verify", "--print-config", "--out", out_arg.c_str()}) == 0);
  Json doc = Json::parse(slurp(out_file.path));
  RunConfig cfg = parse_run_config(doc);
  CHECK(cfg.axes == std::vector<double>{3, 2, 1});
  CHECK(cfg.quad.order == 64);
}

TEST_CASE("malformed JSON config exits 2") {
  TempFile cfg_file("broken.json");
  {
    std::ofstream cfg(cfg_file.path);
    cfg << "{ not json";
  }
  const std::string cfg_arg = cfg_file.path.string();
  CHECK(run({"eval", "--config", cfg_arg.c_str()}) == 2);
}
