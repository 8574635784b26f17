#include "confocal/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "confocal/potential.hpp"

namespace confocal {

namespace {

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Sheet parse_sheet(const std::string& s) {
  if (s == "both") return Sheet::Both;
  if (s == "north") return Sheet::North;
  if (s == "south") return Sheet::South;
  fail(Errc::config_error, "sheet must be both|north|south, got '" + s + "'");
}

std::string source_kind_of(const std::string& kind) {
  if (kind == "thick_confocal") return "thick_focaloid";
  return kind;  // homeoid | focaloid pass through; others rejected downstream
}

bool has_key(const RunConfig& cfg, const char* key) {
  return std::find(cfg.explicit_keys.begin(), cfg.explicit_keys.end(), key) !=
         cfg.explicit_keys.end();
}

QuadratureSpec parse_quad(const Json& j) {
  if (!j.is_object()) fail(Errc::config_error, "quad must be an object");
  QuadratureSpec q;
  for (const auto& [key, value] : j.items()) {
    if (key == "method") {
      const std::string m = value.get<std::string>();
      if (m == "gauss_product")
        q.method = QuadMethod::GaussProduct;
      else if (m == "monte_carlo")
        q.method = QuadMethod::MonteCarlo;
      else
        fail(Errc::config_error, "quad.method must be gauss_product|monte_carlo");
    } else if (key == "order") {
      q.order = value.get<int>();
    } else if (key == "samples") {
      q.samples = value.get<std::int64_t>();
    } else if (key == "seed") {
      q.seed = value.get<std::uint64_t>();
    } else if (key == "refine") {
      q.refine = value.get<int>();
    } else if (key == "min_sep") {
      q.min_sep = value.get<double>();
    } else {
      fail(Errc::config_error, "unknown quad key: " + key);
    }
  }
  validate_quadrature_spec(q);
  return q;
}

Json quad_to_json(const QuadratureSpec& q) {
  Json j;
  j["method"] =
      q.method == QuadMethod::GaussProduct ? "gauss_product" : "monte_carlo";
  j["order"] = q.order;
  j["samples"] = q.samples;
  j["seed"] = q.seed;
  j["refine"] = q.refine;
  j["min_sep"] = q.min_sep;
  return j;
}

GridSpec parse_grid(const Json& j) {
  if (!j.is_object()) fail(Errc::config_error, "grid must be an object");
  GridSpec g;
  for (const auto& [key, value] : j.items()) {
    if (key == "nu") g.nu = value.get<int>();
    else if (key == "nv") g.nv = value.get<int>();
    else if (key == "u0") g.u0 = value.get<double>();
    else if (key == "u1") g.u1 = value.get<double>();
    else if (key == "v0") g.v0 = value.get<double>();
    else if (key == "v1") g.v1 = value.get<double>();
    else if (key == "fixed_axis") g.fixed_axis = value.get<int>();
    else if (key == "fixed_value") g.fixed_value = value.get<double>();
    else fail(Errc::config_error, "unknown grid key: " + key);
  }
  if (g.nu < 1 || g.nv < 1) fail(Errc::config_error, "grid needs nu, nv >= 1");
  return g;
}

Json grid_to_json(const GridSpec& g) {
  Json j;
  j["nu"] = g.nu;
  j["nv"] = g.nv;
  j["u0"] = g.u0;
  j["u1"] = g.u1;
  j["v0"] = g.v0;
  j["v1"] = g.v1;
  j["fixed_axis"] = g.fixed_axis;
  j["fixed_value"] = g.fixed_value;
  return j;
}

/// The evaluated source of an eval/sweep run.
struct Source {
  std::optional<MassSurface> surface;       // homeoid / focaloid
  std::optional<EuclideanEllipsoid> solid;  // homogeneous
  std::optional<ThickLayer> layer;          // thick_homothetic / thick_confocal
  bool spherical = false;
  int ambient = 3;
};

Source build_source(const RunConfig& cfg) {
  Source src;
  src.spherical = cfg.geometry == "spherical";
  if (cfg.geometry != "euclidean" && cfg.geometry != "spherical")
    fail(Errc::config_error, "geometry must be euclidean|spherical");
  if (src.spherical) {
    if (cfg.kind != "homeoid")
      fail(Errc::config_error,
           "spherical geometry supports kind=homeoid only, got '" + cfg.kind + "'");
    SphericalEllipsoid se(cfg.params[0], cfg.params[1], cfg.params[2],
                          cfg.params[3], parse_sheet(cfg.sheet));
    src.surface = MassSurface::spherical_homeoid(se, cfg.mass);
    src.ambient = 4;
    return src;
  }
  EuclideanEllipsoid e(cfg.axes);
  src.ambient = e.dim();
  if (cfg.kind == "homeoid") {
    src.surface = MassSurface::euclidean_homeoid(e, cfg.mass);
  } else if (cfg.kind == "focaloid") {
    src.surface = MassSurface::focaloid(e, cfg.lambda, cfg.mass);
  } else if (cfg.kind == "homogeneous") {
    src.solid = e;
  } else if (cfg.kind == "thick_homothetic") {
    src.layer = homothetic_layer(e, cfg.thick_param, cfg.mass);
  } else if (cfg.kind == "thick_confocal") {
    src.layer = confocal_layer(e, cfg.lambda, cfg.lambda - cfg.thick_param,
                               cfg.mass);
  } else {
    fail(Errc::config_error, "unknown kind: " + cfg.kind);
  }
  return src;
}

/// Quadric whose interior/exterior classification labels the row.
Classification classify_row(const Source& src, const RunConfig& cfg,
                            std::span<const double> p) {
  if (src.spherical) return classify(src.surface->spherical(), p);
  if (src.solid) return classify(*src.solid, p);
  if (src.layer) return classify(src.layer->outer, p);
  if (src.surface->kind() == SurfaceKind::Focaloid)
    return classify(src.surface->focaloid_surface().carrier(), p);
  return classify(src.surface->euclidean(), p);
  (void)cfg;
}

FieldValue field_row(const Source& src, const RunConfig& cfg,
                     std::span<const double> p) {
  if (src.surface) return field_surface(*src.surface, p, cfg.quad);
  if (src.solid)
    return field_homogeneous_ellipsoid(*src.solid, cfg.mass, p, cfg.quad,
                                       cfg.n_layers);
  return field_thick_layer(*src.layer, p, cfg.quad, cfg.n_layers);
}

std::string region_name(Region r) {
  switch (r) {
    case Region::Interior: return "interior";
    case Region::Surface: return "surface";
    default: return "exterior";
  }
}

void write_csv_header(std::ostream& out, const RunConfig& cfg, int ambient) {
  static const char* coord[4] = {"x", "y", "z", "w"};
  out << "# seed=" << cfg.seed << " version=" << kVersion << "\n";
  for (int i = 0; i < ambient; ++i) out << coord[i] << ",";
  out << "region,V";
  for (int i = 0; i < ambient; ++i) out << ",F" << coord[i];
  out << ",V_err,reason\n";
}

void write_csv_row(std::ostream& out, const Source& src, const RunConfig& cfg,
                   std::span<const double> p) {
  for (double x : p) out << fmt17(x) << ",";
  std::string region, reason;
  std::optional<FieldValue> fv;
  try {
    region = region_name(classify_row(src, cfg, p).region);
    fv = field_row(src, cfg, p);
  } catch (const Error& e) {
    reason = to_string(e.code());
    fv.reset();
  }
  out << region << ",";
  if (fv) {
    out << fmt17(fv->value);
    for (double f : fv->force) out << "," << fmt17(f);
    out << "," << fmt17(fv->error);
  } else {
    for (int i = 0; i < static_cast<int>(p.size()) + 1; ++i) out << ",";
  }
  out << "," << reason << "\n";
}

void check_point_dims(const RunConfig& cfg, int ambient) {
  for (const auto& p : cfg.points)
    if (static_cast<int>(p.size()) != ambient)
      fail(Errc::config_error,
           "eval point has " + std::to_string(p.size()) + " coordinates; " +
               std::to_string(ambient) + " expected");
}

CheckConfig merged_check_config(const CheckConfig& defaults,
                                const RunConfig& cfg) {
  CheckConfig c = defaults;
  if (has_key(cfg, "axes")) c.axes = cfg.axes;
  if (has_key(cfg, "params")) c.params = cfg.params;
  if (has_key(cfg, "sheet")) c.sheet = parse_sheet(cfg.sheet);
  if (has_key(cfg, "gammas")) c.gammas = cfg.gammas;
  if (has_key(cfg, "mass")) c.mass = cfg.mass;
  if (has_key(cfg, "n_points")) c.n_points = cfg.n_points;
  if (has_key(cfg, "quad")) c.quad = cfg.quad;
  if (has_key(cfg, "tol")) c.tol = cfg.tol;
  if (has_key(cfg, "tol_overrides")) c.tol_overrides = cfg.tol_overrides;
  if (has_key(cfg, "seed")) c.seed = cfg.seed;
  if (has_key(cfg, "kind")) c.source_kind = source_kind_of(cfg.kind);
  if (has_key(cfg, "lambda")) c.lambda = cfg.lambda;
  if (has_key(cfg, "thick_param")) c.thickness = cfg.thick_param;
  if (has_key(cfg, "n_layers")) c.n_layers = cfg.n_layers;
  return c;
}

}  // namespace

RunConfig default_run_config() { return RunConfig{}; }

RunConfig parse_run_config(const Json& doc) {
  if (!doc.is_object()) fail(Errc::config_error, "config must be a JSON object");
  RunConfig cfg;
  for (const auto& [key, value] : doc.items()) {
    if (key == "geometry") {
      cfg.geometry = value.get<std::string>();
      if (cfg.geometry != "euclidean" && cfg.geometry != "spherical")
        fail(Errc::config_error, "geometry must be euclidean|spherical");
    } else if (key == "dim") {
      cfg.dim = value.get<int>();
    } else if (key == "axes") {
      cfg.axes = value.get<std::vector<double>>();
    } else if (key == "params") {
      auto v = value.get<std::vector<double>>();
      if (v.size() != 4) fail(Errc::config_error, "params must have 4 entries");
      std::copy(v.begin(), v.end(), cfg.params.begin());
    } else if (key == "sheet") {
      cfg.sheet = value.get<std::string>();
      parse_sheet(cfg.sheet);  // validates
    } else if (key == "kind") {
      cfg.kind = value.get<std::string>();
    } else if (key == "mass") {
      cfg.mass = value.get<double>();
    } else if (key == "lambda") {
      cfg.lambda = value.get<double>();
    } else if (key == "thick_param") {
      cfg.thick_param = value.get<double>();
    } else if (key == "gammas") {
      cfg.gammas = value.get<std::vector<double>>();
    } else if (key == "quad") {
      cfg.quad = parse_quad(value);
    } else if (key == "tol") {
      cfg.tol = value.get<double>();
    } else if (key == "tol_overrides") {
      if (!value.is_object())
        fail(Errc::config_error, "tol_overrides must be an object");
      for (const auto& [name, tol] : value.items())
        cfg.tol_overrides[name] = tol.get<double>();
    } else if (key == "seed") {
      cfg.seed = value.get<std::uint64_t>();
    } else if (key == "n_points") {
      cfg.n_points = value.get<int>();
    } else if (key == "n_layers") {
      cfg.n_layers = value.get<int>();
    } else if (key == "points") {
      cfg.points = value.get<std::vector<std::vector<double>>>();
    } else if (key == "grid") {
      cfg.grid = parse_grid(value);
    } else {
      fail(Errc::config_error, "unknown config key: " + key);
    }
    cfg.explicit_keys.push_back(key);
  }
  if (has_key(cfg, "axes")) {
    if (has_key(cfg, "dim") &&
        cfg.dim != static_cast<int>(cfg.axes.size()))
      fail(Errc::config_error, "dim does not match the number of axes");
    cfg.dim = static_cast<int>(cfg.axes.size());
  } else if (has_key(cfg, "dim")) {
    if (cfg.dim < 2) fail(Errc::config_error, "dim must be >= 2");
    cfg.axes.assign(static_cast<std::size_t>(cfg.dim), 1.0);
  }
  return cfg;
}

Json to_json(const RunConfig& cfg) {
  Json full = to_full_json(cfg);
  Json j = Json::object();
  for (const auto& key : cfg.explicit_keys) j[key] = full.at(key);
  return j;
}

Json to_full_json(const RunConfig& cfg) {
  Json j;
  j["geometry"] = cfg.geometry;
  j["dim"] = cfg.dim;
  j["axes"] = cfg.axes;
  j["params"] = cfg.params;
  j["sheet"] = cfg.sheet;
  j["kind"] = cfg.kind;
  j["mass"] = cfg.mass;
  j["lambda"] = cfg.lambda;
  j["thick_param"] = cfg.thick_param;
  j["gammas"] = cfg.gammas;
  j["quad"] = quad_to_json(cfg.quad);
  j["tol"] = cfg.tol;
  Json ov = Json::object();
  for (const auto& [k, v] : cfg.tol_overrides) ov[k] = v;
  j["tol_overrides"] = ov;
  j["seed"] = cfg.seed;
  j["n_points"] = cfg.n_points;
  j["n_layers"] = cfg.n_layers;
  j["points"] = cfg.points;
  j["grid"] = grid_to_json(cfg.grid);
  return j;
}

CheckConfig to_check_config(const RunConfig& cfg) {
  CheckConfig c;
  c.spherical = cfg.geometry == "spherical";
  c.axes = cfg.axes;
  c.params = cfg.params;
  c.sheet = parse_sheet(cfg.sheet);
  c.gammas = cfg.gammas;
  c.mass = cfg.mass;
  c.n_points = cfg.n_points;
  c.quad = cfg.quad;
  c.tol = cfg.tol;
  c.tol_overrides = cfg.tol_overrides;
  c.seed = cfg.seed;
  c.source_kind = source_kind_of(cfg.kind);
  c.lambda = cfg.lambda;
  c.thickness = cfg.thick_param;
  c.n_layers = cfg.n_layers;
  return c;
}

int cmd_eval(const RunConfig& cfg, std::ostream& out) {
  try {
    Source src = build_source(cfg);
    if (cfg.points.empty())
      fail(Errc::config_error, "eval needs at least one point");
    check_point_dims(cfg, src.ambient);
    write_csv_header(out, cfg, src.ambient);
    for (const auto& p : cfg.points) write_csv_row(out, src, cfg, p);
    return 0;
  } catch (const Error& e) {
    std::cerr << "confocal eval: " << e.what() << "\n";
    return 2;
  }
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  try {
    Source src = build_source(cfg);
    const GridSpec& g = cfg.grid;
    if (!src.spherical && src.ambient != 2 && src.ambient != 3)
      fail(Errc::config_error, "sweep supports Euclidean dimension 2 or 3");
    if (!src.spherical && src.ambient == 3 &&
        (g.fixed_axis < 0 || g.fixed_axis > 2))
      fail(Errc::config_error, "grid.fixed_axis must be 0, 1 or 2");
    write_csv_header(out, cfg, src.ambient);
    for (int i = 0; i < g.nu; ++i) {
      const double u =
          g.nu == 1 ? g.u0 : g.u0 + (g.u1 - g.u0) * i / (g.nu - 1.0);
      for (int k = 0; k < g.nv; ++k) {
        const double v =
            g.nv == 1 ? g.v0 : g.v0 + (g.v1 - g.v0) * k / (g.nv - 1.0);
        std::vector<double> p;
        if (src.spherical) {
          // Patch of the great sphere z = 0: u = polar angle from
          // (0,0,0,1), v = azimuth in the (x,y) plane.
          p = {std::sin(u) * std::cos(v), std::sin(u) * std::sin(v), 0.0,
               std::cos(u)};
        } else if (src.ambient == 2) {
          p = {u, v};
        } else {
          p.assign(3, g.fixed_value);
          const int iu = g.fixed_axis == 0 ? 1 : 0;
          const int iv = g.fixed_axis == 2 ? 1 : 2;
          p[static_cast<std::size_t>(iu)] = u;
          p[static_cast<std::size_t>(iv)] = v;
        }
        write_csv_row(out, src, cfg, p);
      }
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "confocal sweep: " << e.what() << "\n";
    return 2;
  }
}

int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& checks,
               std::ostream& out) {
  try {
    const auto& registry = check_registry();
    std::vector<const CheckSpec*> selected;
    const bool all =
        checks.empty() ||
        std::find(checks.begin(), checks.end(), "all") != checks.end();
    if (all) {
      for (const auto& spec : registry) selected.push_back(&spec);
    } else {
      for (const auto& name : checks) {
        const CheckSpec* found = nullptr;
        for (const auto& spec : registry)
          if (spec.name == name) found = &spec;
        if (!found) fail(Errc::unknown_check, "no check named '" + name + "'");
        selected.push_back(found);
      }
    }
    Json report;
    report["run"]["seed"] = cfg.seed;
    report["run"]["version"] = kVersion;
    report["run"]["config"] = to_json(cfg);
    report["checks"] = Json::array();
    bool all_pass = true;
    for (const CheckSpec* spec : selected) {
      VerificationReport r = spec->run(merged_check_config(spec->defaults, cfg));
      all_pass = all_pass && r.pass;
      report["checks"].push_back(r.to_json());
    }
    out << report.dump(2) << "\n";
    return all_pass ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "confocal verify: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"confocal ellipsoid potential toolkit"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  std::vector<std::string> checks;
  std::uint64_t seed = 0;
  bool seed_set = false;
  bool print_config = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration file");
    sub->add_option("--out", out_path, "output file (default: stdout)");
    sub->add_option("--seed", seed, "override the configured seed")
        ->each([&](const std::string&) { seed_set = true; });
  };
  CLI::App* eval = app.add_subcommand("eval", "evaluate V and F at points");
  CLI::App* verify = app.add_subcommand("verify", "run verification checks");
  CLI::App* sweep = app.add_subcommand("sweep", "CSV field sweep over a grid");
  add_common(eval);
  add_common(verify);
  add_common(sweep);
  verify->add_option("--check", checks, "check name (repeatable; 'all')");
  verify->add_flag("--print-config", print_config,
                   "print the full default configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    RunConfig cfg = default_run_config();
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) fail(Errc::config_error, "cannot open config: " + config_path);
      Json doc = Json::parse(in);  // throws on malformed JSON
      cfg = parse_run_config(doc);
    }
    if (seed_set) {
      cfg.seed = seed;
      if (!has_key(cfg, "seed")) cfg.explicit_keys.push_back("seed");
    }

    std::ofstream file_out;
    if (!out_path.empty()) {
      file_out.open(out_path, std::ios::binary);  // LF line endings as-is
      if (!file_out)
        fail(Errc::config_error, "cannot open output file: " + out_path);
    }
    std::ostream& out = out_path.empty() ? std::cout : file_out;

    if (app.got_subcommand(verify)) {
      if (print_config) {
        out << to_full_json(default_run_config()).dump(2) << "\n";
        return 0;
      }
      return cmd_verify(cfg, checks, out);
    }
    if (app.got_subcommand(eval)) return cmd_eval(cfg, out);
    return cmd_sweep(cfg, out);
  } catch (const Error& e) {
    std::cerr << "confocal: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "confocal: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace confocal
