#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "confocal/verify.hpp"

namespace confocal {

inline constexpr const char* kVersion = "0.1.0";

/// Rectangular evaluation grid: a planar slice for Euclidean geometry
/// (coordinates u,v sweep the plane, one axis held fixed), or a
/// two-parameter patch of S^3 for spherical geometry (u = polar angle alpha
/// from the north pole (0,0,0,1), v = azimuth phi in the (x,y) plane; the
/// patch is the great sphere z = 0).
struct GridSpec {
  int nu = 41, nv = 41;
  double u0 = -4, u1 = 4;
  double v0 = -4, v1 = 4;
  int fixed_axis = 2;      // Euclidean only: coordinate index held fixed
  double fixed_value = 0;  // Euclidean only
};

/// One JSON document configuring any CLI run; unknown fields are rejected.
struct RunConfig {
  std::string geometry = "euclidean";  // "euclidean" | "spherical"
  int dim = 3;                         // Euclidean ambient dimension
  std::vector<double> axes{3, 2, 1};
  std::array<double, 4> params{1, 1, 1, 1};
  std::string sheet = "both";         // "both" | "north" | "south"
  std::string kind = "homeoid";       // "homeoid" | "focaloid" |
                                      // "homogeneous" | "thick_homothetic" |
                                      // "thick_confocal"
  double mass = 1.0;
  double lambda = 0.0;        // focaloid carrier / thick_confocal outer
  double thick_param = 0.5;   // homothety factor, or inner-shift interval
  std::vector<double> gammas{-0.5};
  QuadratureSpec quad{};
  double tol = 1e-6;
  std::map<std::string, double> tol_overrides;
  std::uint64_t seed = 1;
  int n_points = 20;
  int n_layers = 32;
  std::vector<std::vector<double>> points;  // eval targets
  GridSpec grid{};                          // sweep targets
  /// Keys present in the parsed document. cmd_verify overrides a check's
  /// registry defaults only for fields the document actually set, so a
  /// config round-trips without disturbing untouched defaults.
  std::vector<std::string> explicit_keys;
};

RunConfig default_run_config();
/// Strict parse: unknown keys anywhere raise Errc::config_error.
RunConfig parse_run_config(const Json& doc);
/// Serializes exactly the explicitly-set keys (faithful round-trip form).
Json to_json(const RunConfig& cfg);
/// Serializes every field (the complete schema with current values); used
/// by `verify --print-config`.
Json to_full_json(const RunConfig& cfg);

/// Builds the configured source (mass surface or solid) and CheckConfig.
CheckConfig to_check_config(const RunConfig& cfg);

/// eval: one row per configured point (coordinates, region, V, F, error;
/// refused points keep empty fields and carry the reason). Returns 0, or 2
/// on configuration errors.
int cmd_eval(const RunConfig& cfg, std::ostream& out);

/// verify: runs the named checks ("all" or registry names), writes the JSON
/// report document to `out`. Returns 0 iff all checks pass, 1 on any
/// verification failure, 2 on configuration errors (unknown check, bad
/// config).
int cmd_verify(const RunConfig& cfg, const std::vector<std::string>& checks,
               std::ostream& out);

/// sweep: CSV over the grid; header x,y,z[,w],region,V,Fx,Fy,Fz[,Fw],V_err,
/// reason; row-major (u outer, v inner); refused rows carry the reason and
/// empty field values. Returns 0, or 2 on bad grid/config.
int cmd_sweep(const RunConfig& cfg, std::ostream& out);

/// Full argv entry point (parses eval|verify|sweep --config ... flags);
/// used by the `confocal` executable and by tests.
int run_cli(int argc, const char* const* argv);

}  // namespace confocal
