#include "confocal/error.hpp"

namespace confocal {

const char* to_string(Errc code) {
  switch (code) {
    case Errc::non_positive_axis: return "NonPositiveAxis";
    case Errc::dimension_too_small: return "DimensionTooSmall";
    case Errc::shift_too_negative: return "ShiftTooNegative";
    case Errc::shift_out_of_range: return "ShiftOutOfRange";
    case Errc::non_positive_param: return "NonPositiveParam";
    case Errc::no_root: return "NoRoot";
    case Errc::non_convergence: return "NonConvergence";
    case Errc::not_on_sphere: return "NotOnSphere";
    case Errc::pole_point: return "PolePoint";
    case Errc::bad_parameter: return "BadParameter";
    case Errc::not_confocal: return "NotConfocal";
    case Errc::not_on_source: return "NotOnSource";
    case Errc::zero_seed: return "ZeroSeed";
    case Errc::wrong_kind: return "WrongKind";
    case Errc::quadrature_failure: return "QuadratureFailure";
    case Errc::coincident: return "Coincident";
    case Errc::antipodal: return "Antipodal";
    case Errc::too_close_to_surface: return "TooCloseToSurface";
    case Errc::too_close_to_antipode: return "TooCloseToAntipode";
    case Errc::interior_point: return "InteriorPoint";
    case Errc::p_not_exterior: return "PNotExterior";
    case Errc::no_exterior_samples: return "NoExteriorSamples";
    case Errc::degenerate_fit: return "DegenerateFit";
    case Errc::unknown_check: return "UnknownCheck";
    case Errc::config_error: return "ConfigError";
  }
  return "UnknownError";
}

}  // namespace confocal
