#pragma once

#include <stdexcept>
#include <string>

namespace confocal {

/// Error codes for every refusal and validation failure in the library.
enum class Errc {
  non_positive_axis,
  dimension_too_small,
  shift_too_negative,
  shift_out_of_range,
  non_positive_param,
  no_root,
  non_convergence,
  not_on_sphere,
  pole_point,
  bad_parameter,
  not_confocal,
  not_on_source,
  zero_seed,
  wrong_kind,
  quadrature_failure,
  coincident,
  antipodal,
  too_close_to_surface,
  too_close_to_antipode,
  interior_point,
  p_not_exterior,
  no_exterior_samples,
  degenerate_fit,
  unknown_check,
  config_error,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace confocal
