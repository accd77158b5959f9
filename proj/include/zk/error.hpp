#pragma once

#include <stdexcept>
#include <string>

namespace zk {

// Failure codes surfaced by the library.  Each operation documents which of
// these it can raise; the CLI maps them onto process exit codes.
enum class errc {
  degenerate_windows,
  coincident_points,
  out_of_range,
  degenerate_image,
  indeterminate_value,
  constant_function,
  invalid_band_system,
  lift_failure,
  anchor_mismatch,
  precondition_violated,
  membership_violated,
  not_coprime,
  ill_conditioned,
  already_optimal,
  normalization_failed,
  step_not_found,
  infeasible_class,
  stalled,
  value_coincidence_at_endpoint,
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw Error(code, what); }

}  // namespace zk
