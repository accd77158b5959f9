#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zk/bands.hpp"
#include "zk/certify.hpp"
#include "zk/ratfun.hpp"
#include "zk/stiefel.hpp"

namespace zk {

// One certify round inside solve(): the window cross ratio in force when the
// certificate was issued, plus the counts that drive the verdict.
struct IterationRow {
  double kappa = 0.0;
  int defect = 0;
  int alternation = 0;
  int sigma0 = 0;
  int sigma1 = 0;
};

struct SolveOptions {
  int max_iterations = 200;
  // A deformation step whose relative cross-ratio gain falls below
  // stall_rel_gain counts as a strike; stall_strikes consecutive strikes end
  // the run with stop_reason "stalled".
  double stall_rel_gain = 1e-10;
  int stall_strikes = 3;
  std::uint64_t step_seed = 0;  // jitter stream for deformation retries
};

// Full account of a solve run.  The iteration rows carry a strictly
// increasing kappa sequence; the final certificate is issued from scratch on
// the returned function and windows, so it can be rechecked independently.
struct SolveReport {
  std::vector<IterationRow> iterations;
  RealRational function;
  ValueWindows windows;
  Certificate certificate;
  bool converged = false;
  std::string stop_reason;
  std::optional<double> oracle_gap;  // filled by callers that ran the oracle
};

// Degree-n starting member: a polynomial interpolating the band-type targets
// -1/+1 at n+1 nodes spread over the bands (Chebyshev-spaced within each
// band, bands visited round-robin).  When a band runs near or through
// infinity the interpolation happens in rotated coordinates and is composed
// back.  The result is a member of its own value-hull windows; raises
// errc::normalization_failed when no node placement yields valid windows.
RealRational default_seed(const BandSystem& e, int n);

// Certificate-driven ascent on the window cross ratio.  Starting from `seed`
// (default: default_seed), windows are re-tightened to the value hull after
// every accepted deformation step and the certificate is recomputed; the run
// ends when the verdict reaches optimal_certified (converged = true), the
// step search gives out, progress stalls, or the iteration cap is hit.
// An empty target class raises errc::infeasible_class; everything else is
// reported, not thrown.  When no target class is given the seed's own index
// array is used.
SolveReport solve(const BandSystem& e, int n, std::optional<IndexArray> target_class = {},
                  std::optional<RealRational> seed = {}, const SolveOptions& opts = {});

struct OracleOptions {
  int samples_per_band = 240;  // dense band sampling for the value hulls
  int rounds = 36;             // nested-refinement rounds
  int points_per_axis = 5;     // grid resolution per coefficient
  double initial_span = 1.5;   // first-round half-width of the search box
};

// Independent reference optimizer for degrees 1 and 2: nested grid
// refinement over the full numerator/denominator coefficient space,
// maximizing the cross ratio of the tightest windows around the sampled band
// values.  Returns the best cross ratio and the function attaining it.
// Refining the grid never decreases the reported value.  Raises
// errc::precondition_violated outside n in {1, 2} and errc::degenerate_image
// when no candidate separates the band types.
std::pair<double, RealRational> brute_force_oracle(const BandSystem& e, int n,
                                                   const OracleOptions& opts = {});

}  // namespace zk
