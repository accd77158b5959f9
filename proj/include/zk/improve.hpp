#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "zk/certify.hpp"

namespace zk {

// Data of one deformation step for a member whose certificate fails: the
// perturbed function is
//
//   R'(x) = (M(x) Pi(x) P(x) - tau p(x)) / (M(x) Pi(x) Q(x) - tau q(x)),
//
// with Pi = prod (x - x_s) over the flip points.  For small tau > 0 the
// difference R' - R carries the sign of L = Pi (P q - Q p) on the bands, so
// the zero pattern of L decides how every extremal value moves, and the flip
// points realize the wanted binary indexes.
struct DeformationPlan {
  std::vector<ProjPoint> flip_points;  // one interior point per flipped transition
  Poly L;     // sign witness: sign L(e) = (-1)^parity at every extremal e
  Poly M;     // positive on the real axis, even degree defect - sigma
  Poly p, q;  // deformation direction, P q - Q p = L / Pi
  double tau = 0.0;  // accepted step, set by apply_deformation
};

// Build the deformation data from a failed certificate.  Requires normalized
// coordinates: bands and windows exclude infinity and the function's value
// there avoids 0, infinity, and the window boundary, which forces equal
// numerator and denominator degrees (improve_step arranges all of this and
// undoes it afterwards).  jitter_seed nudges the placed points by up to 10%
// of the holding arc; 0 keeps exact midpoints.
DeformationPlan plan_deformation(const RealRational& r, const Certificate& cert,
                                 const BandSystem& e, const ValueWindows& f,
                                 std::uint64_t jitter_seed = 0);

// Halving line search over tau from 1e-2: accept the largest tau whose
// perturbed function is coprime of full nominal degree, whose value hull
// has strictly larger kappa than f, and whose binary index array equals the
// target class.  Returns the function and its hull windows; sets plan.tau.
// Raises errc::step_not_found after 60 halvings.
std::pair<RealRational, ValueWindows> apply_deformation(const RealRational& r,
                                                        DeformationPlan& plan,
                                                        const BandSystem& e,
                                                        const ValueWindows& f,
                                                        const IndexArray& target_class);

struct ImproveResult {
  RealRational r2;   // improved member, original coordinates
  ValueWindows f2;   // strictly tighter windows, original coordinates
  DeformationPlan plan;
  double kappa_before = 0.0;
  double kappa_after = 0.0;
  int attempts = 0;  // jitter rounds consumed
};

// One full improvement step in arbitrary coordinates: certify against the
// class, normalize by source/target Mobius maps, plan and apply the
// deformation, then map back and re-validate.  Deterministic for a fixed
// seed.  Raises errc::already_optimal or errc::infeasible_class when there
// is nothing to improve, errc::normalization_failed when no rotation clears
// the preconditions, errc::step_not_found when every jittered attempt fails.
ImproveResult improve_step(const RealRational& r, const BandSystem& e, const ValueWindows& f,
                           const IndexArray& target_class, std::uint64_t seed = 0);

}  // namespace zk
