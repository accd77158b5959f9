#pragma once

#include <vector>

#include "zk/poly.hpp"
#include "zk/projline.hpp"

namespace zk {

// Real rational function R = P/Q on the projective line, carried together
// with a nominal degree n >= deg R.  Construction trims negligible leading
// coefficients, cancels approximately common roots of P and Q, and jointly
// rescales the pair; the defect is n - deg R after reduction.
class RealRational {
 public:
  RealRational(Poly num, Poly den, int nominal_degree);

  int nominal_degree() const { return nominal_; }
  int actual_degree() const { return align_; }
  int defect() const { return nominal_ - align_; }
  int reduced_common_roots() const { return reduced_; }

  const Poly& num() const { return p_; }
  const Poly& den() const { return q_; }

  // Homogeneous evaluation; raises errc::indeterminate_value if both
  // components vanish at x (failed reduction).
  ProjPoint eval(const ProjPoint& x) const;
  double eval_finite(double x) const { return eval(ProjPoint::finite(x)).value(); }
  // Components (P_hom(x), Q_hom(x)) before projectivization.
  std::pair<double, double> eval_pair(const ProjPoint& x) const;
  // Same on an explicit representative (xp : xq); the sign of the result
  // follows the sign of the representative, which keeps the pair continuous
  // along a continuously parametrized arc.
  std::pair<double, double> eval_pair_raw(double xp, double xq) const;

  RealRational with_nominal(int n) const { return RealRational(p_, q_, n); }

  // Numerator of the derivative: P'Q - PQ'.  Zero iff R is constant.
  Poly wronskian() const;
  bool is_constant() const { return wronskian().is_zero(); }

 private:
  Poly p_, q_;
  int nominal_ = 0;
  int align_ = 0;
  int reduced_ = 0;
};

// beta o R for a target-side map beta: componentwise (aP + bQ, cP + dQ).
RealRational compose_target(const RealRational& r, const MobiusMap& beta);
// R o alpha^{-1} for a source-side map alpha (so the transformed function
// lives over the transformed band system alpha E).
RealRational compose_source(const RealRational& r, const MobiusMap& alpha);

struct BoundarySolution {
  ProjPoint x;
  int multiplicity = 1;
};

// Solutions of R(x) = c on the closed arc, multiplicities from root
// clustering; includes the point at infinity via degree drop.  Raises
// errc::constant_function when R is identically c.
std::vector<BoundarySolution> boundary_solutions(const RealRational& r, const ProjPoint& c,
                                                 const Arc& arc);

// Continuous phase lift of x -> Arg(Q(x) + iP(x)) along an arc.  Samples are
// refined until consecutive lifted values differ by less than pi/2, and all
// interior critical points of the phase (roots of the Wronskian) are sample
// points, so phi_min/phi_max are exact up to root-finder accuracy.
struct PhaseLift {
  Arc arc;
  std::vector<double> offsets;  // increasing, offsets[0] = 0, back() = arc length
  std::vector<double> phi;      // lifted phase at the offsets
  double phi_min = 0.0;
  double phi_max = 0.0;

  double phi_start() const { return phi.front(); }
  double phi_end() const { return phi.back(); }
  void shift(double delta);

  PhaseLift(const Arc& a) : arc(a) {}
};

PhaseLift trace_phase(const RealRational& r, const Arc& arc);

}  // namespace zk
