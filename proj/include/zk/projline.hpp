#pragma once

#include <cmath>
#include <iosfwd>
#include <string>

#include "zk/error.hpp"
#include "zk/tolerances.hpp"

namespace zk {

// Point of the real projective line in homogeneous coordinates (p : q).
// Stored in canonical form: p^2 + q^2 = 1 and q > 0, or q = 0 and p > 0.
// Finite x is (x : 1); the point at infinity is (1 : 0).
class ProjPoint {
 public:
  ProjPoint() : p_(0.0), q_(1.0) {}
  ProjPoint(double p, double q);

  static ProjPoint finite(double x) { return ProjPoint(x, 1.0); }
  static ProjPoint infinity() { return ProjPoint(1.0, 0.0); }
  // Point with angle coordinate phi, i.e. (sin phi : cos phi).
  static ProjPoint from_angle(double phi) { return ProjPoint(std::sin(phi), std::cos(phi)); }

  double p() const { return p_; }
  double q() const { return q_; }

  bool is_infinite(double eps = tol::point) const { return std::abs(q_) <= eps; }
  // p/q; +inf when the point is at infinity.  Intended for reporting.
  double value() const;
  // Angle coordinate in [0, pi).  Increasing angle is the cyclic orientation:
  // 0 -> 1 -> +inf -> -1 -> 0.
  double angle() const;

  std::string str() const;

 private:
  double p_, q_;
};

// 2x2 homogeneous determinant a.p*b.q - a.q*b.p; the projective stand-in for
// the difference a - b.  Scale-free because callers always use an even number
// of determinants per point.
double det2(const ProjPoint& a, const ProjPoint& b);

// Fubini-Study distance: |delta angle| mod pi folded into [0, pi/2].
double fubini_study_distance(const ProjPoint& a, const ProjPoint& b);

bool almost_equal(const ProjPoint& a, const ProjPoint& b, double eps = tol::point);

// True when walking from a in the cyclic orientation meets b strictly before c.
// Requires the three points pairwise distinct (errc::coincident_points).
bool cyclic_position(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c);

// Invertible real Mobius map x -> (a x + b) / (c x + d) acting on homogeneous
// pairs by the matrix [[a, b], [c, d]].  Normalized so max |entry| = 1.
class MobiusMap {
 public:
  MobiusMap(double a, double b, double c, double d);

  static MobiusMap identity() { return MobiusMap(1, 0, 0, 1); }
  // Rotation by theta in the angle coordinate (always orientation-preserving).
  static MobiusMap rotation(double theta);

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double det() const { return a_ * d_ - b_ * c_; }
  bool orientation_preserving() const { return det() > 0.0; }

  ProjPoint operator()(const ProjPoint& x) const;
  MobiusMap inverse() const;
  // (*this) after `inner`: x -> (*this)(inner(x)).
  MobiusMap compose(const MobiusMap& inner) const;

 private:
  double a_, b_, c_, d_;
};

// Closed arc traversed from start to end in the cyclic orientation.
// Endpoints must be distinct; every arc has length in (0, pi).
class Arc {
 public:
  Arc(const ProjPoint& start, const ProjPoint& end);

  const ProjPoint& start() const { return start_; }
  const ProjPoint& end() const { return end_; }
  double length() const { return length_; }

  bool contains(const ProjPoint& x, double eps = tol::point) const;
  // Signed offset of x from start along the orientation, in [0, pi); does not
  // check containment.
  double offset_of(const ProjPoint& x) const;
  ProjPoint point_at_offset(double s) const;
  ProjPoint midpoint() const { return point_at_offset(length_ / 2); }

  // Image under m as a set, with endpoints swapped when m reverses orientation.
  Arc transformed(const MobiusMap& m) const;

 private:
  ProjPoint start_, end_;
  double length_;
};

// Cross ratio of the four cyclically ordered window endpoints
// (d0m, d1m, d0p, d1p) = (boundary of F- then F+), computed from homogeneous
// determinants.  Degenerate when any two endpoints coincide.
double cross_ratio(const ProjPoint& d0m, const ProjPoint& d1m, const ProjPoint& d0p,
                   const ProjPoint& d1p);

}  // namespace zk
