#include "zk/projline.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace zk {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Reduce into [0, pi).
double mod_pi(double x) {
  double r = std::fmod(x, kPi);
  if (r < 0) r += kPi;
  if (r >= kPi) r = 0.0;  // fmod rounding at the seam
  return r;
}

}  // namespace

ProjPoint::ProjPoint(double p, double q) {
  if (!std::isfinite(p) || !std::isfinite(q)) {
    fail(errc::indeterminate_value, "non-finite homogeneous coordinates");
  }
  double n = std::hypot(p, q);
  if (n == 0.0) fail(errc::indeterminate_value, "homogeneous pair (0, 0)");
  p /= n;
  q /= n;
  if (q < 0.0 || (q == 0.0 && p < 0.0)) {
    p = -p;
    q = -q;
  }
  p_ = p;
  q_ = q;
}

double ProjPoint::value() const {
  if (q_ == 0.0) return std::numeric_limits<double>::infinity();
  return p_ / q_;
}

double ProjPoint::angle() const { return mod_pi(std::atan2(p_, q_)); }

std::string ProjPoint::str() const {
  std::ostringstream os;
  if (is_infinite())
    os << "inf";
  else
    os << value();
  return os.str();
}

double det2(const ProjPoint& a, const ProjPoint& b) { return a.p() * b.q() - a.q() * b.p(); }

double fubini_study_distance(const ProjPoint& a, const ProjPoint& b) {
  double d = mod_pi(a.angle() - b.angle());
  return std::min(d, kPi - d);
}

bool almost_equal(const ProjPoint& a, const ProjPoint& b, double eps) {
  return fubini_study_distance(a, b) <= eps;
}

bool cyclic_position(const ProjPoint& a, const ProjPoint& b, const ProjPoint& c) {
  if (almost_equal(a, b) || almost_equal(b, c) || almost_equal(a, c)) {
    fail(errc::coincident_points, "cyclic_position requires distinct points");
  }
  double db = mod_pi(b.angle() - a.angle());
  double dc = mod_pi(c.angle() - a.angle());
  return db < dc;
}

MobiusMap::MobiusMap(double a, double b, double c, double d) : a_(a), b_(b), c_(c), d_(d) {
  double n = std::max(std::max(std::abs(a_), std::abs(b_)), std::max(std::abs(c_), std::abs(d_)));
  if (!(n > 0.0) || !std::isfinite(n)) fail(errc::degenerate_image, "invalid map entries");
  a_ /= n;
  b_ /= n;
  c_ /= n;
  d_ /= n;
  if (std::abs(det()) <= tol::mobius_det) {
    fail(errc::degenerate_image, "Mobius map determinant vanishes");
  }
}

MobiusMap MobiusMap::rotation(double theta) {
  return MobiusMap(std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta));
}

ProjPoint MobiusMap::operator()(const ProjPoint& x) const {
  return ProjPoint(a_ * x.p() + b_ * x.q(), c_ * x.p() + d_ * x.q());
}

MobiusMap MobiusMap::inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

MobiusMap MobiusMap::compose(const MobiusMap& m) const {
  return MobiusMap(a_ * m.a() + b_ * m.c(), a_ * m.b() + b_ * m.d(), c_ * m.a() + d_ * m.c(),
                   c_ * m.b() + d_ * m.d());
}

Arc::Arc(const ProjPoint& start, const ProjPoint& end) : start_(start), end_(end) {
  if (almost_equal(start, end)) fail(errc::coincident_points, "degenerate arc");
  length_ = mod_pi(end.angle() - start.angle());
  if (length_ == 0.0) length_ = kPi;  // guards the mod seam; cannot really happen
}

double Arc::offset_of(const ProjPoint& x) const { return mod_pi(x.angle() - start_.angle()); }

bool Arc::contains(const ProjPoint& x, double eps) const {
  double d = offset_of(x);
  return d <= length_ + eps || d >= kPi - eps;
}

ProjPoint Arc::point_at_offset(double s) const { return ProjPoint::from_angle(start_.angle() + s); }

Arc Arc::transformed(const MobiusMap& m) const {
  if (m.orientation_preserving()) return Arc(m(start_), m(end_));
  return Arc(m(end_), m(start_));
}

double cross_ratio(const ProjPoint& d0m, const ProjPoint& d1m, const ProjPoint& d0p,
                   const ProjPoint& d1p) {
  const ProjPoint* pts[4] = {&d0m, &d1m, &d0p, &d1p};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (almost_equal(*pts[i], *pts[j])) {
        fail(errc::degenerate_windows, "coincident window endpoints");
      }
    }
  }
  double num = det2(d1p, d1m) * det2(d0m, d0p);
  double den = det2(d1p, d0p) * det2(d0m, d1m);
  if (den == 0.0) fail(errc::degenerate_windows, "cross ratio denominator vanishes");
  return num / den;
}

}  // namespace zk
