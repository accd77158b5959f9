#pragma once

#include <string>
#include <vector>

#include "zk/projline.hpp"
#include "zk/ratfun.hpp"

namespace zk {

enum class BandType { plus, minus };

inline BandType other(BandType t) { return t == BandType::plus ? BandType::minus : BandType::plus; }

struct Band {
  Arc arc;
  BandType type;
  int id;  // persistent across transforms
};

// Disjoint closed bands listed in cyclic order, at least one of each type.
// Transition bands are the open arcs between cyclically consecutive bands;
// both bands and transitions carry persistent ids so that class index arrays
// keyed by transition id survive transforms.
class BandSystem {
 public:
  explicit BandSystem(std::vector<Band> bands);
  BandSystem(std::vector<Band> bands, std::vector<int> transition_ids);

  std::size_t size() const { return bands_.size(); }
  const Band& band(std::size_t pos) const { return bands_[pos]; }
  const std::vector<Band>& bands() const { return bands_; }

  // Open arc between band(pos) and band(pos+1); endpoints are band endpoints.
  Arc transition(std::size_t pos) const;
  int transition_id(std::size_t pos) const { return tids_[pos]; }
  std::size_t transition_pos(int tid) const;
  std::vector<int> transition_ids() const { return tids_; }
  BandType type_before(std::size_t tpos) const { return bands_[tpos].type; }
  BandType type_after(std::size_t tpos) const { return bands_[(tpos + 1) % size()].type; }

  bool contains(const ProjPoint& x, double eps = tol::point) const;
  bool has_infinite_endpoints() const;

  // Image system under m, ids carried; cyclic order re-established when m
  // reverses orientation.
  BandSystem transformed(const MobiusMap& m) const;

  // Structural findings (empty when the system is well formed).
  std::vector<std::string> validate() const;
  void ensure_valid() const;

 private:
  std::vector<Band> bands_;
  std::vector<int> tids_;
};

// The two value windows F- and F+ with the cyclic endpoint order
// d0(F-), d1(F-), d0(F+), d1(F+); each window is an arc of length < pi.
class ValueWindows {
 public:
  ValueWindows(const Arc& fminus, const Arc& fplus);

  const Arc& fminus() const { return fminus_; }
  const Arc& fplus() const { return fplus_; }
  const Arc& window(BandType t) const { return t == BandType::plus ? fplus_ : fminus_; }

  ProjPoint d0m() const { return fminus_.start(); }
  ProjPoint d1m() const { return fminus_.end(); }
  ProjPoint d0p() const { return fplus_.start(); }
  ProjPoint d1p() const { return fplus_.end(); }

  double kappa() const { return cross_ratio(d0m(), d1m(), d0p(), d1p()); }
  ValueWindows transformed(const MobiusMap& m) const;
  bool has_infinite_endpoints() const;

 private:
  Arc fminus_, fplus_;
};

// Symmetric windows F+- = +-[1 - mu, 1 + mu], 0 < mu < 1; kappa = mu^-2.
ValueWindows windows_from_mu(double mu);
// F+ = [-theta, theta], F- = [1/theta, -1/theta] through infinity,
// 0 < theta < 1; kappa = ((theta + 1/theta)/2)^2.
ValueWindows windows_from_theta(double theta);

// R(E+) in F+ and R(E-) in F-, checked per band from the exact phase range
// (endpoints plus interior stationary points) with slack eps.
bool membership(const BandSystem& e, const ValueWindows& f, const RealRational& r,
                double eps = tol::membership);

// Tightest windows containing the function's band values: the aligned lifted
// hull per band type, so the boundary is attained and kappa is maximal among
// all windows the function is a member of.  Raises errc::degenerate_image
// when a type's values spread over a half turn or collapse to a point.
ValueWindows hull_windows(const BandSystem& e, const RealRational& r);

// Lifted phase range of r over one band, and the aligned window interval it
// must sit in.  Exposed for the certifier and the solver.
struct BandImage {
  PhaseLift lift;
  double win_lo = 0.0;  // aligned window interval [win_lo, win_hi]
  double win_hi = 0.0;
  bool inside = false;
};

BandImage band_image(const Band& band, const ValueWindows& f, const RealRational& r,
                     double eps = tol::membership);

}  // namespace zk
