#include "zk/bands.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "zk/error.hpp"

namespace zk {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

BandSystem::BandSystem(std::vector<Band> bands) : bands_(std::move(bands)) {
  tids_.resize(bands_.size());
  for (std::size_t i = 0; i < bands_.size(); ++i) tids_[i] = static_cast<int>(i);
}

BandSystem::BandSystem(std::vector<Band> bands, std::vector<int> transition_ids)
    : bands_(std::move(bands)), tids_(std::move(transition_ids)) {
  if (tids_.size() != bands_.size()) {
    fail(errc::invalid_band_system, "transition id list size mismatch");
  }
}

Arc BandSystem::transition(std::size_t pos) const {
  const Band& a = bands_[pos];
  const Band& b = bands_[(pos + 1) % bands_.size()];
  return Arc(a.arc.end(), b.arc.start());
}

std::size_t BandSystem::transition_pos(int tid) const {
  for (std::size_t i = 0; i < tids_.size(); ++i) {
    if (tids_[i] == tid) return i;
  }
  fail(errc::out_of_range, "unknown transition id");
}

bool BandSystem::contains(const ProjPoint& x, double eps) const {
  for (const Band& b : bands_) {
    if (b.arc.contains(x, eps)) return true;
  }
  return false;
}

bool BandSystem::has_infinite_endpoints() const {
  for (const Band& b : bands_) {
    if (b.arc.start().is_infinite() || b.arc.end().is_infinite()) return true;
  }
  return false;
}

BandSystem BandSystem::transformed(const MobiusMap& m) const {
  std::size_t n = bands_.size();
  std::vector<Band> nb;
  std::vector<int> nt;
  nb.reserve(n);
  nt.reserve(n);
  if (m.orientation_preserving()) {
    for (std::size_t i = 0; i < n; ++i) {
      nb.push_back(Band{bands_[i].arc.transformed(m), bands_[i].type, bands_[i].id});
      nt.push_back(tids_[i]);
    }
  } else {
    // Reversal flips the cyclic order; transition between old positions
    // (i, i+1) becomes the transition after new position n-2-i.
    for (std::size_t j = 0; j < n; ++j) {
      const Band& src = bands_[n - 1 - j];
      nb.push_back(Band{src.arc.transformed(m), src.type, src.id});
      nt.push_back(tids_[(2 * n - 2 - j) % n]);
    }
  }
  return BandSystem(std::move(nb), std::move(nt));
}

std::vector<std::string> BandSystem::validate() const {
  std::vector<std::string> findings;
  if (bands_.size() < 2) {
    findings.push_back("band system needs at least two bands");
    return findings;
  }
  bool has_plus = false, has_minus = false;
  for (const Band& b : bands_) {
    (b.type == BandType::plus ? has_plus : has_minus) = true;
  }
  if (!has_plus) findings.push_back("no pass (plus) band present");
  if (!has_minus) findings.push_back("no stop (minus) band present");

  // Cyclic order and disjointness: walk offsets from the first band's start.
  double base = bands_[0].arc.start().angle();
  double prev_end = 0.0;
  for (std::size_t i = 0; i < bands_.size(); ++i) {
    double lo = std::fmod(bands_[i].arc.start().angle() - base + 2 * kPi, kPi);
    if (i == 0) lo = 0.0;
    double hi = lo + bands_[i].arc.length();
    if (i > 0 && lo <= prev_end + tol::point) {
      std::ostringstream os;
      os << "band " << bands_[i].id << " overlaps or touches its predecessor";
      findings.push_back(os.str());
    }
    if (hi >= kPi - tol::point && i + 1 < bands_.size()) {
      std::ostringstream os;
      os << "band " << bands_[i].id << " wraps past the first band";
      findings.push_back(os.str());
    }
    prev_end = hi;
  }
  if (prev_end >= kPi - tol::point) {
    findings.push_back("last band leaves no transition before the first band");
  }
  return findings;
}

void BandSystem::ensure_valid() const {
  std::vector<std::string> findings = validate();
  if (!findings.empty()) fail(errc::invalid_band_system, findings.front());
}

ValueWindows::ValueWindows(const Arc& fminus, const Arc& fplus)
    : fminus_(fminus), fplus_(fplus) {
  const ProjPoint pts[4] = {d0m(), d1m(), d0p(), d1p()};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      if (almost_equal(pts[i], pts[j])) {
        fail(errc::degenerate_windows, "window endpoints coincide");
      }
    }
  }
  if (!cyclic_position(d0m(), d1m(), d0p()) || !cyclic_position(d1m(), d0p(), d1p()) ||
      !cyclic_position(d0p(), d1p(), d0m())) {
    fail(errc::degenerate_windows, "window endpoints out of cyclic order");
  }
}

ValueWindows ValueWindows::transformed(const MobiusMap& m) const {
  return ValueWindows(fminus_.transformed(m), fplus_.transformed(m));
}

bool ValueWindows::has_infinite_endpoints() const {
  return d0m().is_infinite() || d1m().is_infinite() || d0p().is_infinite() ||
         d1p().is_infinite();
}

ValueWindows windows_from_mu(double mu) {
  if (!(mu > 0.0) || !(mu < 1.0)) fail(errc::degenerate_windows, "mu must lie in (0, 1)");
  return ValueWindows(Arc(ProjPoint::finite(-1 - mu), ProjPoint::finite(-1 + mu)),
                      Arc(ProjPoint::finite(1 - mu), ProjPoint::finite(1 + mu)));
}

ValueWindows windows_from_theta(double theta) {
  if (!(theta > 0.0) || !(theta < 1.0)) {
    fail(errc::degenerate_windows, "theta must lie in (0, 1)");
  }
  return ValueWindows(Arc(ProjPoint::finite(1 / theta), ProjPoint::finite(-1 / theta)),
                      Arc(ProjPoint::finite(-theta), ProjPoint::finite(theta)));
}

BandImage band_image(const Band& band, const ValueWindows& f, const RealRational& r, double eps) {
  BandImage img{trace_phase(r, band.arc)};
  const Arc& w = f.window(band.type);
  double w_lo = w.start().angle();
  double w_len = w.length();
  double mid = 0.5 * (img.lift.phi_min + img.lift.phi_max);
  double k = std::round((mid - (w_lo + 0.5 * w_len)) / kPi);
  img.inside = false;
  for (double kk : {k - 1, k, k + 1}) {
    double lo = w_lo + kk * kPi;
    if (img.lift.phi_min >= lo - eps && img.lift.phi_max <= lo + w_len + eps) {
      img.win_lo = lo;
      img.win_hi = lo + w_len;
      img.inside = true;
      break;
    }
  }
  if (!img.inside) {
    // Still report the best-aligned interval for diagnostics.
    img.win_lo = w_lo + k * kPi;
    img.win_hi = img.win_lo + w_len;
  }
  return img;
}

bool membership(const BandSystem& e, const ValueWindows& f, const RealRational& r, double eps) {
  for (const Band& b : e.bands()) {
    if (!band_image(b, f, r, eps).inside) return false;
  }
  return true;
}

ValueWindows hull_windows(const BandSystem& e, const RealRational& r) {
  bool have[2] = {false, false};
  double lo[2] = {0, 0}, hi[2] = {0, 0};
  for (const Band& b : e.bands()) {
    PhaseLift lift = trace_phase(r, b.arc);
    int t = b.type == BandType::plus ? 1 : 0;
    if (!have[t]) {
      lo[t] = lift.phi_min;
      hi[t] = lift.phi_max;
      have[t] = true;
    } else {
      // Align this band's range with the accumulated hull modulo half turns.
      double k = std::round((0.5 * (lo[t] + hi[t]) - 0.5 * (lift.phi_min + lift.phi_max)) / kPi);
      lo[t] = std::min(lo[t], lift.phi_min + k * kPi);
      hi[t] = std::max(hi[t], lift.phi_max + k * kPi);
    }
  }
  for (int t : {0, 1}) {
    if (!have[t]) fail(errc::invalid_band_system, "a band type is missing");
    if (hi[t] - lo[t] >= kPi - tol::point) {
      fail(errc::degenerate_image, "band values spread over a half turn");
    }
    if (hi[t] - lo[t] <= tol::point) {
      fail(errc::degenerate_image, "band values collapse to a point");
    }
  }
  return ValueWindows(Arc(ProjPoint::from_angle(lo[0]), ProjPoint::from_angle(hi[0])),
                      Arc(ProjPoint::from_angle(lo[1]), ProjPoint::from_angle(hi[1])));
}

}  // namespace zk
