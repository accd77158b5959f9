#pragma once

// Shared fixtures for the test suite: the cubic Chebyshev counterexample
// geometry and random problem generators.

#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "zk/bands.hpp"
#include "zk/ratfun.hpp"
#include "zk/stiefel.hpp"

namespace zktest {

constexpr double kPi = 3.14159265358979323846;

// T3(x) = 4x^3 - 3x as a rational function of nominal degree n.
inline zk::RealRational t3(int nominal = 3) {
  return zk::RealRational(zk::Poly{0, -3, 0, 4}, zk::Poly{1}, nominal);
}

// Band system on which T3 is the classical equiripple winner: the preimage of
// +-[1/2, 1].  Four bands, alternating minus/plus/minus/plus.
inline zk::BandSystem t3_bands() {
  using zk::Arc;
  using zk::Band;
  using zk::BandType;
  using zk::ProjPoint;
  double c1 = std::cos(kPi / 9), c5 = std::cos(5 * kPi / 9), c7 = std::cos(7 * kPi / 9);
  std::vector<Band> bands;
  bands.push_back({Arc(ProjPoint::finite(-1), ProjPoint::finite(-c1)), BandType::minus, 0});
  bands.push_back({Arc(ProjPoint::finite(c7), ProjPoint::finite(c5)), BandType::plus, 1});
  bands.push_back({Arc(ProjPoint::finite(-c5), ProjPoint::finite(-c7)), BandType::minus, 2});
  bands.push_back({Arc(ProjPoint::finite(c1), ProjPoint::finite(1)), BandType::plus, 3});
  return zk::BandSystem(std::move(bands));
}

// Same system with the left tip of the first band clipped to -0.99.
inline zk::BandSystem t3_bands_clipped() {
  using zk::Arc;
  using zk::Band;
  using zk::BandType;
  using zk::ProjPoint;
  double c1 = std::cos(kPi / 9), c5 = std::cos(5 * kPi / 9), c7 = std::cos(7 * kPi / 9);
  std::vector<Band> bands;
  bands.push_back({Arc(ProjPoint::finite(-0.99), ProjPoint::finite(-c1)), BandType::minus, 0});
  bands.push_back({Arc(ProjPoint::finite(c7), ProjPoint::finite(c5)), BandType::plus, 1});
  bands.push_back({Arc(ProjPoint::finite(-c5), ProjPoint::finite(-c7)), BandType::minus, 2});
  bands.push_back({Arc(ProjPoint::finite(c1), ProjPoint::finite(1)), BandType::plus, 3});
  return zk::BandSystem(std::move(bands));
}

// Value windows filled by T3 on t3_bands(): F- = [-1, -1/2], F+ = [1/2, 1].
// Equivalent to the mu = 1/3 symmetric form up to scaling; kappa = 9.
inline zk::ValueWindows t3_windows() {
  return zk::ValueWindows(
      zk::Arc(zk::ProjPoint::finite(-1.0), zk::ProjPoint::finite(-0.5)),
      zk::Arc(zk::ProjPoint::finite(0.5), zk::ProjPoint::finite(1.0)));
}

// The ten alternation points -cos(j pi / 9), j = 0..9, in increasing order.
inline std::vector<double> t3_alternation_points() {
  std::vector<double> xs;
  for (int j = 0; j <= 9; ++j) xs.push_back(-std::cos(j * kPi / 9));
  return xs;
}

struct RandomProblem {
  zk::BandSystem bands;
  zk::ValueWindows windows;
  zk::RealRational r;
  RandomProblem(zk::BandSystem e, zk::ValueWindows f, zk::RealRational fn)
      : bands(std::move(e)), windows(std::move(f)), r(std::move(fn)) {}
};

// Smallest arc containing all given angle intervals (each as lifted
// [lo, hi] with hi - lo < pi), or nullopt when they do not fit a half turn.
inline std::optional<std::pair<double, double>> enclosing_interval(
    const std::vector<std::pair<double, double>>& ivs) {
  auto mod_pi = [](double x) {
    double r = std::fmod(x, kPi);
    return r < 0 ? r + kPi : r;
  };
  double best_len = 2 * kPi;
  std::pair<double, double> best{0, 0};
  for (const auto& anchor : ivs) {
    double lo = 0.0, hi = 0.0;  // relative to anchor.first
    bool ok = true;
    for (const auto& iv : ivs) {
      double s = mod_pi(iv.first - anchor.first);
      double e = s + (iv.second - iv.first);
      lo = std::min(lo, s);
      hi = std::max(hi, e);
      if (!(hi - lo < kPi)) {
        ok = false;
        break;
      }
    }
    if (ok && hi - lo < best_len) {
      best_len = hi - lo;
      best = {anchor.first + lo, anchor.first + hi};
    }
  }
  if (best_len >= kPi) return std::nullopt;
  return best;
}

// Random band system with m in [2,5] disjoint arcs and both types present.
inline zk::BandSystem random_bands(std::mt19937_64& rng) {
  using zk::Arc;
  using zk::Band;
  using zk::BandType;
  using zk::ProjPoint;
  std::uniform_real_distribution<double> U(0.0, 1.0);
  while (true) {
    int m = 2 + static_cast<int>(rng() % 4);
    std::vector<double> cuts;
    for (int i = 0; i < 2 * m; ++i) cuts.push_back(U(rng) * kPi);
    std::sort(cuts.begin(), cuts.end());
    double minsep = kPi;
    for (int i = 0; i < 2 * m; ++i) {
      double next = (i + 1 < 2 * m) ? cuts[i + 1] : cuts[0] + kPi;
      minsep = std::min(minsep, next - cuts[i]);
    }
    if (minsep < 0.05) continue;
    std::vector<Band> bands;
    bool has_plus = false, has_minus = false;
    for (int i = 0; i < m; ++i) {
      BandType t = (rng() % 2) ? BandType::plus : BandType::minus;
      if (i == m - 1 && !has_plus && t == BandType::minus) t = BandType::plus;
      if (i == m - 1 && !has_minus && t == BandType::plus && has_plus) t = BandType::minus;
      (t == BandType::plus ? has_plus : has_minus) = true;
      bands.push_back({Arc(ProjPoint::from_angle(cuts[2 * i]), ProjPoint::from_angle(cuts[2 * i + 1])),
                       t, i});
    }
    if (!has_plus || !has_minus) continue;
    return zk::BandSystem(std::move(bands));
  }
}

// Random rational function of degree <= maxdeg over e whose plus/minus band
// images fit in disjoint windows; windows are the padded image hulls.
inline std::optional<RandomProblem> random_member(std::mt19937_64& rng, int maxdeg,
                                                  int attempts = 200) {
  using namespace zk;
  std::normal_distribution<double> N(0.0, 1.0);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int a = 0; a < attempts; ++a) {
    BandSystem e = random_bands(rng);
    int deg = 1 + static_cast<int>(rng() % maxdeg);
    std::vector<double> pc(deg + 1), qc(deg + 1);
    for (double& v : pc) v = N(rng);
    for (double& v : qc) v = N(rng);
    RealRational r(Poly(pc), Poly(qc), deg);
    if (r.actual_degree() < 1) continue;

    std::vector<std::pair<double, double>> plus_iv, minus_iv;
    bool bad = false;
    try {
      for (const Band& b : e.bands()) {
        PhaseLift lift = trace_phase(r, b.arc);
        auto& dst = (b.type == BandType::plus) ? plus_iv : minus_iv;
        dst.push_back({lift.phi_min, lift.phi_max});
      }
    } catch (const Error&) {
      bad = true;
    }
    if (bad) continue;
    auto hp = enclosing_interval(plus_iv);
    auto hm = enclosing_interval(minus_iv);
    if (!hp || !hm) continue;
    // Pad each hull and check the four endpoints stay cyclically ordered
    // with genuine gaps.
    auto mod_pi = [](double x) {
      double r2 = std::fmod(x, kPi);
      return r2 < 0 ? r2 + kPi : r2;
    };
    double g1 = mod_pi(hp->first - hm->second);   // minus end -> plus start
    double g2 = mod_pi(hm->first - hp->second);   // plus end -> minus start
    if (g1 < 0.02 || g2 < 0.02) continue;
    if ((hp->second - hp->first) + (hm->second - hm->first) + g1 + g2 > kPi + 1e-9) continue;
    double pad1 = (0.1 + 0.3 * U(rng)) * g1;
    double pad2 = (0.1 + 0.3 * U(rng)) * g2;
    try {
      ValueWindows f(
          Arc(ProjPoint::from_angle(hm->first - pad2), ProjPoint::from_angle(hm->second + pad1)),
          Arc(ProjPoint::from_angle(hp->first - pad1), ProjPoint::from_angle(hp->second + pad2)));
      if (!membership(e, f, r)) continue;
      return RandomProblem(std::move(e), std::move(f), std::move(r));
    } catch (const Error&) {
      continue;
    }
  }
  return std::nullopt;
}

// Exact per-type joint image hulls of the given functions over e, as value
// windows with no padding, so the window boundary is attained and the
// extremal set of the hull-defining function is nonempty.  nullopt when the
// hulls collide or a phase trace fails.
inline std::optional<zk::ValueWindows> tight_windows(
    const zk::BandSystem& e, const std::vector<const zk::RealRational*>& rs) {
  using namespace zk;
  std::vector<std::pair<double, double>> plus_iv, minus_iv;
  try {
    for (const Band& b : e.bands()) {
      for (const RealRational* r : rs) {
        PhaseLift lift = trace_phase(*r, b.arc);
        auto& dst = (b.type == BandType::plus) ? plus_iv : minus_iv;
        dst.push_back({lift.phi_min, lift.phi_max});
      }
    }
  } catch (const Error&) {
    return std::nullopt;
  }
  auto hp = enclosing_interval(plus_iv);
  auto hm = enclosing_interval(minus_iv);
  if (!hp || !hm) return std::nullopt;
  auto mod_pi = [](double x) {
    double m = std::fmod(x, kPi);
    return m < 0 ? m + kPi : m;
  };
  double g1 = mod_pi(hp->first - hm->second);
  double g2 = mod_pi(hm->first - hp->second);
  if (g1 < 1e-3 || g2 < 1e-3) return std::nullopt;
  if ((hp->second - hp->first) + (hm->second - hm->first) + g1 + g2 > kPi + 1e-9) {
    return std::nullopt;
  }
  try {
    ValueWindows f(
        Arc(ProjPoint::from_angle(hm->first), ProjPoint::from_angle(hm->second)),
        Arc(ProjPoint::from_angle(hp->first), ProjPoint::from_angle(hp->second)));
    for (const RealRational* r : rs) {
      if (!membership(e, f, *r)) return std::nullopt;
    }
    return f;
  } catch (const Error&) {
    return std::nullopt;
  }
}

inline std::optional<zk::ValueWindows> tight_windows(const zk::BandSystem& e,
                                                     const zk::RealRational& r) {
  return tight_windows(e, std::vector<const zk::RealRational*>{&r});
}

// Random orientation-preserving or reversing Mobius map with a healthy
// determinant.
inline zk::MobiusMap random_mobius(std::mt19937_64& rng) {
  std::normal_distribution<double> N(0.0, 1.0);
  while (true) {
    double a = N(rng), b = N(rng), c = N(rng), d = N(rng);
    double det = a * d - b * c;
    double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
    if (std::abs(det) > 0.1 * scale * scale) return zk::MobiusMap(a, b, c, d);
  }
}

}  // namespace zktest
