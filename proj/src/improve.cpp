#include "zk/improve.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "zk/achiezer.hpp"

namespace zk {
namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t z = a + 0x9e3779b97f4a7c15ULL * (b + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double arc_clearance(const Arc& a, const ProjPoint& x) {
  if (a.contains(x)) return 0.0;
  return std::min(fubini_study_distance(x, a.start()), fubini_study_distance(x, a.end()));
}

// Interior point of the arc at the fractional offset, stepped aside when the
// arc passes through infinity and the candidate lands too close to it; the
// returned point always has a finite coordinate.
ProjPoint place_in_arc(const Arc& arc, double frac) {
  static constexpr double kSteps[] = {0.0, -0.15, 0.15, -0.3, 0.3};
  const ProjPoint inf = ProjPoint::infinity();
  const bool wraps = arc.contains(inf);
  const double margin = std::min(0.02 * arc.length(), 0.01);
  for (double s : kSteps) {
    double f = std::clamp(frac + s, 0.05, 0.95);
    ProjPoint x = arc.point_at_offset(f * arc.length());
    if (!wraps || fubini_study_distance(x, inf) >= margin) return x;
  }
  fail(errc::precondition_violated, "no point clear of infinity inside an arc");
}

int sign_at(const Poly& l, const ProjPoint& x) {
  // Canonical points have q >= 0, so the homogeneous value keeps the sign of
  // l at x and stays meaningful at infinity.
  double v = l.eval_hom(x.p(), x.q(), l.degree());
  return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
}

// Rotation pulling a transition interior point to infinity, so the bands and
// their endpoints stay clear of it.  With attempt 0 and infinity already well
// inside a transition the identity is kept.
MobiusMap source_normalizer(const BandSystem& e, int attempt, double jitter) {
  const ProjPoint inf = ProjPoint::infinity();
  if (attempt == 0) {
    double dmin = kPi;
    for (const Band& b : e.bands()) dmin = std::min(dmin, arc_clearance(b.arc, inf));
    if (!e.contains(inf) && dmin >= 0.02) return MobiusMap::identity();
  }
  std::size_t longest = 0;
  double len = -1.0;
  for (std::size_t pos = 0; pos < e.size(); ++pos) {
    if (e.transition(pos).length() > len) {
      len = e.transition(pos).length();
      longest = pos;
    }
  }
  Arc t = e.transition(longest);
  ProjPoint x = t.point_at_offset(std::clamp(0.5 + jitter, 0.1, 0.9) * t.length());
  return MobiusMap::rotation(kPi / 2 - x.angle());
}

// Rotation keeping infinity clear of both value windows and the transformed
// value at infinity clear of zero and infinity, so both components of the
// normalized function hold full degree.
MobiusMap target_normalizer(const ValueWindows& f, const ProjPoint& vinf) {
  const ProjPoint inf = ProjPoint::infinity();
  const ProjPoint zero = ProjPoint::finite(0.0);
  double best_score = -1.0, best_psi = 0.0;
  for (int k = 0; k < 64; ++k) {
    double psi = k * kPi / 64.0;
    MobiusMap b = MobiusMap::rotation(psi);
    ProjPoint v = b(vinf);
    double score = std::min(std::min(arc_clearance(f.fminus().transformed(b), inf),
                                     arc_clearance(f.fplus().transformed(b), inf)),
                            std::min(fubini_study_distance(v, zero), fubini_study_distance(v, inf)));
    if (score > best_score) {
      best_score = score;
      best_psi = psi;
    }
  }
  if (best_score < 0.02)
    fail(errc::normalization_failed, "no rotation clears the window and anchor margins");
  return MobiusMap::rotation(best_psi);
}

}  // namespace

DeformationPlan plan_deformation(const RealRational& r, const Certificate& cert,
                                 const BandSystem& e, const ValueWindows& f,
                                 std::uint64_t jitter_seed) {
  if (cert.verdict == Verdict::optimal_certified)
    fail(errc::already_optimal, "the certificate is optimal; nothing to deform");
  if (cert.verdict == Verdict::infeasible_class)
    fail(errc::infeasible_class, "the target class is infeasible: " + cert.reason);
  e.ensure_valid();
  const ProjPoint inf = ProjPoint::infinity();
  if (e.contains(inf) || f.fminus().contains(inf) || f.fplus().contains(inf))
    fail(errc::precondition_violated, "deformation requires bands and windows away from infinity");
  if (r.num().degree() != r.den().degree())
    fail(errc::precondition_violated, "the value at infinity is not normalized");
  const int spread = cert.defect - cert.sigma;
  if (spread < 0 || spread % 2 != 0)
    fail(errc::precondition_violated, "defect minus flip count must be even and nonnegative");

  std::mt19937_64 rng(jitter_seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  const double amp = jitter_seed == 0 ? 0.0 : 0.1;

  DeformationPlan plan;
  std::vector<double> flips, extras;
  for (const auto& [tid, want] : cert.target.entries) {
    auto it = cert.observed.entries.find(tid);
    if (it == cert.observed.entries.end() || it->second.bin == want.bin) continue;
    ProjPoint x = place_in_arc(e.transition(e.transition_pos(tid)), 0.5 + amp * uni(rng));
    plan.flip_points.push_back(x);
    flips.push_back(x.value());
  }
  if (static_cast<int>(flips.size()) != cert.sigma)
    fail(errc::precondition_violated, "flip count disagrees with the certificate");

  // One extra sign change wherever the flips alone miss the parity the gap
  // needs; the gap holding infinity is left alone because crossing infinity
  // already flips the sign by the total degree, which works out to exactly
  // the missing parity once every finite gap is fixed.
  if (cert.extremals.size() >= 2) {
    for (const GapInfo& g : cert.gaps) {
      if (g.from < 0) continue;
      if ((g.delta_sigma & 1) == (g.odd ? 1 : 0)) continue;
      Arc gap(cert.extremals[g.from].x, cert.extremals[g.to].x);
      if (gap.contains(inf)) continue;
      extras.push_back(place_in_arc(gap, 0.5 + amp * uni(rng)).value());
    }
  }

  std::vector<double> all = flips;
  all.insert(all.end(), extras.begin(), extras.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (std::abs(all[i] - all[j]) <
          1e-7 * (1.0 + std::max(std::abs(all[i]), std::abs(all[j]))))
        fail(errc::precondition_violated, "two deformation zeros collided");

  Poly pi_part = Poly::from_roots(flips);
  Poly s_part = Poly::from_roots(extras);
  plan.L = mul(pi_part, s_part);
  if (!cert.extremals.empty()) {
    const ExtremalPoint& e0 = cert.extremals.front();
    int want0 = e0.parity == 0 ? 1 : -1;
    if (sign_at(plan.L, e0.x) != want0) {
      plan.L = scale(plan.L, -1.0);
      s_part = scale(s_part, -1.0);
    }
    for (const ExtremalPoint& ep : cert.extremals)
      if (sign_at(plan.L, ep.x) != (ep.parity == 0 ? 1 : -1))
        fail(errc::precondition_violated, "sign witness misses the parity at an extremal point");
  }

  plan.M = Poly::constant(1.0);
  const int pairs = spread / 2;
  for (int k = 0; k < pairs; ++k) {
    double c = -1.0 + 2.0 * (k + 1) / (pairs + 1) + 0.1 * amp * uni(rng);
    plan.M = mul(plan.M, Poly{c * c + 1.0, -2.0 * c, 1.0});
  }

  if (r.num().degree() == 0) {
    plan.p = scale(s_part, -0.5 / r.den()[0]);
    plan.q = scale(s_part, 0.5 / r.num()[0]);
  } else {
    AchiezerSolution sol = solve_achiezer(r.num(), r.den(), scale(s_part, -1.0));
    plan.p = sol.p;
    plan.q = sol.q;
  }
  if (plan.p.degree() > r.nominal_degree() || plan.q.degree() > r.nominal_degree())
    fail(errc::precondition_violated, "deformation direction exceeds the degree budget");
  return plan;
}

std::pair<RealRational, ValueWindows> apply_deformation(const RealRational& r,
                                                        DeformationPlan& plan,
                                                        const BandSystem& e,
                                                        const ValueWindows& f,
                                                        const IndexArray& target_class) {
  std::vector<double> flips;
  flips.reserve(plan.flip_points.size());
  for (const ProjPoint& x : plan.flip_points) flips.push_back(x.value());
  const Poly base = mul(plan.M, Poly::from_roots(flips));
  const Poly n0 = mul(base, r.num());
  const Poly d0 = mul(base, r.den());
  const int n = r.nominal_degree();
  const double kappa0 = f.kappa();

  // The hull cross ratio along the direction rises from kappa0 and falls off
  // once the step overshoots, so scan the halvings and keep the best passing
  // step instead of the first one; stop once further halving stops helping.
  std::string last = "no candidate evaluated";
  std::optional<std::pair<RealRational, ValueWindows>> best;
  double best_kappa = kappa0, best_tau = 0.0;
  int since_best = 0;
  double tau = 1e-2;
  for (int halve = 0; halve < 60 && since_best < 6; ++halve, tau *= 0.5) {
    if (best) ++since_best;
    try {
      RealRational r2(sub(n0, scale(plan.p, tau)), sub(d0, scale(plan.q, tau)), n);
      if (r2.reduced_common_roots() != 0) {
        last = "a common factor appeared";
        continue;
      }
      if (r2.actual_degree() != n) {
        last = "the degree dropped";
        continue;
      }
      ValueWindows f2 = hull_windows(e, r2);
      if (!(f2.kappa() > kappa0)) {
        last = "the cross ratio did not increase";
        continue;
      }
      if (!membership(e, f2, r2)) {
        last = "membership failed over the hull";
        continue;
      }
      if (hamming_distance(index_array(r2, e, f2), target_class, e) != 0) {
        last = "the class array moved off the target";
        continue;
      }
      if (f2.kappa() > best_kappa) {
        best_kappa = f2.kappa();
        best_tau = tau;
        best.emplace(std::move(r2), std::move(f2));
        since_best = 0;
      }
    } catch (const Error& err) {
      last = err.what();
    }
  }
  if (best) {
    plan.tau = best_tau;
    return std::move(*best);
  }
  fail(errc::step_not_found, "no acceptable step after 60 halvings: " + last);
}

ImproveResult improve_step(const RealRational& r, const BandSystem& e, const ValueWindows& f,
                           const IndexArray& target_class, std::uint64_t seed) {
  CertifyOptions opt;
  opt.target_class = target_class;
  Certificate cert = certify(r, e, f, opt);
  if (cert.verdict == Verdict::optimal_certified)
    fail(errc::already_optimal, "the member is already optimal in its class");
  if (cert.verdict == Verdict::infeasible_class) fail(errc::infeasible_class, cert.reason);

  std::mt19937_64 rng(mix(seed, 0x5eedULL));
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::string last = "no attempt ran";
  for (int attempt = 0; attempt < 6; ++attempt) {
    try {
      MobiusMap alpha = source_normalizer(e, attempt, attempt == 0 ? 0.0 : 0.2 * uni(rng));
      RealRational r_src = compose_source(r, alpha);
      ProjPoint vinf = r_src.eval(ProjPoint::infinity());
      double dmin = kPi;
      for (const ProjPoint& d : {f.d0m(), f.d1m(), f.d0p(), f.d1p()})
        dmin = std::min(dmin, fubini_study_distance(vinf, d));
      if (dmin < 1e-5)
        fail(errc::normalization_failed, "the value at infinity sits on the window boundary");
      MobiusMap beta = target_normalizer(f, vinf);

      BandSystem eh = e.transformed(alpha);
      ValueWindows fh = f.transformed(beta);
      RealRational rh = compose_target(r_src, beta);
      IndexArray ah = transport_class(target_class, e, alpha, beta);
      CertifyOptions opth;
      opth.target_class = ah;
      Certificate ch = certify(rh, eh, fh, opth);
      if (ch.verdict != Verdict::not_certified)
        fail(errc::precondition_violated, "the normalized certificate disagrees");

      std::uint64_t ps = attempt == 0 ? 0 : mix(seed, static_cast<std::uint64_t>(attempt));
      if (attempt != 0 && ps == 0) ps = attempt;
      DeformationPlan plan = plan_deformation(rh, ch, eh, fh, ps);
      auto [r2h, f2h] = apply_deformation(rh, plan, eh, fh, ah);

      RealRational r2 = compose_target(compose_source(r2h, alpha.inverse()), beta.inverse());
      ValueWindows f2 = f2h.transformed(beta.inverse());
      if (!membership(e, f2, r2))
        fail(errc::precondition_violated, "membership lost after undoing the normalization");
      if (hamming_distance(index_array(r2, e, f2), target_class, e) != 0)
        fail(errc::precondition_violated, "the class moved while undoing the normalization");
      const double gain = f2.kappa();
      if (!(gain > f.kappa())) fail(errc::precondition_violated, "the cross ratio gain vanished");
      return ImproveResult{std::move(r2), std::move(f2), std::move(plan),
                           f.kappa(),     gain,          attempt + 1};
    } catch (const Error& err) {
      if (err.code() == errc::already_optimal || err.code() == errc::infeasible_class) throw;
      last = err.what();
    }
  }
  fail(errc::step_not_found, "every deformation attempt failed: " + last);
}

}  // namespace zk
