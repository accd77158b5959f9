#include "zk/certify.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace zk {

namespace {

// Candidate source points that can carry a band onto the window boundary:
// the band endpoints, interior stationary points of the phase, the point at
// infinity when the band holds it, and the exact solutions of r(x) = c for
// both window endpoints c.
std::vector<ProjPoint> band_candidates(const RealRational& r, const Band& band,
                                       const ValueWindows& f) {
  std::vector<ProjPoint> cand;
  cand.push_back(band.arc.start());
  cand.push_back(band.arc.end());
  if (band.arc.contains(ProjPoint::infinity())) cand.push_back(ProjPoint::infinity());
  for (const RealRoot& root : real_roots(r.wronskian())) {
    ProjPoint x = ProjPoint::finite(root.x);
    if (band.arc.contains(x)) cand.push_back(x);
  }
  if (!r.is_constant()) {
    const Arc& w = f.window(band.type);
    for (const ProjPoint& c : {w.start(), w.end()}) {
      for (const BoundarySolution& sol : boundary_solutions(r, c, band.arc)) {
        cand.push_back(sol.x);
      }
    }
  }
  // Candidates jittered just before the arc start wrap to offsets near pi;
  // fold them back so duplicates of the start stay adjacent for the dedup.
  constexpr double pi = 3.14159265358979323846;
  double cut = (band.arc.length() + pi) / 2;
  auto key = [&](const ProjPoint& x) {
    double off = band.arc.offset_of(x);
    return off > cut ? off - pi : off;
  };
  std::sort(cand.begin(), cand.end(),
            [&](const ProjPoint& a, const ProjPoint& b) { return key(a) < key(b); });
  return cand;
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::optimal_certified: return "optimal_certified";
    case Verdict::not_certified: return "not_certified";
    case Verdict::infeasible_class: return "infeasible_class";
  }
  return "unknown";
}

std::vector<ExtremalPoint> extremal_points(const RealRational& r, const BandSystem& e,
                                           const ValueWindows& f, const CertifyOptions& opt) {
  e.ensure_valid();
  if (!membership(e, f, r, opt.eps_mem)) {
    fail(errc::membership_violated, "the function leaves its value windows on the bands");
  }
  std::vector<ExtremalPoint> out;
  for (std::size_t pos = 0; pos < e.size(); ++pos) {
    const Band& band = e.band(pos);
    const Arc& w = f.window(band.type);
    for (const ProjPoint& x : band_candidates(r, band, f)) {
      ProjPoint v = r.eval(x);
      double d0 = fubini_study_distance(v, w.start());
      double d1 = fubini_study_distance(v, w.end());
      ExtremalPoint ep;
      ep.x = x;
      ep.band_pos = static_cast<int>(pos);
      ep.band_id = band.id;
      ep.parity = (d1 < d0) ? 1 : 0;
      ep.band_type = band.type;
      ep.deviation = std::min(d0, d1);
      if (ep.deviation > opt.eps_ext) continue;
      if (!out.empty() && out.back().band_pos == ep.band_pos &&
          fubini_study_distance(out.back().x, ep.x) <= opt.merge_eps) {
        if (ep.deviation < out.back().deviation) out.back() = ep;
        continue;
      }
      out.push_back(ep);
    }
  }
  return out;
}

int malozemov_count(const std::vector<ExtremalPoint>& ext) {
  if (ext.empty()) return 0;
  std::vector<const ExtremalPoint*> linear;
  linear.reserve(ext.size());
  for (const ExtremalPoint& ep : ext) linear.push_back(&ep);
  std::stable_sort(linear.begin(), linear.end(), [](const ExtremalPoint* a, const ExtremalPoint* b) {
    return a->x.value() < b->x.value();
  });
  int blocks = 1;
  for (std::size_t i = 1; i < linear.size(); ++i) {
    if (linear[i]->parity != linear[i - 1]->parity) ++blocks;
  }
  return blocks;
}

CertificateCore Certificate::core() const {
  return CertificateCore{verdict, alternation, sigma0,         sigma1, sigma,
                         defect,  nominal_degree, actual_degree, rhs};
}

std::vector<std::string> Certificate::invariant_findings() const {
  std::vector<std::string> bad;
  if (alternation % 2 != 0) bad.push_back("odd cyclic alternation count");
  std::set<int> seen;
  std::size_t covered = 0;
  for (const GapInfo& g : gaps) {
    covered += g.transitions.size();
    seen.insert(g.transitions.begin(), g.transitions.end());
  }
  if (covered != seen.size() || seen.size() != observed.entries.size()) {
    bad.push_back("gaps do not carry each transition exactly once");
  }
  if (verdict == Verdict::infeasible_class) return bad;
  if (rhs % 2 != 0) bad.push_back("odd certificate threshold");
  if ((defect + sigma0 + sigma1) % 2 != 0) bad.push_back("defect parity broken against gap sums");
  if ((sigma + defect) % 2 != 0) bad.push_back("binary distance parity differs from the defect");
  if (sigma > defect) bad.push_back("binary distance exceeds the defect");
  if ((sigma0 + sigma1) % 2 != sigma % 2) {
    bad.push_back("gap defect parities inconsistent with the binary distance");
  }
  return bad;
}

Certificate certify(const RealRational& r, const BandSystem& e, const ValueWindows& f,
                    const CertifyOptions& opt) {
  e.ensure_valid();
  Certificate cert;
  cert.kappa = f.kappa();
  cert.nominal_degree = r.nominal_degree();
  cert.actual_degree = r.actual_degree();
  cert.defect = r.defect();
  cert.eps_ext = opt.eps_ext;

  cert.extremals = extremal_points(r, e, f, opt);
  cert.malozemov = malozemov_count(cert.extremals);

  cert.observed = index_array(r, e, f, AnchorConvention::canonical);
  cert.target = opt.target_class ? with_convention(*opt.target_class, e, AnchorConvention::canonical)
                                 : cert.observed;
  cert.sigma = hamming_distance(cert.observed, cert.target, e);

  // Gap assembly.  Extremal points live in closed bands, transitions are the
  // open arcs between bands, so each transition falls in exactly one gap.
  const int k = static_cast<int>(cert.extremals.size());
  auto defect_bit = [&](std::size_t tpos) {
    int tid = e.transition_id(tpos);
    return (cert.observed.entries.at(tid).bin ^ cert.target.entries.at(tid).bin) & 1;
  };
  if (k >= 2) {
    for (int i = 0; i < k; ++i) {
      const ExtremalPoint& a = cert.extremals[i];
      const ExtremalPoint& b = cert.extremals[(i + 1) % k];
      GapInfo g;
      g.from = i;
      g.to = (i + 1) % k;
      g.odd = a.parity != b.parity;
      for (std::size_t tpos = 0; tpos < e.size(); ++tpos) {
        if (cyclic_position(a.x, e.transition(tpos).midpoint(), b.x)) {
          g.transitions.push_back(e.transition_id(tpos));
          g.delta_sigma ^= defect_bit(tpos);
        }
      }
      cert.gaps.push_back(std::move(g));
    }
  } else {
    // Zero or one extremal point: a single degenerate even gap holds every
    // transition and the criterion cannot be met.
    GapInfo g;
    if (k == 1) g.from = g.to = 0;
    for (std::size_t tpos = 0; tpos < e.size(); ++tpos) {
      g.transitions.push_back(e.transition_id(tpos));
      g.delta_sigma ^= defect_bit(tpos);
    }
    cert.gaps.push_back(std::move(g));
  }
  for (const GapInfo& g : cert.gaps) {
    if (g.odd) {
      ++cert.alternation;
      cert.sigma1 += g.delta_sigma;
    } else {
      cert.sigma0 += g.delta_sigma;
    }
  }
  cert.rhs = cert.nominal_degree + 2 + cert.actual_degree - cert.sigma0 + cert.sigma1;

  bool attained[2][2] = {{false, false}, {false, false}};
  for (const ExtremalPoint& ep : cert.extremals) {
    attained[ep.band_type == BandType::plus ? 1 : 0][ep.parity] = true;
  }
  cert.window_attained =
      attained[0][0] && attained[0][1] && attained[1][0] && attained[1][1];

  if (cert.target.binary_sum_mod2() != cert.nominal_degree % 2) {
    cert.verdict = Verdict::infeasible_class;
    cert.reason = "empty class: binary sum parity differs from the degree parity";
    return cert;
  }
  if (cert.sigma > cert.defect) {
    cert.verdict = Verdict::infeasible_class;
    cert.reason = "not in the class closure: binary distance exceeds the defect";
    return cert;
  }
  if (cert.alternation >= cert.rhs) {
    cert.verdict = Verdict::optimal_certified;
  } else {
    cert.verdict = Verdict::not_certified;
    cert.reason = cert.extremals.empty()
                      ? "interior slack: the value windows can be squeezed"
                      : "cyclic alternation count below the required threshold";
  }
  return cert;
}

bool coincidence_parity_check(const RealRational& r, const RealRational& r2,
                              const ExtremalPoint& e1, const ExtremalPoint& e2,
                              const BandSystem& e, const ValueWindows& f) {
  for (const ProjPoint& x : {e1.x, e2.x}) {
    if (fubini_study_distance(r.eval(x), r2.eval(x)) <= tol::point) {
      fail(errc::value_coincidence_at_endpoint, "the two functions meet at an endpoint");
    }
  }
  Poly d = sub(mul(r.num(), r2.den()), mul(r.den(), r2.num()));
  if (d.is_zero()) {
    fail(errc::value_coincidence_at_endpoint, "the two functions coincide identically");
  }
  Arc seg(e1.x, e2.x);
  long count = 0;
  for (const RealRoot& root : real_roots(d)) {
    if (seg.contains(ProjPoint::finite(root.x))) count += root.multiplicity;
  }
  int full = r.actual_degree() + r2.actual_degree();
  if (seg.contains(ProjPoint::infinity())) count += full - d.degree();

  long parity = e1.parity + e2.parity;
  for (std::size_t tpos = 0; tpos < e.size(); ++tpos) {
    ProjPoint mid = e.transition(tpos).midpoint();
    if (cyclic_position(e1.x, mid, e2.x)) {
      parity += transition_index(r, e, tpos, f).bin;
      parity += transition_index(r2, e, tpos, f).bin;
    }
  }
  return (count % 2) == (parity % 2);
}

}  // namespace zk
