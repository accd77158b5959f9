#include "zk/ratfun.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "zk/error.hpp"
#include "zk/tolerances.hpp"

namespace zk {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

// Deflate one real root (exact synthetic division).
Poly deflate_real(const Poly& p, double r) {
  int n = p.degree();
  std::vector<double> out(n, 0.0);
  double carry = p[n];
  for (int k = n - 1; k >= 0; --k) {
    out[k] = carry;
    carry = p[k] + carry * r;
  }
  return Poly(std::move(out));
}

// Deflate a conjugate pair via the real quadratic x^2 - 2 re x + |z|^2.
Poly deflate_pair(const Poly& p, cplx z) {
  Poly quad{z.real() * z.real() + z.imag() * z.imag(), -2.0 * z.real(), 1.0};
  return divmod(p, quad).first;
}

}  // namespace

RealRational::RealRational(Poly num, Poly den, int nominal_degree) : nominal_(nominal_degree) {
  // Joint trim: negligible relative to the larger of the two scales.
  double jscale = std::max(num.max_abs_coef(), den.max_abs_coef());
  if (jscale == 0.0) fail(errc::indeterminate_value, "zero rational function pair");
  num.trim(1e-13 * jscale / std::max(num.max_abs_coef(), 1e-300));
  den.trim(1e-13 * jscale / std::max(den.max_abs_coef(), 1e-300));
  if (num.is_zero() && den.is_zero()) fail(errc::indeterminate_value, "zero rational pair");

  // Cancel approximately common roots.  Only roots in the closed upper half
  // plane are inspected; conjugate pairs are deflated together.
  if (num.degree() > 0 && den.degree() > 0) {
    bool changed = true;
    while (changed && num.degree() > 0 && den.degree() > 0) {
      changed = false;
      std::vector<cplx> rp = poly_roots(num);
      std::vector<cplx> rq = poly_roots(den);
      for (const cplx& a : rp) {
        if (a.imag() < -tol::root) continue;
        for (const cplx& b : rq) {
          if (b.imag() < -tol::root) continue;
          if (std::abs(a - b) <= tol::root * std::max(1.0, std::abs(a))) {
            bool realroot = std::abs(a.imag()) <= tol::root * std::max(1.0, std::abs(a.real()));
            if (realroot) {
              num = deflate_real(num, a.real());
              den = deflate_real(den, b.real());
              reduced_ += 1;
            } else {
              num = deflate_pair(num, a);
              den = deflate_pair(den, b);
              reduced_ += 2;
            }
            changed = true;
            break;
          }
        }
        if (changed) break;
      }
    }
  }

  double s = std::max(num.max_abs_coef(), den.max_abs_coef());
  p_ = scale(num, 1.0 / s);
  q_ = scale(den, 1.0 / s);
  align_ = std::max(p_.degree(), q_.degree());
  if (align_ < 0) fail(errc::indeterminate_value, "zero rational pair");
  if (nominal_ < align_) {
    fail(errc::out_of_range, "nominal degree below actual degree");
  }
}

std::pair<double, double> RealRational::eval_pair(const ProjPoint& x) const {
  double vp = p_.is_zero() ? 0.0 : p_.eval_hom(x.p(), x.q(), align_);
  double vq = q_.is_zero() ? 0.0 : q_.eval_hom(x.p(), x.q(), align_);
  return {vp, vq};
}

std::pair<double, double> RealRational::eval_pair_raw(double xp, double xq) const {
  double s = std::hypot(xp, xq);
  if (!(s > 0.0)) fail(errc::degenerate_image, "zero representative");
  xp /= s;
  xq /= s;
  double vp = p_.is_zero() ? 0.0 : p_.eval_hom(xp, xq, align_);
  double vq = q_.is_zero() ? 0.0 : q_.eval_hom(xp, xq, align_);
  return {vp, vq};
}

ProjPoint RealRational::eval(const ProjPoint& x) const {
  auto [vp, vq] = eval_pair(x);
  if (std::hypot(vp, vq) <= 1e-14) {
    fail(errc::indeterminate_value, "both components vanish at " + x.str());
  }
  return ProjPoint(vp, vq);
}

Poly RealRational::wronskian() const { return sub(mul(p_.derivative(), q_), mul(p_, q_.derivative())); }

RealRational compose_target(const RealRational& r, const MobiusMap& m) {
  Poly num = add(scale(r.num(), m.a()), scale(r.den(), m.b()));
  Poly den = add(scale(r.num(), m.c()), scale(r.den(), m.d()));
  return RealRational(num, den, r.nominal_degree());
}

RealRational compose_source(const RealRational& r, const MobiusMap& m) {
  // R o m^{-1}: substitute x = (d y - b) / (-c y + a) and clear denominators.
  MobiusMap inv = m.inverse();
  Poly u{inv.b(), inv.a()};  // numerator of m^{-1}, ascending: b + a y
  Poly v{inv.d(), inv.c()};
  int n = r.actual_degree();
  std::vector<Poly> upow(n + 1), vpow(n + 1);
  upow[0] = Poly::constant(1.0);
  vpow[0] = Poly::constant(1.0);
  for (int k = 1; k <= n; ++k) {
    upow[k] = mul(upow[k - 1], u);
    vpow[k] = mul(vpow[k - 1], v);
  }
  Poly num, den;
  for (int k = 0; k <= n; ++k) {
    Poly base = mul(upow[k], vpow[n - k]);
    num = add(num, scale(base, r.num()[k]));
    den = add(den, scale(base, r.den()[k]));
  }
  return RealRational(num, den, r.nominal_degree());
}

std::vector<BoundarySolution> boundary_solutions(const RealRational& r, const ProjPoint& c,
                                                 const Arc& arc) {
  // R(x) = c  <=>  c.q * P(x) - c.p * Q(x) = 0 in homogeneous form.
  Poly g = sub(scale(r.num(), c.q()), scale(r.den(), c.p()));
  if (g.is_zero()) fail(errc::constant_function, "function is identically the boundary value");
  std::vector<BoundarySolution> out;
  for (const RealRoot& root : real_roots(g)) {
    ProjPoint x = ProjPoint::finite(root.x);
    if (arc.contains(x, 1e-9)) out.push_back({x, root.multiplicity});
  }
  int drop = r.actual_degree() - g.degree();
  if (drop > 0 && arc.contains(ProjPoint::infinity(), 1e-9)) {
    out.push_back({ProjPoint::infinity(), drop});
  }
  std::sort(out.begin(), out.end(), [&arc](const BoundarySolution& a, const BoundarySolution& b) {
    return arc.offset_of(a.x) < arc.offset_of(b.x);
  });
  return out;
}

void PhaseLift::shift(double delta) {
  for (double& v : phi) v += delta;
  phi_min += delta;
  phi_max += delta;
}

PhaseLift trace_phase(const RealRational& r, const Arc& arc) {
  PhaseLift out(arc);
  const double len = arc.length();
  const double psi0 = arc.start().angle();

  // Evaluate on the continuous representative (sin psi, cos psi).  The
  // canonical representative flips sign where the angle leaves [0, pi), which
  // would put a fake half-turn jump into the raw atan2.
  auto raw = [&](double offset) {
    double psi = psi0 + offset;
    auto [vp, vq] = r.eval_pair_raw(std::sin(psi), std::cos(psi));
    if (std::hypot(vp, vq) <= 1e-14) {
      fail(errc::indeterminate_value,
           "phase undefined at " + arc.point_at_offset(offset).str());
    }
    return std::atan2(vp, vq);
  };

  // Seed offsets: uniform grid, all interior phase-critical points (roots of
  // the Wronskian), and all axis crossings (zeros, poles, the point at
  // infinity).  Between consecutive axis crossings the pair stays inside an
  // open half-plane, so the phase moves by less than pi per gap and the
  // nearest-lift unwrapping below is exact.
  std::vector<double> seeds;
  int k0 = std::max(16, 8 * (r.actual_degree() + 1));
  for (int i = 0; i <= k0; ++i) seeds.push_back(len * i / k0);
  auto add_roots = [&](const Poly& g) {
    if (g.degree() < 1) return;
    for (const RealRoot& root : real_roots(g)) {
      ProjPoint x = ProjPoint::finite(root.x);
      if (arc.contains(x, 0.0)) {
        double s = arc.offset_of(x);
        if (s > 0 && s < len) seeds.push_back(s);
      }
    }
  };
  add_roots(r.wronskian());
  add_roots(r.num());
  add_roots(r.den());
  if (arc.contains(ProjPoint::infinity(), 0.0)) {
    double s = arc.offset_of(ProjPoint::infinity());
    if (s > 0 && s < len) seeds.push_back(s);
  }
  std::sort(seeds.begin(), seeds.end());
  seeds.erase(std::unique(seeds.begin(), seeds.end(),
                          [len](double a, double b) { return std::abs(a - b) <= 1e-15 * len; }),
              seeds.end());

  out.offsets.push_back(seeds.front());
  out.phi.push_back(raw(seeds.front()));
  for (size_t i = 1; i < seeds.size(); ++i) {
    // Advance from the previous accepted sample to seeds[i], bisecting while
    // the lifted increment is too large to unwrap safely.
    double target = seeds[i];
    while (out.offsets.back() < target) {
      double lo = out.offsets.back();
      double hi = target;
      double phi_lo = out.phi.back();
      int depth = 0;
      while (true) {
        double cand = raw(hi);
        double delta = std::remainder(cand - phi_lo, 2 * kPi);
        if (std::abs(delta) < kPi / 2) {
          out.offsets.push_back(hi);
          out.phi.push_back(phi_lo + delta);
          break;
        }
        hi = 0.5 * (lo + hi);
        if (++depth > tol::lift_max_depth) {
          fail(errc::lift_failure, "phase lift failed to resolve");
        }
      }
    }
  }
  out.phi_min = *std::min_element(out.phi.begin(), out.phi.end());
  out.phi_max = *std::max_element(out.phi.begin(), out.phi.end());
  return out;
}

}  // namespace zk
