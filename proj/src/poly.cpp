#include "zk/poly.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "zk/error.hpp"
#include "zk/tolerances.hpp"

namespace zk {

namespace {

using cplx = std::complex<double>;

cplx eval_c(const std::vector<double>& c, cplx x) {
  cplx v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

std::pair<cplx, cplx> eval_c_d(const std::vector<double>& c, cplx x) {
  cplx v = 0.0, d = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    d = d * x + v;
    v = v * x + *it;
  }
  return {v, d};
}

}  // namespace

Poly Poly::from_roots(const std::vector<double>& roots, double lead) {
  Poly r = Poly::constant(lead);
  for (double z : roots) r = mul_linear(r, z);
  return r;
}

double Poly::max_abs_coef() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

double Poly::eval(double x) const {
  double v = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
  return v;
}

std::pair<double, double> Poly::eval_d(double x) const {
  double v = 0.0, d = 0.0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
    d = d * x + v;
    v = v * x + *it;
  }
  return {v, d};
}

double Poly::eval_hom(double p, double q, int align) const {
  if (align < degree()) fail(errc::out_of_range, "eval_hom alignment below degree");
  if (std::abs(p) <= std::abs(q)) {
    // q^align * sum c_k (p/q)^k
    double t = p / q;
    double v = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * t + *it;
    return v * std::pow(q, align);
  }
  // p^align * sum_j c_(align-j) (q/p)^j
  double t = q / p;
  double v = 0.0;
  for (int j = align; j >= 0; --j) v = v * t + (*this)[align - j];
  return v * std::pow(p, align);
}

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly();
  std::vector<double> d(c_.size() - 1);
  for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
  return Poly(std::move(d));
}

Poly& Poly::trim(double rel_eps) {
  double m = max_abs_coef();
  double cut = m * rel_eps;
  while (!c_.empty() && std::abs(c_.back()) <= cut) c_.pop_back();
  return *this;
}

Poly add(const Poly& a, const Poly& b) {
  std::vector<double> c(std::max(a.coef().size(), b.coef().size()), 0.0);
  for (size_t k = 0; k < c.size(); ++k) c[k] = a[static_cast<int>(k)] + b[static_cast<int>(k)];
  return Poly(std::move(c));
}

Poly sub(const Poly& a, const Poly& b) { return add(a, scale(b, -1.0)); }

Poly mul(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly();
  std::vector<double> c(a.coef().size() + b.coef().size() - 1, 0.0);
  for (size_t i = 0; i < a.coef().size(); ++i)
    for (size_t j = 0; j < b.coef().size(); ++j) c[i + j] += a.coef()[i] * b.coef()[j];
  return Poly(std::move(c));
}

Poly scale(const Poly& a, double s) {
  std::vector<double> c = a.coef();
  for (double& v : c) v *= s;
  return Poly(std::move(c));
}

Poly mul_linear(const Poly& a, double r) {
  if (a.is_zero()) return Poly();
  std::vector<double> c(a.coef().size() + 1, 0.0);
  for (size_t i = 0; i < a.coef().size(); ++i) {
    c[i + 1] += a.coef()[i];
    c[i] -= r * a.coef()[i];
  }
  return Poly(std::move(c));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) fail(errc::out_of_range, "division by zero polynomial");
  std::vector<double> rem = a.coef();
  int db = b.degree();
  int da = a.degree();
  if (da < db) return {Poly(), a};
  std::vector<double> quot(da - db + 1, 0.0);
  for (int k = da; k >= db; --k) {
    double f = rem[k] / b.coef()[db];
    quot[k - db] = f;
    for (int j = 0; j <= db; ++j) rem[k - db + j] -= f * b.coef()[j];
  }
  rem.resize(db > 0 ? db : 0);
  return {Poly(std::move(quot)), Poly(std::move(rem))};
}

std::vector<std::complex<double>> poly_roots(const Poly& p) {
  std::vector<cplx> out;
  int n = p.degree();
  if (n <= 0) return out;
  const std::vector<double>& c = p.coef();
  if (n == 1) {
    out.push_back(cplx(-c[0] / c[1], 0.0));
    return out;
  }
  if (n == 2) {
    double a = c[2], b = c[1], c0 = c[0];
    cplx disc = std::sqrt(cplx(b * b - 4 * a * c0, 0.0));
    // Citardauq form for the smaller root avoids cancellation.
    cplx r1 = (-b - (b >= 0 ? disc : -disc)) / (2.0 * a);
    cplx r2 = (r1 == 0.0) ? cplx(0.0) : c0 / (a * r1);
    out = {r1, r2};
  } else {
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) companion(k, n - 1) = -c[k] / c[n];
    for (int k = 1; k < n; ++k) companion(k, k - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) fail(errc::ill_conditioned, "eigenvalue iteration failed");
    for (int k = 0; k < n; ++k) out.push_back(es.eigenvalues()[k]);
  }
  // Newton polish; keep the update only while the residual decreases.
  for (cplx& z : out) {
    for (int it = 0; it < 8; ++it) {
      auto [v, d] = eval_c_d(c, z);
      if (std::abs(v) == 0.0 || std::abs(d) == 0.0) break;
      cplx step = v / d;
      cplx z2 = z - step;
      if (std::abs(eval_c(c, z2)) <= std::abs(v)) {
        z = z2;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
      } else {
        break;
      }
    }
  }
  return out;
}

std::vector<RealRoot> real_roots(const Poly& p, double cluster_eps) {
  std::vector<RealRoot> out;
  std::vector<cplx> roots = poly_roots(p);
  // Keep roots whose imaginary part is attributable to a split real cluster.
  std::vector<cplx> nearreal;
  for (const cplx& z : roots) {
    if (std::abs(z.imag()) <= cluster_eps * std::max(1.0, std::abs(z.real()))) {
      nearreal.push_back(z);
    }
  }
  std::sort(nearreal.begin(), nearreal.end(),
            [](const cplx& a, const cplx& b) { return a.real() < b.real(); });
  size_t i = 0;
  while (i < nearreal.size()) {
    size_t j = i + 1;
    double lo = nearreal[i].real();
    while (j < nearreal.size() &&
           nearreal[j].real() - lo <= cluster_eps * std::max(1.0, std::abs(lo))) {
      ++j;
    }
    double xsum = 0.0;
    for (size_t k = i; k < j; ++k) xsum += nearreal[k].real();
    RealRoot r;
    r.x = xsum / static_cast<double>(j - i);
    r.multiplicity = static_cast<int>(j - i);
    // A multiple root is best recovered as a root of the (m-1)th derivative.
    if (r.multiplicity > 1) {
      Poly d = p;
      for (int k = 1; k < r.multiplicity; ++k) d = d.derivative();
      for (int it = 0; it < 8; ++it) {
        auto [v, dv] = d.eval_d(r.x);
        if (dv == 0.0) break;
        double step = v / dv;
        r.x -= step;
        if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(r.x))) break;
      }
    }
    out.push_back(r);
    i = j;
  }
  return out;
}

}  // namespace zk
