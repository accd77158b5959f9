#include "zk/achiezer.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "zk/error.hpp"
#include "zk/tolerances.hpp"

namespace zk {

namespace {

using C = std::complex<double>;
using CVec = std::vector<C>;  // ascending coefficients

struct Cluster {
  C center;
  int mult = 0;
};

// Group near-coincident roots into multiple roots and restore exact
// conjugate symmetry so interpolants come out real.
std::vector<Cluster> cluster_roots(const std::vector<C>& roots) {
  std::vector<Cluster> cl;
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i]) continue;
    C sum = roots[i];
    int cnt = 1;
    used[i] = true;
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      if (used[j]) continue;
      if (std::abs(roots[j] - roots[i]) <= 1e-6 * std::max(1.0, std::abs(roots[i]))) {
        sum += roots[j];
        ++cnt;
        used[j] = true;
      }
    }
    cl.push_back({sum / static_cast<double>(cnt), cnt});
  }
  for (Cluster& c : cl) {
    if (std::abs(c.center.imag()) <= 1e-9 * (1.0 + std::abs(c.center))) {
      c.center = C(c.center.real(), 0.0);
    }
  }
  // Average each strictly complex cluster with its conjugate partner.
  for (std::size_t i = 0; i < cl.size(); ++i) {
    if (cl[i].center.imag() <= 0.0) continue;
    for (std::size_t j = 0; j < cl.size(); ++j) {
      if (cl[j].center.imag() >= 0.0) continue;
      if (std::abs(std::conj(cl[j].center) - cl[i].center) <=
          1e-5 * (1.0 + std::abs(cl[i].center))) {
        C avg = (cl[i].center + std::conj(cl[j].center)) / 2.0;
        cl[i].center = avg;
        cl[j].center = std::conj(avg);
        break;
      }
    }
  }
  return cl;
}

// Taylor coefficients of a real polynomial at z0, orders 0..k-1, by repeated
// synthetic division.
CVec taylor_at(const Poly& a, C z0, int k) {
  CVec work(a.coef().begin(), a.coef().end());
  if (work.empty()) work.push_back(0.0);
  CVec out;
  for (int j = 0; j < k; ++j) {
    // One synthetic division by (x - z0): remainder is the next Taylor
    // coefficient, quotient carries on.
    CVec quot(work.size() > 1 ? work.size() - 1 : 1, 0.0);
    C carry = 0.0;
    for (int i = static_cast<int>(work.size()) - 1; i >= 1; --i) {
      carry = work[i] + carry * z0;
      quot[i - 1] = carry;
    }
    out.push_back(work[0] + carry * z0);
    work = std::move(quot);
  }
  return out;
}

// Coefficients of the series num/den given both Taylor expansions; den[0]
// must be nonzero (guaranteed by coprimality at the interpolation nodes).
CVec series_ratio(const CVec& num, const CVec& den) {
  CVec c(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) {
    C acc = num[i];
    for (std::size_t j = 0; j < i; ++j) acc -= c[j] * den[i - j];
    c[i] = acc / den[0];
  }
  return c;
}

// Hermite interpolant of S/den at the clustered zeros of a degree-n
// polynomial, as a complex coefficient vector of length <= n.
CVec hermite_ratio(const Poly& S, const Poly& den, const std::vector<Cluster>& nodes, int n) {
  // Flatten nodes with confluent repeats and per-node Taylor data.
  CVec z;
  std::vector<CVec> tay;  // per flattened node: the cluster's ratio series
  for (const Cluster& c : nodes) {
    CVec ratio = series_ratio(taylor_at(S, c.center, c.mult), taylor_at(den, c.center, c.mult));
    for (int k = 0; k < c.mult; ++k) {
      z.push_back(c.center);
      tay.push_back(ratio);
    }
  }
  const int N = static_cast<int>(z.size());
  if (N != n) fail(errc::ill_conditioned, "root count does not match the degree");

  std::vector<CVec> T(N, CVec(N, 0.0));
  for (int i = 0; i < N; ++i) T[i][i] = tay[i][0];
  for (int len = 1; len < N; ++len) {
    for (int i = 0; i + len < N; ++i) {
      int j = i + len;
      if (z[i] == z[j]) {
        T[i][j] = tay[i][len];
      } else {
        T[i][j] = (T[i + 1][j] - T[i][j - 1]) / (z[j] - z[i]);
      }
    }
  }
  // Newton form accumulation.
  CVec coef(1, 0.0), basis(1, 1.0);
  for (int k = 0; k < N; ++k) {
    if (coef.size() < basis.size()) coef.resize(basis.size(), 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) coef[i] += T[0][k] * basis[i];
    // basis *= (x - z_k)
    CVec nb(basis.size() + 1, 0.0);
    for (std::size_t i = 0; i < basis.size(); ++i) {
      nb[i + 1] += basis[i];
      nb[i] -= basis[i] * z[k];
    }
    basis = std::move(nb);
  }
  return coef;
}

// Real part extraction with a symmetry check; nullopt-like failure via flag.
bool realify(const CVec& c, Poly& out) {
  double scale = 0.0;
  for (const C& v : c) scale = std::max(scale, std::abs(v));
  std::vector<double> rc(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (std::abs(c[i].imag()) > 1e-11 * std::max(1.0, scale)) return false;
    rc[i] = c[i].real();
  }
  out = Poly(std::move(rc));
  return true;
}

double rel_residual(const Poly& p, const Poly& q, const Poly& P, const Poly& Q, const Poly& S) {
  // The defect p*Q - q*P - S cancels across many orders of magnitude when the
  // solution dwarfs the right side, so accumulate it in extended precision.
  int dmax = std::max({p.degree() + Q.degree(), q.degree() + P.degree(), S.degree()});
  std::vector<long double> acc(dmax + 1, 0.0L);
  for (int i = 0; i <= p.degree(); ++i)
    for (int j = 0; j <= Q.degree(); ++j) acc[i + j] += static_cast<long double>(p[i]) * Q[j];
  for (int i = 0; i <= q.degree(); ++i)
    for (int j = 0; j <= P.degree(); ++j) acc[i + j] -= static_cast<long double>(q[i]) * P[j];
  for (int i = 0; i <= S.degree(); ++i) acc[i] -= S[i];
  long double worst = 0.0L;
  for (long double v : acc) worst = std::max(worst, v < 0 ? -v : v);
  double denom = S.max_abs_coef();
  if (denom == 0.0) denom = std::max(1.0, P.max_abs_coef() * Q.max_abs_coef());
  return static_cast<double>(worst) / denom;
}

// Least-squares solve for the coefficients of p, q under the degree cap.
// Also reports the condition number of the convolution system so failures
// can say how stiff the instance was.
AchiezerSolution least_squares(const Poly& P, const Poly& Q, const Poly& S, int dcap,
                               double& condition) {
  const int n = P.degree();
  const int rows = dcap + n + 1;
  const int cols = 2 * (dcap + 1);
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows);
  for (int j = 0; j <= dcap; ++j) {
    for (int i = 0; i <= n; ++i) {
      A(j + i, j) += Q[i];            // x^j * Q
      A(j + i, dcap + 1 + j) -= P[i];  // -x^j * P
    }
  }
  for (int i = 0; i <= S.degree(); ++i) b(i) = S[i];
  auto svd = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV);
  Eigen::VectorXd x = svd.solve(b);
  const auto& sv = svd.singularValues();
  condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
  // Iterative refinement with extended-precision residuals: the plain solve
  // leaves a defect near eps * cond(A) * |x|, which overshoots the residual
  // budget once the system gets stiff.
  Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic> Al = A.cast<long double>();
  Eigen::Matrix<long double, Eigen::Dynamic, 1> bl = b.cast<long double>();
  for (int round = 0; round < 3; ++round) {
    Eigen::VectorXd r = (bl - Al * x.cast<long double>()).cast<double>();
    Eigen::VectorXd d = svd.solve(r);
    double before = x.norm();
    x += d;
    if (d.norm() <= 1e-16 * before) break;
  }
  std::vector<double> pc(dcap + 1), qc(dcap + 1);
  for (int j = 0; j <= dcap; ++j) {
    pc[j] = x(j);
    qc[j] = x(dcap + 1 + j);
  }
  AchiezerSolution sol;
  sol.p = Poly(std::move(pc));
  sol.q = Poly(std::move(qc));
  sol.residual = rel_residual(sol.p, sol.q, P, Q, S);
  return sol;
}

}  // namespace

AchiezerSolution solve_achiezer(const Poly& P, const Poly& Q, const Poly& S) {
  const int n = P.degree();
  if (n < 1 || Q.degree() != n) {
    fail(errc::precondition_violated, "both denominator factors must share a degree of at least one");
  }
  std::vector<C> rp = poly_roots(P);
  std::vector<C> rq = poly_roots(Q);
  for (const C& a : rp) {
    for (const C& b : rq) {
      if (std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(a))) {
        fail(errc::not_coprime, "the two factors share a root");
      }
    }
  }
  const int m = S.degree();
  const int dcap = std::max(m - n, n - 1);

  std::vector<Cluster> cp = cluster_roots(rp);
  std::vector<Cluster> cq = cluster_roots(rq);

  AchiezerSolution sol;
  bool direct_ok = false;
  try {
    Poly p1, q1;
    if (realify(hermite_ratio(S, Q, cp, n), p1) && realify(hermite_ratio(S, P, cq, n), q1)) {
      // S - p1*Q - q1*P vanishes at every zero of P and of Q, so it splits
      // off the product; the quotient spreads over both summands.
      Poly t = sub(sub(S, mul(p1, Q)), mul(q1, P));
      Poly r;
      if (!t.is_zero()) {
        auto [quot, rem] = divmod(t, mul(P, Q));
        (void)rem;  // the residual check below vouches for the division
        r = scale(quot, 0.5);
      }
      sol.p = add(p1, mul(r, P));
      sol.q = scale(add(q1, mul(r, Q)), -1.0);
      sol.residual = rel_residual(sol.p, sol.q, P, Q, S);
      direct_ok = sol.residual <= tol::achiezer_residual &&
                  sol.p.degree() <= dcap && sol.q.degree() <= dcap;
    }
  } catch (const Error&) {
    direct_ok = false;
  }
  if (direct_ok) return sol;

  double condition = 0.0;
  AchiezerSolution ls = least_squares(P, Q, S, dcap, condition);
  if (ls.residual > tol::achiezer_residual) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "interpolation and least squares both left a relative residual of %.3e"
                  " (condition estimate %.3e)",
                  ls.residual, condition);
    fail(errc::ill_conditioned, msg);
  }
  return ls;
}

}  // namespace zk
