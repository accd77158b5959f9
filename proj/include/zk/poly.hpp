#pragma once

#include <complex>
#include <initializer_list>
#include <utility>
#include <vector>

namespace zk {

// Dense real polynomial, coefficients in ascending degree order.
// The zero polynomial has an empty coefficient vector and degree -1.
class Poly {
 public:
  Poly() = default;
  Poly(std::initializer_list<double> c) : c_(c) { trim(); }
  explicit Poly(std::vector<double> c) : c_(std::move(c)) { trim(); }

  static Poly constant(double v) { return Poly({v}); }
  // Monic product of (x - r) over the given real roots, scaled by lead.
  static Poly from_roots(const std::vector<double>& roots, double lead = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  double operator[](int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : 0.0;
  }
  const std::vector<double>& coef() const { return c_; }
  double max_abs_coef() const;

  double eval(double x) const;
  // Value and first derivative in one pass.
  std::pair<double, double> eval_d(double x) const;
  // Homogeneous evaluation sum c_k p^k q^(align-k) at a canonical (p : q)
  // pair; align >= degree().  Overflow-free for |p|, |q| <= 1.
  double eval_hom(double p, double q, int align) const;

  Poly derivative() const;

  // Drop trailing coefficients that are negligible relative to the largest.
  Poly& trim(double rel_eps = 1e-14);

 private:
  std::vector<double> c_;
};

Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Poly& a, double s);
// a * (x - r)
Poly mul_linear(const Poly& a, double r);
// Quotient and remainder of a / b.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);

// All complex roots via the companion matrix (Eigen), Newton-polished.
std::vector<std::complex<double>> poly_roots(const Poly& p);

struct RealRoot {
  double x = 0.0;
  int multiplicity = 1;
};

// Real roots with multiplicities.  Roots (or conjugate near-real clusters)
// closer than cluster_eps * max(1, |x|) merge into one multiple root.
std::vector<RealRoot> real_roots(const Poly& p, double cluster_eps = 1e-6);

}  // namespace zk
