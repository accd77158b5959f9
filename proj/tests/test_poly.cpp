#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "zk/poly.hpp"

using namespace zk;

TEST_CASE("arithmetic and evaluation") {
  Poly p{1, 0, -3, 4};  // 4x^3 - 3x^2 + 1... careful: ascending => 1 - 3x^2 + 4x^3
  CHECK(p.degree() == 3);
  CHECK(p.eval(2.0) == doctest::Approx(1 - 12 + 32));
  auto [v, d] = p.eval_d(2.0);
  CHECK(v == doctest::Approx(21.0));
  CHECK(d == doctest::Approx(-6.0 * 2 + 12 * 4));

  Poly a{1, 2}, b{3, 4};
  Poly ab = mul(a, b);
  CHECK(ab.coef() == std::vector<double>{3, 10, 8});
  CHECK(sub(add(a, b), b).coef() == a.coef());

  auto [q, r] = divmod(ab, a);
  CHECK(q.coef() == b.coef());
  CHECK(r.is_zero());
}

TEST_CASE("homogeneous evaluation matches affine") {
  Poly p{-1, 0, 0.5, 2};
  for (double x : {-3.0, -0.2, 0.0, 0.7, 5.0}) {
    double s = std::hypot(x, 1.0);
    double hp = p.eval_hom(x / s, 1.0 / s, 5);
    CHECK(hp == doctest::Approx(p.eval(x) / std::pow(s, 5)).epsilon(1e-12));
  }
  // At infinity only the top aligned coefficient survives.
  CHECK(p.eval_hom(1.0, 0.0, 3) == doctest::Approx(2.0));
  CHECK(p.eval_hom(1.0, 0.0, 4) == doctest::Approx(0.0));
}

TEST_CASE("roots of random polynomials from known factors") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> U(-2.0, 2.0);
  for (int trial = 0; trial < 50; ++trial) {
    int n = 1 + static_cast<int>(rng() % 6);
    std::vector<double> roots;
    for (int k = 0; k < n; ++k) roots.push_back(U(rng));
    std::sort(roots.begin(), roots.end());
    // Reject clusters so simple-root matching is well posed.
    bool ok = true;
    for (int k = 1; k < n; ++k) ok = ok && roots[k] - roots[k - 1] > 1e-2;
    if (!ok) continue;
    Poly p = Poly::from_roots(roots, 1.7);
    auto found = poly_roots(p);
    REQUIRE(found.size() == roots.size());
    std::sort(found.begin(), found.end(),
              [](auto a, auto b) { return a.real() < b.real(); });
    for (int k = 0; k < n; ++k) {
      CHECK(std::abs(found[k] - std::complex<double>(roots[k], 0)) < 1e-9);
    }
  }
}

TEST_CASE("multiple roots cluster") {
  // (x - 1)^2 (x + 2)
  Poly p = mul(mul(Poly{-1, 1}, Poly{-1, 1}), Poly{2, 1});
  auto rr = real_roots(p);
  REQUIRE(rr.size() == 2);
  CHECK(rr[0].x == doctest::Approx(-2.0));
  CHECK(rr[0].multiplicity == 1);
  CHECK(rr[1].x == doctest::Approx(1.0));
  CHECK(rr[1].multiplicity == 2);
}

TEST_CASE("complex pairs are not reported as real") {
  Poly p{1, 0, 1};  // x^2 + 1
  CHECK(real_roots(p).empty());
  REQUIRE(poly_roots(p).size() == 2);
}
