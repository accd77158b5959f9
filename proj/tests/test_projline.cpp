#include <doctest.h>

#include <cmath>

#include "zk/projline.hpp"

using namespace zk;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("canonical representatives") {
  ProjPoint a(2.0, 4.0);
  CHECK(a.p() * a.p() + a.q() * a.q() == doctest::Approx(1.0));
  CHECK(a.value() == doctest::Approx(0.5));
  ProjPoint b(-2.0, -4.0);  // same point, scaled by -1
  CHECK(almost_equal(a, b));
  CHECK(b.q() > 0);

  ProjPoint inf = ProjPoint::infinity();
  CHECK(inf.is_infinite());
  CHECK(inf.p() == doctest::Approx(1.0));
  CHECK(ProjPoint(-3.0, 0.0).p() == doctest::Approx(1.0));  // (-3:0) ~ (1:0)
  CHECK(almost_equal(ProjPoint(-3.0, 0.0), inf));
}

TEST_CASE("angles follow the cyclic orientation") {
  CHECK(ProjPoint::finite(0.0).angle() == doctest::Approx(0.0));
  CHECK(ProjPoint::finite(1.0).angle() == doctest::Approx(kPi / 4));
  CHECK(ProjPoint::infinity().angle() == doctest::Approx(kPi / 2));
  CHECK(ProjPoint::finite(-1.0).angle() == doctest::Approx(3 * kPi / 4));
}

TEST_CASE("fubini study distance") {
  CHECK(fubini_study_distance(ProjPoint::finite(0), ProjPoint::finite(1)) ==
        doctest::Approx(kPi / 4));
  CHECK(fubini_study_distance(ProjPoint::finite(0), ProjPoint::infinity()) ==
        doctest::Approx(kPi / 2));
  // Symmetric and bounded by pi/2.
  CHECK(fubini_study_distance(ProjPoint::finite(5), ProjPoint::finite(-5)) <= kPi / 2);
  CHECK(fubini_study_distance(ProjPoint::finite(1e9), ProjPoint::infinity()) ==
        doctest::Approx(0.0).epsilon(1e-6));
}

TEST_CASE("cyclic position") {
  CHECK(cyclic_position(ProjPoint::finite(0), ProjPoint::finite(1), ProjPoint::infinity()));
  CHECK(cyclic_position(ProjPoint::finite(1), ProjPoint::infinity(), ProjPoint::finite(-1)));
  CHECK_FALSE(cyclic_position(ProjPoint::finite(0), ProjPoint::infinity(), ProjPoint::finite(1)));
  CHECK_THROWS_AS(
      cyclic_position(ProjPoint::finite(0), ProjPoint::finite(0), ProjPoint::finite(1)), Error);
}

TEST_CASE("mobius maps act projectively") {
  MobiusMap m(1, 2, 3, 4);  // x -> (x + 2) / (3x + 4)
  CHECK(m(ProjPoint::finite(0)).value() == doctest::Approx(0.5));
  CHECK(m(ProjPoint::infinity()).value() == doctest::Approx(1.0 / 3.0));
  // Pole of the map goes to infinity.
  CHECK(m(ProjPoint::finite(-4.0 / 3.0)).is_infinite());

  MobiusMap inv = m.inverse();
  ProjPoint x = ProjPoint::finite(0.7);
  CHECK(almost_equal(inv(m(x)), x));
  CHECK(almost_equal(m.compose(inv)(x), x));

  CHECK_THROWS_AS(MobiusMap(1, 2, 2, 4), Error);  // singular
  CHECK(MobiusMap(0, 1, 1, 0).orientation_preserving() == false);
  CHECK(MobiusMap::rotation(0.3).orientation_preserving());
}

TEST_CASE("rotation shifts the angle coordinate") {
  MobiusMap r = MobiusMap::rotation(0.4);
  ProjPoint x = ProjPoint::finite(1.3);
  double before = x.angle();
  double after = r(x).angle();
  double delta = std::fmod(after - before + kPi, kPi);
  CHECK(delta == doctest::Approx(0.4));
}

TEST_CASE("arcs") {
  Arc a(ProjPoint::finite(-1), ProjPoint::finite(1));  // through 0
  CHECK(a.length() == doctest::Approx(kPi / 2));
  CHECK(a.contains(ProjPoint::finite(0)));
  CHECK_FALSE(a.contains(ProjPoint::infinity()));

  Arc b(ProjPoint::finite(1), ProjPoint::finite(-1));  // through infinity
  CHECK(b.contains(ProjPoint::infinity()));
  CHECK_FALSE(b.contains(ProjPoint::finite(0)));
  CHECK(a.length() + b.length() == doctest::Approx(kPi));

  CHECK(almost_equal(a.midpoint(), ProjPoint::finite(0)));
  CHECK(almost_equal(b.midpoint(), ProjPoint::infinity()));

  // Orientation-reversing transform swaps traversal endpoints.
  MobiusMap flip(0, 1, 1, 0);  // x -> 1/x
  Arc c = a.transformed(flip);
  CHECK(almost_equal(c.start(), ProjPoint::finite(1)));
  CHECK(almost_equal(c.end(), ProjPoint::finite(-1)));
  CHECK(c.contains(ProjPoint::infinity()));  // image of 0
}

TEST_CASE("cross ratio closed forms") {
  // Symmetric windows +-[1 - mu, 1 + mu]: kappa = mu^-2.
  double mu = 1.0 / 3.0;
  double k = cross_ratio(ProjPoint::finite(-1 - mu), ProjPoint::finite(-1 + mu),
                         ProjPoint::finite(1 - mu), ProjPoint::finite(1 + mu));
  CHECK(k == doctest::Approx(9.0).epsilon(1e-12));

  // Window pair of the inverse-symmetric form: kappa = ((theta + 1/theta)/2)^2.
  double theta = 0.5;
  double k2 = cross_ratio(ProjPoint::finite(1 / theta), ProjPoint::finite(-1 / theta),
                          ProjPoint::finite(-theta), ProjPoint::finite(theta));
  CHECK(k2 == doctest::Approx(25.0 / 16.0).epsilon(1e-12));

  CHECK_THROWS_AS(cross_ratio(ProjPoint::finite(0), ProjPoint::finite(0), ProjPoint::finite(1),
                              ProjPoint::finite(2)),
                  Error);
}

TEST_CASE("cross ratio is invariant under relabeling") {
  ProjPoint d0m = ProjPoint::finite(-2.0), d1m = ProjPoint::finite(-0.5);
  ProjPoint d0p = ProjPoint::finite(0.3), d1p = ProjPoint::finite(4.0);
  double k = cross_ratio(d0m, d1m, d0p, d1p);
  // Swap the 0/1 labels of both windows.
  CHECK(cross_ratio(d1m, d0m, d1p, d0p) == doctest::Approx(k).epsilon(1e-12));
  // Swap the two windows.
  CHECK(cross_ratio(d0p, d1p, d0m, d1m) == doctest::Approx(k).epsilon(1e-12));
}
