#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "zk/bands.hpp"
#include "zk/error.hpp"

using namespace zk;
using zktest::kPi;

TEST_CASE("band system validation") {
  BandSystem e = zktest::t3_bands();
  CHECK(e.size() == 4);
  CHECK_NOTHROW(e.ensure_valid());
  CHECK(!e.has_infinite_endpoints());

  // A single band is rejected.
  CHECK_THROWS_AS(BandSystem({Band{Arc(ProjPoint::finite(0), ProjPoint::finite(1)),
                                   BandType::plus, 0}})
                      .ensure_valid(),
                  Error);

  // Same type everywhere is rejected.
  CHECK_THROWS_AS(BandSystem({Band{Arc(ProjPoint::finite(0), ProjPoint::finite(1)),
                                   BandType::plus, 0},
                              Band{Arc(ProjPoint::finite(2), ProjPoint::finite(3)),
                                   BandType::plus, 1}})
                      .ensure_valid(),
                  Error);

  // Overlapping bands are rejected.
  CHECK_THROWS_AS(BandSystem({Band{Arc(ProjPoint::finite(0), ProjPoint::finite(2)),
                                   BandType::plus, 0},
                              Band{Arc(ProjPoint::finite(1), ProjPoint::finite(3)),
                                   BandType::minus, 1}})
                      .ensure_valid(),
                  Error);
}

TEST_CASE("transitions and lookup") {
  BandSystem e = zktest::t3_bands();
  for (int j = 0; j < 4; ++j) {
    Arc t = e.transition(j);
    // Each transition runs from the end of band j to the start of band j+1.
    CHECK(t.start().angle() == doctest::Approx(e.band(j).arc.end().angle()));
    CHECK(t.end().angle() ==
          doctest::Approx(e.band((j + 1) % 4).arc.start().angle()));
    CHECK(e.transition_pos(e.transition_id(j)) == j);
  }
  // The last transition passes through infinity.
  CHECK(e.transition(3).contains(ProjPoint::infinity()));
  CHECK(e.type_before(0) == BandType::minus);
  CHECK(e.type_after(0) == BandType::plus);

  CHECK(e.contains(ProjPoint::finite(0.95)));
  CHECK(!e.contains(ProjPoint::finite(0.0)));
}

TEST_CASE("band ids survive source transformations") {
  BandSystem e = zktest::t3_bands();
  // Orientation preserving: ids and transition ids keep their cyclic order.
  MobiusMap shift(1, 0.3, 0, 1);
  BandSystem moved = e.transformed(shift);
  CHECK(moved.size() == 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(moved.band(j).id == e.band(j).id);
    CHECK(moved.transition_id(j) == e.transition_id(j));
  }
  CHECK_NOTHROW(moved.ensure_valid());

  // Orientation reversing: traversal order reverses but each transition
  // keeps its identity (the same pair of neighbouring bands).
  MobiusMap neg(-1, 0, 0, 1);
  BandSystem rev = e.transformed(neg);
  CHECK_NOTHROW(rev.ensure_valid());
  for (int j = 0; j < 4; ++j) {
    int tid = e.transition_id(j);
    Arc before = e.transition(j).transformed(neg);
    Arc after = rev.transition(rev.transition_pos(tid));
    CHECK(before.start().angle() == doctest::Approx(after.start().angle()));
    CHECK(before.length() == doctest::Approx(after.length()));
  }
  // Band ids likewise follow their arcs.
  for (int j = 0; j < 4; ++j) {
    Band b = rev.band(j);
    Band orig = e.band(0);
    for (int k = 0; k < 4; ++k)
      if (e.band(k).id == b.id) orig = e.band(k);
    CHECK(b.type == orig.type);
    CHECK(b.arc.midpoint().angle() ==
          doctest::Approx(orig.arc.transformed(neg).midpoint().angle()));
  }
}

TEST_CASE("value windows and cross ratio") {
  ValueWindows f = windows_from_mu(0.25);
  CHECK(f.kappa() == doctest::Approx(16.0));
  CHECK(f.fminus().start().value() == doctest::Approx(-1.25));
  CHECK(f.fplus().end().value() == doctest::Approx(1.25));

  ValueWindows g = windows_from_theta(0.5);
  // ((theta + 1/theta)/2)^2 = (1.25)^2
  CHECK(g.kappa() == doctest::Approx(25.0 / 16.0));
  CHECK(g.fminus().contains(ProjPoint::infinity()));

  CHECK_THROWS_AS(windows_from_mu(0.0), Error);
  CHECK_THROWS_AS(windows_from_mu(1.0), Error);

  // Degenerate: coinciding endpoints.
  CHECK_THROWS_AS(ValueWindows(Arc(ProjPoint::finite(0), ProjPoint::finite(1)),
                               Arc(ProjPoint::finite(1), ProjPoint::finite(2))),
                  Error);
}

TEST_CASE("membership of T3 in its Stiefel class") {
  RealRational t3 = zktest::t3();
  BandSystem e = zktest::t3_bands();
  ValueWindows f = zktest::t3_windows();
  CHECK(membership(e, f, t3, 1e-9));

  // Each band image hugs the correct window.
  for (int j = 0; j < 4; ++j) {
    BandImage im = band_image(e.band(j), f, t3);
    CHECK(im.inside);
    double lo = im.lift.phi_min, hi = im.lift.phi_max;
    CHECK(lo >= im.win_lo - 1e-9);
    CHECK(hi <= im.win_hi + 1e-9);
    // T3 actually fills the window on every band of the extremal system.
    CHECK(lo == doctest::Approx(im.win_lo));
    CHECK(hi == doctest::Approx(im.win_hi));
  }

  // Shrinking the windows breaks membership.
  ValueWindows tight = windows_from_mu(0.2);
  CHECK(!membership(e, tight, t3, 1e-9));

  // A function of the wrong sign pattern is not a member.
  RealRational neg = compose_target(t3, MobiusMap(-1, 0, 0, 1));
  CHECK(!membership(e, f, neg, 1e-9));
}

TEST_CASE("membership survives source changes of variable") {
  RealRational t3 = zktest::t3();
  BandSystem e = zktest::t3_bands();
  ValueWindows f = zktest::t3_windows();
  for (unsigned seed = 0; seed < 8; ++seed) {
    std::mt19937_64 rng(991 + seed);
    MobiusMap l = zktest::random_mobius(rng);
    RealRational moved = compose_source(t3, l);
    BandSystem me = e.transformed(l);
    CHECK(membership(me, f, moved, 1e-7));
  }
}
