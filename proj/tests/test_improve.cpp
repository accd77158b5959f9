#include <doctest.h>

#include <cmath>
#include <functional>
#include <random>
#include <tuple>
#include <vector>

#include "helpers.hpp"
#include "zk/certify.hpp"
#include "zk/error.hpp"
#include "zk/improve.hpp"

using namespace zk;
using zktest::kPi;

namespace {

IndexArray flip_bins(const IndexArray& a, const std::vector<int>& tids) {
  IndexArray out = a;
  for (int tid : tids) {
    IndexEntry& e = out.entries.at(tid);
    e.bin ^= 1;
    e.integer.reset();
  }
  return out;
}

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& err) {
    return err.code();
  }
  FAIL("expected a library error");
  return errc::out_of_range;
}

// A rotation that keeps the cubic fixture's windows clear of infinity and
// moves its value at infinity away from zero and infinity, so the composed
// function has equal numerator and denominator degrees.  Used to exercise
// plan/apply directly, without improve_step's own normalization.
const MobiusMap kBeta = MobiusMap::rotation(2.0);

}  // namespace

TEST_CASE("flipping one finite transition of the clipped cubic") {
  BandSystem e = zktest::t3_bands_clipped();
  ValueWindows f = zktest::t3_windows();
  RealRational r = zktest::t3(4);
  IndexArray target = flip_bins(index_array(r, e, f), {0});

  ImproveResult res = improve_step(r, e, f, target);
  CHECK(res.kappa_before == doctest::Approx(9.0));
  CHECK(res.kappa_after > 9.0);
  CHECK(res.r2.nominal_degree() == 4);
  CHECK(res.r2.actual_degree() == 4);
  CHECK(res.attempts == 1);
  CHECK(res.plan.M.degree() == 0);
  REQUIRE(res.plan.flip_points.size() == 1);
  CHECK(e.transition(e.transition_pos(0)).contains(res.plan.flip_points[0]));
  CHECK(res.plan.tau > 0.0);

  CHECK(membership(e, res.f2, res.r2));
  CHECK(hamming_distance(index_array(res.r2, e, res.f2), target, e) == 0);

  CertifyOptions opt;
  opt.target_class = target;
  Certificate c2 = certify(res.r2, e, res.f2, opt);
  CHECK(c2.kappa == doctest::Approx(res.kappa_after));
  CHECK(c2.invariant_findings().empty());
}

TEST_CASE("a member with interior slack tightens without any flips") {
  BandSystem e = zktest::t3_bands();
  ValueWindows f(Arc(ProjPoint::finite(-1.1), ProjPoint::finite(-0.4)),
                 Arc(ProjPoint::finite(0.4), ProjPoint::finite(1.1)));
  RealRational r = zktest::t3(3);
  REQUIRE(membership(e, f, r));
  IndexArray target = index_array(r, e, f);

  ImproveResult res = improve_step(r, e, f, target);
  CHECK(res.kappa_after > res.kappa_before);
  // The function's own hull is already strictly tighter than the slack
  // windows, so even the first step must clear it.
  CHECK(res.kappa_after > 8.99);
  CHECK(res.plan.flip_points.empty());
  CHECK(res.plan.M.degree() == 0);
  CHECK(membership(e, res.f2, res.r2));
}

TEST_CASE("an optimal member refuses to move") {
  BandSystem e = zktest::t3_bands();
  ValueWindows f = zktest::t3_windows();
  RealRational r = zktest::t3(3);
  IndexArray target = index_array(r, e, f);
  CHECK(code_of([&] { improve_step(r, e, f, target); }) == errc::already_optimal);
}

TEST_CASE("a parity-breaking class refuses to move") {
  BandSystem e = zktest::t3_bands_clipped();
  ValueWindows f = zktest::t3_windows();
  RealRational r = zktest::t3(3);
  IndexArray target = flip_bins(index_array(r, e, f), {0});
  CHECK(code_of([&] { improve_step(r, e, f, target); }) == errc::infeasible_class);
}

TEST_CASE("defect two spends the spare degrees on a positive even factor") {
  BandSystem e = zktest::t3_bands_clipped();
  ValueWindows fh = zktest::t3_windows().transformed(kBeta);
  RealRational rh = compose_target(zktest::t3(5), kBeta);
  REQUIRE(rh.num().degree() == rh.den().degree());
  REQUIRE(!fh.fminus().contains(ProjPoint::infinity()));
  REQUIRE(!fh.fplus().contains(ProjPoint::infinity()));

  Certificate c = certify(rh, e, fh);
  REQUIRE(c.verdict == Verdict::not_certified);
  REQUIRE(c.defect == 2);
  REQUIRE(c.sigma == 0);

  DeformationPlan plan = plan_deformation(rh, c, e, fh);
  CHECK(plan.flip_points.empty());
  CHECK(plan.M.degree() == 2);
  for (double x : {-2.0, -1.0, 0.0, 0.5, 2.0}) CHECK(plan.M.eval(x) > 0.0);
  // One sign change per odd gap; the even gap through infinity needs none.
  CHECK(plan.L.degree() == 8);

  ValueWindows f2 = fh;
  RealRational r2 = rh;
  std::tie(r2, f2) = apply_deformation(rh, plan, e, fh, c.target);
  CHECK(r2.actual_degree() == 5);
  CHECK(f2.kappa() > fh.kappa());
  CHECK(hamming_distance(index_array(r2, e, f2), c.target, e) == 0);
}

TEST_CASE("smaller steps along the same direction stay coprime") {
  BandSystem e = zktest::t3_bands_clipped();
  ValueWindows fh = zktest::t3_windows().transformed(kBeta);
  RealRational rh = compose_target(zktest::t3(4), kBeta);
  IndexArray target = flip_bins(index_array(rh, e, fh), {0});

  CertifyOptions opt;
  opt.target_class = target;
  Certificate c = certify(rh, e, fh, opt);
  REQUIRE(c.verdict == Verdict::not_certified);

  DeformationPlan plan = plan_deformation(rh, c, e, fh);
  auto [r2, f2] = apply_deformation(rh, plan, e, fh, target);
  CHECK(r2.actual_degree() == 4);

  std::vector<double> flips;
  for (const ProjPoint& x : plan.flip_points) flips.push_back(x.value());
  Poly base = mul(plan.M, Poly::from_roots(flips));
  Poly n0 = mul(base, rh.num());
  Poly d0 = mul(base, rh.den());
  for (double tau : {plan.tau / 2, plan.tau / 4, plan.tau / 8}) {
    RealRational rt(sub(n0, scale(plan.p, tau)), sub(d0, scale(plan.q, tau)), 4);
    CHECK(rt.reduced_common_roots() == 0);
    CHECK(rt.actual_degree() == 4);
  }
}

TEST_CASE("the step is reproducible for a fixed seed") {
  BandSystem e = zktest::t3_bands_clipped();
  ValueWindows f = zktest::t3_windows();
  RealRational r = zktest::t3(4);
  IndexArray target = flip_bins(index_array(r, e, f), {1});

  ImproveResult a = improve_step(r, e, f, target, 7);
  ImproveResult b = improve_step(r, e, f, target, 7);
  CHECK(a.plan.tau == b.plan.tau);
  REQUIRE(a.r2.num().degree() == b.r2.num().degree());
  REQUIRE(a.r2.den().degree() == b.r2.den().degree());
  for (int k = 0; k <= a.r2.num().degree(); ++k) CHECK(a.r2.num()[k] == b.r2.num()[k]);
  for (int k = 0; k <= a.r2.den().degree(); ++k) CHECK(a.r2.den()[k] == b.r2.den()[k]);
}

TEST_CASE("hull windows agree with an independent image-hull computation") {
  std::mt19937_64 rng(20260814);
  int done = 0;
  while (done < 50) {
    auto prob = zktest::random_member(rng, 3);
    if (!prob) continue;
    auto tight = zktest::tight_windows(prob->bands, prob->r);
    if (!tight) continue;
    ValueWindows hull = hull_windows(prob->bands, prob->r);
    CHECK(fubini_study_distance(hull.d0m(), tight->d0m()) <= 1e-9);
    CHECK(fubini_study_distance(hull.d1m(), tight->d1m()) <= 1e-9);
    CHECK(fubini_study_distance(hull.d0p(), tight->d0p()) <= 1e-9);
    CHECK(fubini_study_distance(hull.d1p(), tight->d1p()) <= 1e-9);
    CHECK(hull.kappa() == doctest::Approx(tight->kappa()).epsilon(1e-9));
    // The hull is the tightest admissible choice, so it can only beat the
    // padded windows the member was generated with.
    CHECK(hull.kappa() >= prob->windows.kappa() - 1e-9);
    ++done;
  }
}
