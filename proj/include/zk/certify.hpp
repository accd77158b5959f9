#pragma once

#include <optional>
#include <string>
#include <vector>

#include "zk/stiefel.hpp"

namespace zk {

enum class Verdict { optimal_certified, not_certified, infeasible_class };

std::string verdict_name(Verdict v);

// Band point mapped onto the window boundary; parity 0 when the value sits on
// the window start, 1 on the window end.
struct ExtremalPoint {
  ProjPoint x;
  int band_pos = 0;
  int band_id = 0;
  int parity = 0;
  BandType band_type = BandType::minus;
  double deviation = 0.0;  // Fubini-Study distance of the value to the endpoint hit
};

// Open arc between cyclically consecutive extremal points.  With fewer than
// two extremal points there is one degenerate gap carrying every transition;
// it counts as even.
struct GapInfo {
  int from = -1, to = -1;        // extremal indices; -1 in the degenerate case
  bool odd = false;              // bounding parities differ
  int delta_sigma = 0;           // binary defect parity over the transitions inside
  std::vector<int> transitions;  // transition ids inside the gap
};

struct CertifyOptions {
  double eps_ext = tol::extremal;    // window-boundary attainment tolerance
  double eps_mem = tol::membership;  // membership slack
  double merge_eps = 1e-7;           // extremal dedup radius (Fubini-Study)
  std::optional<IndexArray> target_class;  // default: the function's own array
};

// The transform-invariant payload of a certificate.
struct CertificateCore {
  Verdict verdict = Verdict::not_certified;
  int alternation = 0;
  int sigma0 = 0;
  int sigma1 = 0;
  int sigma = 0;
  int defect = 0;
  int nominal_degree = 0;
  int actual_degree = 0;
  int rhs = 0;
  bool operator==(const CertificateCore&) const = default;
};

struct Certificate {
  Verdict verdict = Verdict::not_certified;
  std::string reason;  // set when not certified or infeasible
  double kappa = 0.0;
  int nominal_degree = 0;
  int actual_degree = 0;
  int defect = 0;
  std::vector<ExtremalPoint> extremals;
  std::vector<GapInfo> gaps;
  int alternation = 0;  // number of odd gaps
  int malozemov = 0;    // linear parity-block count, for comparison reports
  int sigma0 = 0;       // defect parities summed over even gaps
  int sigma1 = 0;       // summed over odd gaps
  int sigma = 0;        // binary Hamming distance to the target class
  int rhs = 0;          // nominal + 2 + actual - sigma0 + sigma1
  IndexArray observed;  // the function's own array, canonical convention
  IndexArray target;    // the class certified against, canonical convention
  bool window_attained = false;  // all four window endpoints hit by extremals
  double eps_ext = 0.0;

  CertificateCore core() const;
  // Parity and bound laws every feasible certificate must satisfy; returns
  // human-readable findings, empty when all hold.
  std::vector<std::string> invariant_findings() const;
};

// All points of the bands carried onto the boundary of their value window,
// in cyclic order (band order, then offset within the band).  Requires
// membership within opt.eps_mem (errc::membership_violated).
std::vector<ExtremalPoint> extremal_points(const RealRational& r, const BandSystem& e,
                                           const ValueWindows& f, const CertifyOptions& opt = {});

// Classical linear alternation count: extremal points sorted by real
// coordinate (the point at infinity last), maximal runs of equal parity.
int malozemov_count(const std::vector<ExtremalPoint>& ext);

// Cyclic alternation certificate of r against a class array over (e, f).
Certificate certify(const RealRational& r, const BandSystem& e, const ValueWindows& f,
                    const CertifyOptions& opt = {});

// Parity law for coincidence counting: the number of solutions of
// r(t) = r2(t) on the arc from e1.x to e2.x, counted with tangency
// multiplicity (zeros of num(r) den(r2) - den(r) num(r2), including the point
// at infinity via degree drop), has the same parity as
// e1.parity + e2.parity + sum over enclosed transitions of both binary
// indexes.  Both functions must be members over (e, f) and their values must
// differ at e1.x and e2.x (errc::value_coincidence_at_endpoint).
// Returns true when the parities agree.
bool coincidence_parity_check(const RealRational& r, const RealRational& r2,
                              const ExtremalPoint& e1, const ExtremalPoint& e2,
                              const BandSystem& e, const ValueWindows& f);

}  // namespace zk
