#pragma once

#include <map>
#include <optional>

#include "zk/bands.hpp"

namespace zk {

// Which lifted copy of F+ is paired with the lifted F- to form the covering
// niche.  Canonical: the F+ copy that follows the F- copy inside one
// half-turn.  Flipped: the antipodal F+ copy.  Binary indexes differ between
// the two conventions exactly on transitions bounded by bands of different
// type.
enum class AnchorConvention { canonical, flipped };

// Lift of the value windows to the real line: two disjoint intervals within
// [phi0, phi0 + pi), phi0 the representative angle of d0(F-); the flipped
// convention shifts the plus interval by pi.
struct LiftedWindows {
  double minus_lo = 0.0, minus_hi = 0.0;
  double plus_lo = 0.0, plus_hi = 0.0;
  AnchorConvention convention = AnchorConvention::canonical;

  std::pair<double, double> interval(BandType t) const {
    return t == BandType::plus ? std::pair{plus_lo, plus_hi} : std::pair{minus_lo, minus_hi};
  }
  // Integer k with phi - k*pi inside interval(t), within eps; nullopt if none.
  std::optional<long> translate_index(double phi, BandType t, double eps = tol::anchor) const;
};

LiftedWindows lift_windows(const ValueWindows& f,
                           AnchorConvention conv = AnchorConvention::canonical);

// Continuous phase lift along a transition arc, normalized so the phase at
// the arc start falls inside the lifted windows (start_type component).
PhaseLift lift_phase(const RealRational& r, const Arc& t, const ValueWindows& f,
                     BandType start_type, AnchorConvention conv = AnchorConvention::canonical);

struct IndexEntry {
  int bin = 0;
  std::optional<long> integer;
};

struct IndexArray {
  std::map<int, IndexEntry> entries;  // keyed by persistent transition id
  AnchorConvention convention = AnchorConvention::canonical;

  int binary_sum_mod2() const;
  bool operator==(const IndexArray& o) const;
};

// Transition index across transition tpos: phase displacement from the niche
// in half-turns.  Requires both adjacent band endpoint values inside their
// windows (errc::anchor_mismatch otherwise).
IndexEntry transition_index(const RealRational& r, const BandSystem& e, std::size_t tpos,
                            const ValueWindows& f,
                            AnchorConvention conv = AnchorConvention::canonical);

IndexArray index_array(const RealRational& r, const BandSystem& e, const ValueWindows& f,
                       AnchorConvention conv = AnchorConvention::canonical);

// Rewrite an array in the other convention over the same band system.
IndexArray with_convention(const IndexArray& a, const BandSystem& e, AnchorConvention conv);

// Hamming distance of binary indexes (arrays normalized to canonical first).
int hamming_distance(const IndexArray& a, const IndexArray& b, const BandSystem& e);

// Class-array transport to the transformed problem (alpha e, beta f).  Binary
// indexes ride along by transition id; an orientation-reversing target map
// exchanges the two anchor conventions, so bins flip on mixed-type
// transitions.  Integer components do not transport and are dropped.
IndexArray transport_class(const IndexArray& a, const BandSystem& e, const MobiusMap& alpha,
                           const MobiusMap& beta);

// Zero/pole insertion law: multiplying R by (x + eps)/x, with 0 and -eps
// interior to transition tpos, shifts that integer index by -sign(eps R(0)).
// Both indexes are computed over slightly enlarged windows.  Returns true
// when the law holds.
bool lemma1_shift_check(const RealRational& r, const BandSystem& e, std::size_t tpos, double eps,
                        const ValueWindows& f);

}  // namespace zk
