#pragma once

namespace zk::tol {

// Point coincidence on the projective line, Fubini-Study metric.
inline constexpr double point = 1e-10;
// Band-image containment slack used by membership refinement.
inline constexpr double membership = 1e-6;
// Matching radius when pairing numerator/denominator roots for reduction.
inline constexpr double root = 1e-8;
// Extremal-point detection: distance of a value to the window boundary.
// Overridable per call; the CLI also honors the ZK_TOL environment variable.
inline constexpr double extremal = 1e-8;
// Matching a lifted phase against a pi-translate of the anchor windows.
inline constexpr double anchor = 1e-7;
// Relative determinant floor below which a Mobius map is degenerate.
inline constexpr double mobius_det = 1e-12;
// Relative residual accepted from the functional-equation solver.
inline constexpr double achiezer_residual = 1e-10;
// Newton polish target for polynomial roots, relative to coefficient scale.
inline constexpr double root_polish = 1e-12;

// Adaptive phase lift: maximum bisection depth before giving up.
inline constexpr int lift_max_depth = 40;

}  // namespace zk::tol
