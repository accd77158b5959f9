#pragma once

#include "zk/poly.hpp"

namespace zk {

struct AchiezerSolution {
  Poly p, q;
  double residual = 0.0;  // max-norm of p*Q - q*P - S relative to the norm of S
};

// Solve the polynomial equation S = p*Q - q*P for P, Q coprime of equal
// degree n >= 1 and arbitrary S of degree m; the returned p, q have degree
// at most max(m - n, n - 1).  Values of S/Q are interpolated at the zeros of
// P and of S/P at the zeros of Q, confluently at multiple zeros; conjugate
// root pairs are handled in complex arithmetic and the result symmetrized.
// When interpolation leaves a residual above tol::achiezer_residual the
// equation is re-solved by least squares under the same degree cap, and a
// still-failing residual raises errc::ill_conditioned.  Near-common roots of
// P and Q raise errc::not_coprime.
AchiezerSolution solve_achiezer(const Poly& P, const Poly& Q, const Poly& S);

}  // namespace zk
