#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "orbispec/moebius.hpp"

namespace orbispec {

// ---------------------------------------------------------------------------
// Local data at a cone point of order m (disk model, cone point at 0)
// ---------------------------------------------------------------------------

// Harmonic Beltrami data truncated to J terms:
//   mu(u) = ((1-|u|^2)^2/4) * sum_{j=1..J} conj(a_{jm}) conj(u)^{jm-2},
// and likewise nu from b.  Under u -> omega u with omega = e^{2 pi i/m} each
// monomial picks up omega^{-(jm-2)} = omega^2, so mu(omega u) = omega^2 mu(u):
// the rotation weight is 2, matching the projector P phi(u) =
// (1/m) sum_j phi(omega^j u) omega^{-2j} which keeps exactly the weight-2
// component.
struct LocalBeltramiData {
  int m = 2;
  std::vector<cplx> a;  // a[j-1] holds a_{jm}
  std::vector<cplx> b;  // b[j-1] holds b_{jm}

  cplx mu(cplx u) const;
  cplx nu(cplx u) const;
};

// Weight-2 rotation average of an arbitrary smooth phi: the result satisfies
// phi(omega u) = omega^2 phi(u) exactly (numerically: spurious Fourier modes
// at round-off level).
std::function<cplx(cplx)> equivariant_projector(std::function<cplx(cplx)> phi, int m);

// Samples phi on the circle |u| = r and takes the discrete Fourier transform
// of (4/(1-r^2)^2) phi.  A frequency f corresponds to the coefficient index
// n = 2 - f of the underlying series; all coefficients with n not a multiple
// of m are "spurious".  Returns the largest spurious magnitude.
// Requires samples >= 4 * max_index (throws std::invalid_argument below).
struct EquivarianceReport {
  double max_spurious = 0;
  double max_total = 0;  // largest magnitude over all frequencies
  int samples = 0;
};
EquivarianceReport equivariance_fourier_check(const std::function<cplx(cplx)>& phi, int m,
                                              double r, int max_index, int samples);

// ---------------------------------------------------------------------------
// Radial mode equation
// ---------------------------------------------------------------------------

// Power-series solution of the mode-n radial equation
//   -((1-r^2)^2/16) (f'' + f'/r - n^2 f / r^2) + f/2 = S_n(r),
//   S_n(r) = ((1-r^2)^4/16) sum_j conj(a_{jm}) b_{jm+n} r^{2jm+n-4},
// regular at r = 0: coefficients vanish below r^{|n|}, c_{|n|} is the free
// constant, and the recursion
//   c_{p+2}((p+2)^2 - n^2) = 2 c_p (p^2 - n^2) - c_{p-2}((p-2)^2 - n^2)
//                             + 8 c_p - 16 s_p
// (s_p = coefficient of r^p in S_n) determines the rest.  The series
// converges on r < 1; the equation is singular at r = 1.
struct RadialSolution {
  int n = 0;
  LocalBeltramiData data;   // retained so the ODE cross-check can rebuild S_n
  std::vector<cplx> coeff;  // coeff[t] multiplies r^{|n| + 2t}
  int leading_exponent = 0;  // |n|
  cplx c0{};                 // n = 0: constant term (equals the input)
  cplx c2{};                 // n = 0: r^2 coefficient from the recursion
  double r_max = 1.0;        // open radius of validity

  cplx eval(double r) const;
  cplx eval_derivative(double r) const;
  cplx source(double r) const;  // S_n(r)
};

// Solves the mode equation by power series with J_terms lattice coefficients.
// n must be a multiple of m.  While assembling the source the bare exponents
// are checked against the 2jm+n-4 pattern and, for n = 0, any odd-power
// amplitude above 1e-12 is rejected.
RadialSolution mode_series_solve(const LocalBeltramiData& data, int n, double c0,
                                 int J_terms);

// Independent verification: integrates the same equation with adaptive
// Runge-Kutta from series initial data at r0 and returns the maximum
// |series - integrator| on [r0, r1].  r1 > 0.9 is rejected (the r = 1
// singularity destabilizes the integrator).
double mode_ode_crosscheck(const RadialSolution& sol, double r0, double r1);

}  // namespace orbispec
