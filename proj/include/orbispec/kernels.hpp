#pragma once

#include <array>
#include <complex>
#include <functional>
#include <vector>

#include "orbispec/groups.hpp"
#include "orbispec/moebius.hpp"

namespace orbispec {

// ---------------------------------------------------------------------------
// Free resolvent kernel at s = 2
// ---------------------------------------------------------------------------

// Legendre function of the second kind, degree 1, with the argument passed
// as x - 1: evaluating through cosh(d) - 1 keeps full precision down to
// d ~ 1e-8 where forming cosh(d) itself would round to 1.
//   Q1(x) = (x/2) log((x+1)/(x-1)) - 1        (log branch, x - 1 <= 9)
//         = sum_{k>=1} x^{-2k}/(2k+1)         (series branch, x - 1 > 9)
double legendre_q1_m1(double x_m1);

// d/dx Q1(x) = (1/2) log((x+1)/(x-1)) - x/(x^2-1), same shifted argument.
double legendre_q1_prime_m1(double x_m1);

// Kernel of (Delta0 + 1/2)^{-1} on the hyperbolic plane for the convention
// Delta0 = -(y^2/4)(d_xx + d_yy): value (2/pi) Q1(cosh d).  Positive and
// strictly decreasing in d; behaves like -(2/pi) log d + (2/pi)(log 2 - 1)
// as d -> 0 and like (2/pi)(4/3) e^{-2d} as d -> infinity.
double free_resolvent_s2(double d);
double free_resolvent_s2_cosh_m1(double cosh_d_m1);

// Adaptive Simpson quadrature with Richardson acceptance (|S2-S1| < 15 tol).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol);

// Normalization self-check: for the geodesic disk of radius eps the exact
// flux identity
//   -(pi/2) sinh(eps) G'(eps) + pi * int_0^eps G(d) sinh(d) dd = 1
// holds for every eps > 0 (boundary flux of Delta0 plus the +1/2 area term
// against the hyperbolic measure).  G' is taken by a 5-point finite
// difference and the integral by adaptive Simpson, so the check is
// independent of the closed form's algebra.  Returns the left-hand side.
double free_kernel_flux(double eps);

// 5-point finite-difference Delta0 = -(y^2/4)(d_xx + d_yy) at z, step h.
template <typename F>
double delta0_fd(F&& f, cplx z, double h) {
  const double x = z.real(), y = z.imag();
  const double lap = (f(cplx(x + h, y)) + f(cplx(x - h, y)) + f(cplx(x, y + h)) +
                      f(cplx(x, y - h)) - 4.0 * f(z)) /
                     (h * h);
  return -(y * y / 4.0) * lap;
}

// ---------------------------------------------------------------------------
// Truncated automorphic sums
// ---------------------------------------------------------------------------

struct TruncatedSumResult {
  double value = 0;
  int L = 0;           // word-ball radius used
  long long terms = 0;  // summands actually accumulated
  double tail = 0;      // empirical tail: |value(L) - value(L - 2)|
};

// Automorphic Green function at s = 2: G(z,z') = sum over the word ball of
// free_resolvent_s2(d(z, gamma z')).  Terms are accumulated in ascending
// distance order (ties broken by ball index) with compensated summation.
class GreenEvaluator {
 public:
  GreenEvaluator(const PresentedGroup& g, int L);

  // half-plane points; throws std::domain_error if z comes within hyperbolic
  // distance 1e-6 of the truncated orbit of z' (diagonal singularity)
  TruncatedSumResult value(cplx z, cplx zp) const;

  int radius() const { return L_; }
  long long orbit_size() const { return (long long)maps_.size(); }

 private:
  std::vector<std::array<double, 4>> maps_;
  std::vector<int> depths_;
  int L_;
};

TruncatedSumResult green_function(const PresentedGroup& g, cplx z, cplx zp, int L);

// Fixpoint of the j-th cone generator (half-plane coordinates).
cplx cone_fixpoint(const PresentedGroup& g, std::size_t j);

// Weight function of the elliptic metric at cone point j: the Green function
// evaluated at (z_j, z) where z_j is the fixpoint of T_j.
double elliptic_kernel(const PresentedGroup& g, std::size_t j, cplx z, int L);

// ---------------------------------------------------------------------------
// Eisenstein series
// ---------------------------------------------------------------------------

// E(z,s) = sum_{<S>\Gamma} Im(sigma^{-1} gamma z)^s.  Each coset contributes
// through the bottom row (c,d) of sigma^{-1} gamma sigma: writing
// zeta = sigma^{-1} z, the term is (Im zeta)^s / |c zeta + d|^{2s}.
//
// The frame entry points take zeta directly (cusp at infinity, width 1).
// value_frame strip-reduces Re zeta to [-1/2, 1/2] by an exact float
// subtraction, so zeta and zeta + 1 produce bitwise-identical sums: the
// cusp-generator invariance E(S z, s) = E(z, s) is exact, not approximate.
// value_frame_raw skips the reduction; finite-difference stencils need it,
// as a reduction jump inside the stencil would inject a false residual.
class EisensteinEvaluator {
 public:
  EisensteinEvaluator(const PresentedGroup& g, int L);

  TruncatedSumResult value(cplx z, double s) const;        // base coordinates
  TruncatedSumResult value_frame(cplx zeta, double s) const;
  TruncatedSumResult value_frame_raw(cplx zeta, double s) const;

  long long coset_count() const { return (long long)rows_.size(); }
  const CuspData& cusp() const { return cusp_; }
  int radius() const { return L_; }

 private:
  TruncatedSumResult accumulate(cplx zeta, double s) const;
  std::vector<std::array<double, 2>> rows_;  // bottom rows, canonical sign
  std::vector<int> depths_;
  CuspData cusp_;
  int L_;
};

TruncatedSumResult eisenstein(const PresentedGroup& g, cplx z, double s, int L);

// ---------------------------------------------------------------------------
// Degeneration family T_m and the Fay ratio
// ---------------------------------------------------------------------------

// T_m = [[cos(2pi/m), (m/2pi) sin(2pi/m)], [-(2pi/m) sin(2pi/m), cos(2pi/m)]],
// elliptic of order m with fixpoint i m/(2pi); T_m -> [[1,1],[0,1]] as
// m -> infinity.
MoebiusMap tm_family(int m);

// The same element assembled as C_m O_m C_m^{-1} with the rotation O_m about
// i and the scaling C_m = [[0, sqrt(m/2pi)], [-sqrt(2pi/m), 0]]; used to
// cross-check the closed form.
MoebiusMap tm_family_conjugated(int m);

// Fixpoint i m/(2pi).  For m >= 3 it is computed from the matrix via
// fixpoint_elliptic; for m = 2 the matrix is -I in PSL(2,R) (every point is
// fixed), so the family's structural fixpoint C_m(i) is returned instead.
cplx tm_fixpoint(int m);

// Fay asymptotic ratio in the cusp frame (cusp at infinity, width 1):
//   ratio = (3Y/4) G(iY, zp; 2) / E(zp, 2),
// which tends to 1 as Y grows, with error O(e^{-2 pi Y}) plus truncation.
// The Green value is assembled coset-by-coset: Gamma is partitioned into
// S^n gamma_rep, each coset contributing a lattice of translates
// x_rep + n*direction whose kernel terms decay like n^{-4}; the n-sum is cut
// adaptively at 1e-16.
struct FayReport {
  double ratio = 0;
  double green_value = 0;
  double eis_value = 0;
  double green_tail = 0;  // |green(L) - green(L-2)|
  double eis_tail = 0;
  long long terms = 0;    // kernel summands (coset x translate pairs)
};

FayReport fay_ratio(const PresentedGroup& g, cplx zp_frame, double Y, int L);

}  // namespace orbispec
