#pragma once

#include <complex>
#include <vector>

#include <boost/rational.hpp>

#include "orbispec/signature.hpp"

namespace orbispec {

using Rat = boost::rational<long long>;

double bernoulli2(double x);        // B2(x) = x^2 - x + 1/6
Rat frac_part(const Rat& x);        // x - floor(x), in [0,1)
Rat bernoulli2_frac(const Rat& x);  // B2({x}) = {x}^2 - {x} + 1/6, exact

// Root-of-unity sums with w = exp(2 pi i / m).  The twisted quadratic sum
//   S(m, k) = sum_{i=1}^{m-1} w^{i(k+1)} / (1 - w^i)^2
// is real and has the exact closed form
//   S(m, k) = -(m^2 - 1)/12 + kbar (m - kbar)/2,   kbar = k mod m in [0, m),
// which can be rewritten as -(m^2/2) (B2({k/m}) - 1/(6 m^2)).  The report
// carries the direct complex evaluation next to the closed form, together
// with the two sub-identities obtained by differentiating
// log prod (x - w^i) = log(1 + x + ... + x^{m-1}) at x = 1:
//   (i)  sum_{i=1}^{m-1} 1/(1 - w^i)        = (m - 1)/2
//   (ii) sum_{i=1}^{m-1} w^i/(1 - w^i)^2    = -(m^2 - 1)/12
struct RootSumReport {
  int m = 0;
  int k = 0;
  std::complex<double> direct;  // floating evaluation of S(m, k)
  Rat closed_rational{0};       // exact closed form
  double closed = 0.0;
  double difference = 0.0;      // |direct - closed|
  double err_linear = 0.0;      // identity (i), |direct - closed|
  double err_quadratic = 0.0;   // identity (ii), |direct - closed|
};
// Throws std::logic_error if the Bernoulli rewriting of the closed form
// disagrees with the residue form (exact rational comparison; cannot happen).
RootSumReport rootsum_identity(int m, int k);

// Per-cone curvature coefficient: -(m/4pi) (B2({k/m}) - 1/(6 m^2)).
// Symmetric under k -> m - k and periodic in k with period m.  Equals
// (1/(2 pi m)) S(m, k) with S from rootsum_identity.
Rat elliptic_coefficient_rational(int m, int k);  // coefficient = rational / pi
double elliptic_coefficient(int m, int k);

struct ConeCoefficient {
  int order = 2;      // m
  Rat rational{0};    // coefficient = rational / pi
  double value = 0.0;
};

// First Chern form decomposition of the determinant line bundle of weight k
// over the standard Kaehler forms:
//   c1 = wp * omega_WP + cusp * omega_cusp + sum_j cones[j] * omega_ell,j
// with wp = wp_rational / pi^2, wp_rational = (6k^2 - 6k + 1)/12, and
// cusp = -1/9 for every k and every signature.  The cone coefficients use
// the parameter a = k - 1 for k >= 1 and a = -k for k <= 0 (the weights k
// and -(k-1) = 1-k give isometric bundles, and a(k) = a(1-k) makes the
// duality exact by construction).
struct ChernCoefficients {
  int k = 0;
  Rat wp_rational{0};
  double wp = 0.0;
  Rat cusp_rational{0};
  double cusp = 0.0;
  std::vector<ConeCoefficient> cones;  // one entry per cone point, signature order
};
ChernCoefficients chern_coefficients(const Signature& sig, int k);

// equality of the exact rational data (k itself may differ: duality pairs k, 1-k)
bool coefficients_equal(const ChernCoefficients& x, const ChernCoefficients& y);

// dim of the space of holomorphic k-differentials:
// k < 0: 0;  k = 0: 1;  k = 1: g;  k > 1:
//   (2k - 1)(g - 1) + (k - 1) n + sum_i floor(k (1 - 1/m_i)).
long long dim_omega_k(const Signature& sig, int k);

struct AreaResult {
  Rat multiple_of_pi{0};  // area = multiple_of_pi * pi
  double value = 0.0;
};
AreaResult area(const Signature& sig);

// Index-2 comparison between the (0;1;2,2,2) quotient and its (1;1) torus
// cover: the cover's Kaehler forms push down to twice the quotient's, so in
// 2 c1(quotient, k) - c1(cover, k) the area and cusp terms cancel exactly
// and only the cone terms survive, each equal to (-1)^k/(8 pi).
struct PairRelationReport {
  int k = 0;
  Rat wp_residual{0};    // exact 0
  Rat cusp_residual{0};  // exact 0
  std::vector<ConeCoefficient> cone_terms;  // doubled quotient coefficients
  Rat expected_cone{0};  // (-1)^k / 8, cone coefficient = expected_cone / pi
};
PairRelationReport example_0_1_222_relations(int k);

}  // namespace orbispec
