#include "orbispec/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "orbispec/summation.hpp"

namespace orbispec {

namespace {

constexpr double kPi = std::numbers::pi;

// cosh(1e-6) - 1: points closer than hyperbolic distance 1e-6 count as a
// diagonal collision
constexpr double kCollisionCoshM1 = 5.0e-13;

cplx apply_d4(const std::array<double, 4>& m, cplx z) {
  return (m[0] * z + m[1]) / (m[2] * z + m[3]);
}

void require_halfplane(cplx z, const char* name) {
  if (!(z.imag() > 0))
    throw std::invalid_argument(std::string(name) + " must lie in the upper half-plane");
}

}  // namespace

// ---------------------------------------------------------------------------
// free kernel
// ---------------------------------------------------------------------------

double legendre_q1_m1(double u) {
  if (!(u > 0)) throw std::invalid_argument("legendre_q1_m1 requires x > 1");
  if (u <= 9.0) {
    // (x/2) log((x+1)/(x-1)) - 1 with x = 1 + u; both logs are safe because
    // u enters directly, no cancellation
    return 0.5 * (1.0 + u) * (std::log(2.0 + u) - std::log(u)) - 1.0;
  }
  // series sum_{k>=1} x^{-2k}/(2k+1), ratio x^{-2} < 1e-2
  const double x = 1.0 + u;
  const double r = 1.0 / (x * x);
  double power = r;
  double sum = 0.0;
  for (int k = 1; k < 60; ++k) {
    const double term = power / (2.0 * k + 1.0);
    sum += term;
    if (term < 1e-20 * sum) break;
    power *= r;
  }
  return sum;
}

double legendre_q1_prime_m1(double u) {
  if (!(u > 0)) throw std::invalid_argument("legendre_q1_prime_m1 requires x > 1");
  // (1/2) log((x+1)/(x-1)) - x/(x^2-1); x^2 - 1 = u (2 + u)
  const double x = 1.0 + u;
  return 0.5 * (std::log(2.0 + u) - std::log(u)) - x / (u * (2.0 + u));
}

double free_resolvent_s2(double d) {
  if (!(d > 0)) throw std::invalid_argument("free_resolvent_s2 requires d > 0");
  const double sh = std::sinh(0.5 * d);
  return free_resolvent_s2_cosh_m1(2.0 * sh * sh);  // cosh d - 1 = 2 sinh^2(d/2)
}

double free_resolvent_s2_cosh_m1(double cosh_d_m1) {
  return (2.0 / kPi) * legendre_q1_m1(cosh_d_m1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  struct Rec {
    const std::function<double(double)>& f;
    double run(double a, double b, double fa, double fm, double fb, double whole,
               double tol, int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double h = b - a;
      const double left = (h / 12.0) * (fa + 4.0 * flm + fm);
      const double right = (h / 12.0) * (fm + 4.0 * frm + fb);
      const double s2 = left + right;
      if (depth <= 0 || std::abs(s2 - whole) < 15.0 * tol)
        return s2 + (s2 - whole) / 15.0;
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
    }
  };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = ((b - a) / 6.0) * (fa + 4.0 * fm + fb);
  return Rec{f}.run(a, b, fa, fm, fb, whole, tol, 40);
}

double free_kernel_flux(double eps) {
  if (!(eps > 0)) throw std::invalid_argument("free_kernel_flux requires eps > 0");
  const double h = eps / 100.0;
  auto G = [](double d) { return free_resolvent_s2(d); };
  // 5-point first derivative, O(h^4)
  const double gp =
      (-G(eps + 2 * h) + 8.0 * G(eps + h) - 8.0 * G(eps - h) + G(eps - 2 * h)) / (12.0 * h);
  const double area = adaptive_simpson(
      [&](double d) { return d <= 0 ? 0.0 : G(d) * std::sinh(d); }, 0.0, eps, 1e-10);
  return -(kPi / 2.0) * std::sinh(eps) * gp + kPi * area;
}

// ---------------------------------------------------------------------------
// automorphic Green function
// ---------------------------------------------------------------------------

GreenEvaluator::GreenEvaluator(const PresentedGroup& g, int L) : L_(L) {
  if (L < 2) throw std::invalid_argument("green truncation radius must be >= 2");
  auto ball = word_ball(g, L);
  maps_.reserve(ball.size());
  depths_.reserve(ball.size());
  for (const auto& e : ball) {
    maps_.push_back(e.map.entries());
    depths_.push_back((int)e.word.size());
  }
}

TruncatedSumResult GreenEvaluator::value(cplx z, cplx zp) const {
  require_halfplane(z, "z");
  require_halfplane(zp, "z'");
  struct Term {
    double cm1;
    int depth;
    std::size_t idx;
  };
  std::vector<Term> terms;
  terms.reserve(maps_.size());
  for (std::size_t i = 0; i < maps_.size(); ++i) {
    const cplx w = apply_d4(maps_[i], zp);
    terms.push_back({cosh_distance_m1(z, w), depths_[i], i});
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
    if (a.cm1 != b.cm1) return a.cm1 < b.cm1;
    return a.idx < b.idx;
  });
  if (!terms.empty() && terms.front().cm1 < kCollisionCoshM1)
    throw std::domain_error(
        "orbit collision: z lies within hyperbolic distance 1e-6 of the orbit of z'");
  CompensatedSum full, part;
  for (const auto& t : terms) {
    const double v = free_resolvent_s2_cosh_m1(t.cm1);
    full.add(v);
    if (t.depth <= L_ - 2) part.add(v);
  }
  TruncatedSumResult r;
  r.value = full.value();
  r.L = L_;
  r.terms = (long long)terms.size();
  r.tail = std::abs(full.value() - part.value());
  return r;
}

TruncatedSumResult green_function(const PresentedGroup& g, cplx z, cplx zp, int L) {
  return GreenEvaluator(g, L).value(z, zp);
}

cplx cone_fixpoint(const PresentedGroup& g, std::size_t j) {
  if (j >= g.cone_maps.size())
    throw std::invalid_argument("group " + g.id + " has no cone point with index " +
                                std::to_string(j));
  return fixpoint_elliptic(g.cone_maps[j]);
}

double elliptic_kernel(const PresentedGroup& g, std::size_t j, cplx z, int L) {
  return green_function(g, cone_fixpoint(g, j), z, L).value;
}

// ---------------------------------------------------------------------------
// Eisenstein series
// ---------------------------------------------------------------------------

EisensteinEvaluator::EisensteinEvaluator(const PresentedGroup& g, int L) : L_(L) {
  if (!g.cusp) throw std::invalid_argument("group " + g.id + " has no cusp");
  cusp_ = *g.cusp;
  auto reps = cusp_coset_reps_detailed(g, L);
  rows_.reserve(reps.size());
  depths_.reserve(reps.size());
  for (const auto& r : reps) {
    rows_.push_back({r.frame[2], r.frame[3]});
    depths_.push_back(r.depth);
  }
}

TruncatedSumResult EisensteinEvaluator::accumulate(cplx zeta, double s) const {
  const double x = zeta.real(), y = zeta.imag();
  CompensatedSum full, part;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const double c = rows_[i][0], d = rows_[i][1];
    const double cx_d = c * x + d, cy = c * y;
    const double den = cx_d * cx_d + cy * cy;  // |c zeta + d|^2
    const double term = std::pow(y / den, s);
    full.add(term);
    if (depths_[i] <= L_ - 2) part.add(term);
  }
  TruncatedSumResult r;
  r.value = full.value();
  r.L = L_;
  r.terms = (long long)rows_.size();
  r.tail = std::abs(full.value() - part.value());
  return r;
}

TruncatedSumResult EisensteinEvaluator::value_frame_raw(cplx zeta, double s) const {
  if (!(s > 1)) throw std::invalid_argument("eisenstein requires s > 1");
  require_halfplane(zeta, "zeta");
  return accumulate(zeta, s);
}

TruncatedSumResult EisensteinEvaluator::value_frame(cplx zeta, double s) const {
  if (!(s > 1)) throw std::invalid_argument("eisenstein requires s > 1");
  require_halfplane(zeta, "zeta");
  // exact float reduction of Re zeta to [-1/2, 1/2]: zeta and zeta +- 1
  // reduce to bitwise-identical inputs, so the unit translation (the cusp
  // generator in this frame) leaves the sum exactly invariant
  const double xr = zeta.real() - std::nearbyint(zeta.real());
  return accumulate(cplx(xr, zeta.imag()), s);
}

TruncatedSumResult EisensteinEvaluator::value(cplx z, double s) const {
  require_halfplane(z, "z");
  return value_frame(cusp_.sigma_inv.apply(z), s);
}

TruncatedSumResult eisenstein(const PresentedGroup& g, cplx z, double s, int L) {
  return EisensteinEvaluator(g, L).value(z, s);
}

// ---------------------------------------------------------------------------
// T_m family
// ---------------------------------------------------------------------------

MoebiusMap tm_family(int m) {
  if (m < 2) throw std::invalid_argument("tm_family requires m >= 2");
  const double th = 2.0 * kPi / m;
  const double c = std::cos(th), s = std::sin(th);
  return MoebiusMap::from_reals(c, (m / (2.0 * kPi)) * s, -(2.0 * kPi / m) * s, c);
}

MoebiusMap tm_family_conjugated(int m) {
  if (m < 2) throw std::invalid_argument("tm_family_conjugated requires m >= 2");
  const double p = std::sqrt(m / (2.0 * kPi));
  const double th = 2.0 * kPi / m;
  MoebiusMap C = MoebiusMap::from_reals(0.0, p, -1.0 / p, 0.0);
  MoebiusMap O = MoebiusMap::from_reals(std::cos(th), std::sin(th), -std::sin(th), std::cos(th));
  return C * O * C.inverse();
}

cplx tm_fixpoint(int m) {
  if (m < 2) throw std::invalid_argument("tm_fixpoint requires m >= 2");
  if (m == 2) return cplx(0.0, 1.0 / kPi);  // T_2 = -I fixes everything; C_2(i)
  // The generic elliptic fixpoint formula divides by sqrt(4 - tr^2), which
  // cancels catastrophically as m grows (tr -> 2, relative error ~ eps/th^2);
  // at m ~ 200 that alone costs ~1e-12.  Here a = d exactly (both cos th), so
  // the fixpoint reduces to i*sqrt(-b/c), where sin th cancels symbolically:
  // -b/c = (m/2pi)^2 to a few ulp.
  const MoebiusMap t = tm_family(m);
  return cplx(0.0, std::sqrt(-t.b() / t.c()));
}

// ---------------------------------------------------------------------------
// Fay ratio
// ---------------------------------------------------------------------------

FayReport fay_ratio(const PresentedGroup& g, cplx zp_frame, double Y, int L) {
  if (!g.cusp) throw std::invalid_argument("group " + g.id + " has no cusp");
  require_halfplane(zp_frame, "z'");
  if (!(Y > zp_frame.imag() + 1.0))
    throw std::invalid_argument("fay_ratio requires Y > Im z' + 1");

  const auto reps = cusp_coset_reps_detailed(g, L);
  const double dir = (double)g.cusp->direction;
  constexpr double kCut = 1e-16;

  // Green part: Gamma = union over cosets of S^n gamma_rep; in the frame S
  // is the unit translation, so coset rep with image w contributes the
  // lattice w + n*dir, n in Z, against the base point iY.
  CompensatedSum green_full, green_part;
  CompensatedSum eis_full, eis_part;
  long long nterms = 0;
  const double yp = zp_frame.imag();
  for (const auto& rep : reps) {
    const cplx w = apply_d4(rep.frame, zp_frame);
    const double xw = w.real(), yw = w.imag();
    const double denom = 2.0 * Y * yw;
    const double dy2 = (Y - yw) * (Y - yw);
    auto kernel_at = [&](long long n) {
      const double dx = xw + (double)n * dir;
      const double cm1 = (dx * dx + dy2) / denom;
      if (cm1 < kCollisionCoshM1)
        throw std::domain_error("orbit collision between iY and the orbit of z'");
      return free_resolvent_s2_cosh_m1(cm1);
    };
    const bool in_part = rep.depth <= L - 2;
    const long long n0 = std::llround(-xw * dir);
    // Closed-form completion of the lattice walk beyond the cut: the omitted
    // terms are sum_{j>=1} q((t_j^2 + dy2)/denom) with t_j = |dx_break| + j
    // and q(u) = (2/pi) sum_{k>=1} (1+u)^{-2k}/(2k+1) (the kernel's large-
    // distance series).  The midpoint rule turns each power into
    // int_T^inf dt/(t^2+a^2)^{2k}, a^2 = dy2 + denom, T = |dx_break| + 1/2;
    // its error ~ |f'(T)|/24 sits far below the 1e-16 cut.  Without this the
    // raw cut error (~1e-12 per wide lattice) dominates the reported values
    // and grows with the lattice width.
    const double a2 = dy2 + denom;
    auto lattice_tail = [&](double dx_break) {
      const double tt = std::abs(dx_break) + 0.5;
      const double a = std::sqrt(a2);
      const double p1 = tt * tt + a2, p2 = p1 * p1;
      // i_n = int_T^inf dt/(t^2+a^2)^n; boundary-term reduction downward.
      // The subtraction loses ~(a/T)^2 relative accuracy, which is harmless:
      // the absolute error stays orders of magnitude below the cut itself.
      const double i1 = std::atan2(a, tt) / a;
      const double i2 = (-tt / p1 + 1.0 * i1) / (2.0 * a2);
      const double i3 = (-tt / p2 + 3.0 * i2) / (4.0 * a2);
      const double i4 = (-tt / (p2 * p1) + 5.0 * i3) / (6.0 * a2);
      const double i5 = (-tt / (p2 * p2) + 7.0 * i4) / (8.0 * a2);
      const double i6 = (-tt / (p2 * p2 * p1) + 9.0 * i5) / (10.0 * a2);
      const double d2 = denom * denom;
      return (2.0 / kPi) * d2 * (i2 / 3.0 + d2 * (i4 / 5.0 + d2 * i6 / 7.0));
    };
    // center term, then walk outward in both directions until negligible
    {
      const double v = kernel_at(n0);
      green_full.add(v);
      if (in_part) green_part.add(v);
      ++nterms;
    }
    for (int sgn : {+1, -1}) {
      for (long long k = 1;; ++k) {
        const double v = kernel_at(n0 + sgn * k);
        green_full.add(v);
        if (in_part) green_part.add(v);
        ++nterms;
        if (v < kCut) {
          const double tail = lattice_tail(xw + (double)(n0 + sgn * k) * dir);
          green_full.add(tail);
          if (in_part) green_part.add(tail);
          break;
        }
      }
    }
    // Eisenstein part from the same coset list at s = 2
    const double c = rep.frame[2], d = rep.frame[3];
    const double cx_d = c * zp_frame.real() + d, cy = c * yp;
    const double den = cx_d * cx_d + cy * cy;
    const double et = (yp / den) * (yp / den);
    eis_full.add(et);
    if (in_part) eis_part.add(et);
  }

  FayReport r;
  r.green_value = green_full.value();
  r.eis_value = eis_full.value();
  r.green_tail = std::abs(green_full.value() - green_part.value());
  r.eis_tail = std::abs(eis_full.value() - eis_part.value());
  r.terms = nterms;
  r.ratio = (3.0 * Y / 4.0) * r.green_value / r.eis_value;
  return r;
}

}  // namespace orbispec
