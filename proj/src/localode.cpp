#include "orbispec/localode.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "orbispec/rk45.hpp"

namespace orbispec {

namespace {

constexpr double kPi = std::numbers::pi;

// integer power by repeated multiplication: exact 1 at e = 0 even for u = 0,
// where std::pow(complex, double) would produce exp(0 * log 0) = NaN
cplx ipow(cplx base, int e) {
  cplx out = 1.0;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

cplx series_value(const std::vector<cplx>& coefs, int m, cplx u) {
  // sum_j conj(coefs[j-1]) conj(u)^{jm-2}, weighted later
  const cplx ub = std::conj(u);
  cplx sum = 0;
  for (std::size_t j = 1; j <= coefs.size(); ++j) {
    const int e = (int)j * m - 2;
    sum += std::conj(coefs[j - 1]) * ipow(ub, e);
  }
  return sum;
}

}  // namespace

cplx LocalBeltramiData::mu(cplx u) const {
  const double w = 1.0 - std::norm(u);
  return (w * w / 4.0) * series_value(a, m, u);
}

cplx LocalBeltramiData::nu(cplx u) const {
  const double w = 1.0 - std::norm(u);
  return (w * w / 4.0) * series_value(b, m, u);
}

std::function<cplx(cplx)> equivariant_projector(std::function<cplx(cplx)> phi, int m) {
  if (m < 2) throw std::invalid_argument("projector requires m >= 2");
  return [phi = std::move(phi), m](cplx u) {
    cplx sum = 0;
    for (int j = 0; j < m; ++j) {
      const double th = 2.0 * kPi * j / m;
      const cplx om(std::cos(th), std::sin(th));
      const cplx om2(std::cos(2 * th), -std::sin(2 * th));  // omega^{-2j}
      sum += phi(om * u) * om2;
    }
    return sum / (double)m;
  };
}

EquivarianceReport equivariance_fourier_check(const std::function<cplx(cplx)>& phi, int m,
                                              double r, int max_index, int samples) {
  if (m < 2) throw std::invalid_argument("equivariance check requires m >= 2");
  if (!(r > 0 && r < 1)) throw std::invalid_argument("circle radius must satisfy 0 < r < 1");
  if (max_index < m) max_index = m;
  if (samples < 4 * max_index)
    throw std::invalid_argument("insufficient sampling: need at least 4 * max_index = " +
                                std::to_string(4 * max_index) + " points, got " +
                                std::to_string(samples));
  const double w = 1.0 - r * r;
  const double scale = 4.0 / (w * w);
  std::vector<cplx> g((std::size_t)samples);
  for (int k = 0; k < samples; ++k) {
    const double th = 2.0 * kPi * k / samples;
    g[(std::size_t)k] = scale * phi(cplx(r * std::cos(th), r * std::sin(th)));
  }
  EquivarianceReport rep;
  rep.samples = samples;
  // frequencies f in (-samples/2, samples/2]; coefficient index n = 2 - f
  for (int f = -(samples - 1) / 2; f <= samples / 2; ++f) {
    cplx c = 0;
    for (int k = 0; k < samples; ++k) {
      const double th = -2.0 * kPi * f * k / samples;
      c += g[(std::size_t)k] * cplx(std::cos(th), std::sin(th));
    }
    const double mag = std::abs(c) / samples;
    rep.max_total = std::max(rep.max_total, mag);
    const int n = 2 - f;
    if (((n % m) + m) % m != 0) rep.max_spurious = std::max(rep.max_spurious, mag);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// radial modes
// ---------------------------------------------------------------------------

namespace {

// dense coefficients of S_n(r) = ((1-r^2)^4/16) sum_j abar_{jm} b_{jm+n} r^{2jm+n-4}
// indexed by power of r
std::vector<cplx> assemble_source(const LocalBeltramiData& d, int n) {
  const int m = d.m;
  static const std::array<double, 5> binom = {1, -4, 6, -4, 1};  // (1-x)^4
  std::vector<cplx> s;
  auto bump = [&](int p, cplx v) {
    if ((std::size_t)p >= s.size()) s.resize((std::size_t)p + 1, cplx(0));
    s[(std::size_t)p] += v;
  };
  for (int j = 1; j <= (int)d.a.size(); ++j) {
    const int jp = j + n / m;  // index of b_{jm+n}
    if (jp < 1 || jp > (int)d.b.size()) continue;
    const cplx base = std::conj(d.a[(std::size_t)j - 1]) * d.b[(std::size_t)jp - 1] / 16.0;
    const int e = 2 * j * m + n - 4;
    if (e < 0 || (e - n) % 2 != 0)
      throw std::logic_error("source exponent " + std::to_string(e) +
                             " violates the 2jm+n-4 pattern");
    for (int t = 0; t <= 4; ++t) bump(e + 2 * t, binom[(std::size_t)t] * base);
  }
  // parity guard: for the regular mode lattice all source powers share the
  // parity of n; any amplitude off the lattice is a defect
  for (std::size_t p = 0; p < s.size(); ++p)
    if ((int)(p % 2) != (std::abs(n) % 2) && std::abs(s[p]) > 1e-12)
      throw std::logic_error("source has amplitude " + std::to_string(std::abs(s[p])) +
                             " at off-parity power " + std::to_string(p));
  return s;
}

cplx source_coeff(const std::vector<cplx>& s, int p) {
  if (p < 0 || (std::size_t)p >= s.size()) return cplx(0);
  return s[(std::size_t)p];
}

}  // namespace

cplx RadialSolution::eval(double r) const {
  // Horner in r^2 on the lattice, then the leading power
  cplx acc = 0;
  const double r2 = r * r;
  for (std::size_t t = coeff.size(); t-- > 0;) acc = acc * r2 + coeff[t];
  return acc * std::pow(r, leading_exponent);
}

cplx RadialSolution::eval_derivative(double r) const {
  cplx acc = 0;
  const double r2 = r * r;
  for (std::size_t t = coeff.size(); t-- > 0;) {
    const double p = (double)leading_exponent + 2.0 * (double)t;
    acc = acc * r2 + p * coeff[t];
  }
  return acc * std::pow(r, leading_exponent - 1);
}

cplx RadialSolution::source(double r) const {
  const auto s = assemble_source(data, n);
  cplx acc = 0;
  for (std::size_t p = s.size(); p-- > 0;) acc = acc * r + s[p];
  return acc;
}

RadialSolution mode_series_solve(const LocalBeltramiData& data, int n, double c0,
                                 int J_terms) {
  if (data.m < 2) throw std::invalid_argument("cone order must be >= 2");
  if (data.a.size() != data.b.size())
    throw std::invalid_argument("a and b coefficient lists must have equal length");
  if (n % data.m != 0)
    throw std::invalid_argument("mode index " + std::to_string(n) +
                                " is not a multiple of the cone order " +
                                std::to_string(data.m));
  if (J_terms < 8 || J_terms > 200000)
    throw std::invalid_argument("J_terms out of range [8, 200000]");

  const auto s = assemble_source(data, n);
  const int an = std::abs(n);
  const double nn = (double)n * (double)n;

  // consistency of the indicial equation at p + 2 = |n|: the recursion there
  // has a vanishing leading factor, so the source must vanish at |n| - 2
  if (std::abs(source_coeff(s, an - 2)) > 1e-12)
    throw std::logic_error("source does not vanish at power |n| - 2; no regular solution");

  RadialSolution sol;
  sol.n = n;
  sol.data = data;
  sol.leading_exponent = an;
  sol.coeff.assign((std::size_t)J_terms, cplx(0));
  sol.coeff[0] = c0;

  auto c_at = [&](int p) -> cplx {  // coefficient of r^p
    if (p < an || (p - an) % 2 != 0) return cplx(0);
    const int t = (p - an) / 2;
    if (t >= J_terms) return cplx(0);
    return sol.coeff[(std::size_t)t];
  };
  for (int t = 1; t < J_terms; ++t) {
    const int p2 = an + 2 * t;  // computing c_{p2} from the recursion at p = p2 - 2
    const int p = p2 - 2;
    const double lead = (double)p2 * (double)p2 - nn;
    const cplx rhs = 2.0 * c_at(p) * ((double)p * (double)p - nn) -
                     c_at(p - 2) * ((double)(p - 2) * (double)(p - 2) - nn) +
                     8.0 * c_at(p) - 16.0 * source_coeff(s, p);
    sol.coeff[(std::size_t)t] = rhs / lead;
  }

  if (n == 0) {
    sol.c0 = sol.coeff[0];
    sol.c2 = sol.coeff[1];
  }
  return sol;
}

double mode_ode_crosscheck(const RadialSolution& sol, double r0, double r1) {
  if (!(r0 > 0 && r0 < r1)) throw std::invalid_argument("need 0 < r0 < r1");
  if (r1 > 0.9)
    throw std::invalid_argument("r1 > 0.9 rejected: the equation is singular at r = 1");

  const auto s = assemble_source(sol.data, sol.n);
  // Integrate g = f / r^k (k = |n|) instead of f itself.  The homogeneous
  // solutions of the f-equation behave like r^{+k} and r^{-k} near 0, and the
  // growing r^{+k} branch amplifies any error injected near r0 by (r1/r0)^k —
  // nine orders of magnitude for k = 10 on [0.05, 0.45] — so a forward sweep
  // in f measures IVP conditioning, not solver agreement.  In the g variable
  // the branches become 1 and r^{-2k}, both non-growing as r increases.
  // g satisfies g'' = -(2k+1) g'/r + (16/(1-r^2)^2)(g/2 - S(r)/r^k), and
  // S/r^k is again a polynomial: every source exponent 2jm+n-4+2t is >= |n|.
  const int k = std::abs(sol.n);
  for (std::size_t p = 0; p < s.size() && p < (std::size_t)k; ++p)
    if (std::abs(s[p]) != 0.0)
      throw std::logic_error("source power below |n| breaks the r^{|n|} rescale");
  auto src_over_rk = [&](double r) {
    cplx acc = 0;
    for (std::size_t p = s.size(); p-- > (std::size_t)k;) acc = acc * r + s[p];
    return acc;
  };
  const double kk1 = 2.0 * k + 1.0;
  auto rhs = [&](double r, const std::array<double, 4>& y) {
    const cplx g(y[0], y[1]), gp(y[2], y[3]);
    const double w = 1.0 - r * r;
    const cplx gpp = -kk1 * gp / r + (16.0 / (w * w)) * (0.5 * g - src_over_rk(r));
    return std::array<double, 4>{y[2], y[3], gpp.real(), gpp.imag()};
  };

  const cplx f0 = sol.eval(r0);
  const cplx fp0 = sol.eval_derivative(r0);
  const double rk0 = std::pow(r0, k);
  const cplx g0 = f0 / rk0;
  const cplx gp0 = (fp0 - (double)k * f0 / r0) / rk0;
  std::array<double, 4> y = {g0.real(), g0.imag(), gp0.real(), gp0.imag()};

  const int K = 32;
  double dev = 0;
  double t = r0;
  for (int j = 1; j <= K; ++j) {
    const double tn = r0 + (r1 - r0) * j / K;
    y = rk45_integrate(rhs, t, tn, y, 1e-12, 1e-14);
    t = tn;
    const cplx ref = sol.eval(tn);
    // compare in f units: same quantity as before the change of variable
    dev = std::max(dev, std::abs(cplx(y[0], y[1]) * std::pow(tn, k) - ref));
  }
  return dev;
}

}  // namespace orbispec
