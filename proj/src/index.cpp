#include "orbispec/index.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "orbispec/summation.hpp"

namespace orbispec {

namespace {

constexpr double kPi = std::numbers::pi;

double to_double(const Rat& r) {
  return (double)r.numerator() / (double)r.denominator();
}

std::complex<double> root_of_unity(int m, long long power) {
  double theta = 2.0 * kPi * (double)(power % m) / (double)m;
  return {std::cos(theta), std::sin(theta)};
}

}  // namespace

double bernoulli2(double x) { return x * x - x + 1.0 / 6.0; }

Rat frac_part(const Rat& x) {
  long long num = x.numerator(), den = x.denominator();  // den > 0 normalized
  long long fl = num >= 0 ? num / den : -((-num + den - 1) / den);
  return x - Rat(fl);
}

Rat bernoulli2_frac(const Rat& x) {
  Rat f = frac_part(x);
  return f * f - f + Rat(1, 6);
}

RootSumReport rootsum_identity(int m, int k) {
  if (m < 2) throw std::invalid_argument("root-of-unity identities need m >= 2");
  RootSumReport r;
  r.m = m;
  r.k = k;

  CompensatedSum tw_re, tw_im, lin_re, lin_im, quad_re, quad_im;
  for (int i = 1; i < m; ++i) {
    std::complex<double> w = root_of_unity(m, i);
    std::complex<double> d = 1.0 - w;
    std::complex<double> linear = 1.0 / d;
    std::complex<double> quadratic = w / (d * d);
    // 2147483647 * 51 fits in long long, and (k+1) i stays far below that
    std::complex<double> twisted = root_of_unity(m, ((long long)k + 1) * i) / (d * d);
    lin_re.add(linear.real());
    lin_im.add(linear.imag());
    quad_re.add(quadratic.real());
    quad_im.add(quadratic.imag());
    tw_re.add(twisted.real());
    tw_im.add(twisted.imag());
  }

  long long kbar = ((long long)k % m + m) % m;
  r.closed_rational = -Rat((long long)m * m - 1, 12) + Rat(kbar * (m - kbar), 2);
  Rat rewrite = -Rat((long long)m * m, 2) *
                (bernoulli2_frac(Rat(k, m)) - Rat(1, 6LL * m * m));
  if (rewrite != r.closed_rational)
    throw std::logic_error("Bernoulli rewriting of the root-of-unity sum failed");
  r.closed = to_double(r.closed_rational);

  r.direct = {tw_re.value(), tw_im.value()};
  r.difference = std::abs(r.direct - std::complex<double>(r.closed, 0.0));
  double closed_linear = ((double)m - 1.0) / 2.0;
  r.err_linear =
      std::abs(std::complex<double>(lin_re.value() - closed_linear, lin_im.value()));
  double closed_quadratic = -((double)m * (double)m - 1.0) / 12.0;
  r.err_quadratic = std::abs(
      std::complex<double>(quad_re.value() - closed_quadratic, quad_im.value()));
  return r;
}

Rat elliptic_coefficient_rational(int m, int k) {
  if (m < 2) throw std::invalid_argument("cone order must be >= 2");
  Rat b2 = bernoulli2_frac(Rat(k, m));
  return -Rat(m, 4) * (b2 - Rat(1, 6LL * m * m));
}

double elliptic_coefficient(int m, int k) {
  return to_double(elliptic_coefficient_rational(m, k)) / kPi;
}

ChernCoefficients chern_coefficients(const Signature& sig, int k) {
  sig.validate();
  ChernCoefficients c;
  c.k = k;
  long long kk = k;
  c.wp_rational = Rat(6 * kk * kk - 6 * kk + 1, 12);  // symmetric under k -> 1-k
  c.wp = to_double(c.wp_rational) / (kPi * kPi);
  c.cusp_rational = Rat(-1, 9);
  c.cusp = to_double(c.cusp_rational);
  int a = k >= 1 ? k - 1 : -k;
  for (int m : sig.cone_orders) {
    ConeCoefficient cc;
    cc.order = m;
    cc.rational = elliptic_coefficient_rational(m, a);
    cc.value = to_double(cc.rational) / kPi;
    c.cones.push_back(cc);
  }
  return c;
}

bool coefficients_equal(const ChernCoefficients& x, const ChernCoefficients& y) {
  if (x.wp_rational != y.wp_rational) return false;
  if (x.cusp_rational != y.cusp_rational) return false;
  if (x.cones.size() != y.cones.size()) return false;
  for (std::size_t i = 0; i < x.cones.size(); ++i)
    if (x.cones[i].order != y.cones[i].order || x.cones[i].rational != y.cones[i].rational)
      return false;
  return true;
}

long long dim_omega_k(const Signature& sig, int k) {
  if (k < 0) return 0;
  if (k == 0) return 1;
  if (k == 1) return sig.genus;
  long long d = (2LL * k - 1) * (sig.genus - 1) + ((long long)k - 1) * sig.cusps;
  for (int m : sig.cone_orders) d += ((long long)k * (m - 1)) / m;  // floor(k(1 - 1/m))
  return d;
}

AreaResult area(const Signature& sig) {
  Rat sum(2LL * sig.genus - 2 + sig.cusps);
  for (int m : sig.cone_orders) sum += Rat(m - 1, m);
  if (sum <= Rat(0)) throw std::invalid_argument("signature is not hyperbolic");
  AreaResult a;
  a.multiple_of_pi = Rat(2) * sum;
  a.value = 2.0 * kPi * to_double(sum);
  return a;
}

PairRelationReport example_0_1_222_relations(int k) {
  if (k < 1) throw std::invalid_argument("pair relation is stated for k >= 1");
  Signature quotient(0, 1, {2, 2, 2});
  Signature cover(1, 1, {});
  ChernCoefficients cq = chern_coefficients(quotient, k);
  ChernCoefficients cc = chern_coefficients(cover, k);
  PairRelationReport r;
  r.k = k;
  // cover forms push down to twice the quotient forms, so subtract twice
  r.wp_residual = Rat(2) * cq.wp_rational - Rat(2) * cc.wp_rational;
  r.cusp_residual = Rat(2) * cq.cusp_rational - Rat(2) * cc.cusp_rational;
  for (const auto& cone : cq.cones) {
    ConeCoefficient doubled = cone;
    doubled.rational = Rat(2) * cone.rational;
    doubled.value = 2.0 * cone.value;
    r.cone_terms.push_back(doubled);
  }
  r.expected_cone = Rat(k % 2 == 0 ? 1 : -1, 8);
  return r;
}

}  // namespace orbispec
