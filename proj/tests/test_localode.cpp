#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "orbispec/localode.hpp"

using namespace orbispec;

namespace {

LocalBeltramiData random_beltrami(int m, int J, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  LocalBeltramiData d;
  d.m = m;
  for (int j = 0; j < J; ++j) {
    d.a.emplace_back(u(rng), u(rng));
    d.b.emplace_back(u(rng), u(rng));
  }
  return d;
}

}  // namespace

TEST_CASE("Beltrami data rotates with weight 2") {
  for (int m : {2, 3, 5}) {
    const auto data = random_beltrami(m, 3, 100u + (unsigned)m);
    const cplx omega(std::cos(2 * std::numbers::pi / m), std::sin(2 * std::numbers::pi / m));
    const cplx om2 = omega * omega;
    std::mt19937 rng(55u);
    std::uniform_real_distribution<double> ur(0.05, 0.9), ut(0.0, 6.28);
    for (int i = 0; i < 12; ++i) {
      const double r = ur(rng), t = ut(rng);
      const cplx u = std::polar(r, t);
      CHECK(std::abs(data.mu(omega * u) - om2 * data.mu(u)) < 1e-13);
      CHECK(std::abs(data.nu(omega * u) - om2 * data.nu(u)) < 1e-13);
    }
  }
  // value at the cone point: mu(0) = 0 unless m = 2 (the jm-2 = 0 monomial)
  const auto d3 = random_beltrami(3, 2, 7u);
  CHECK(std::abs(d3.mu(0.0)) == 0.0);
  const auto d2 = random_beltrami(2, 2, 8u);
  CHECK(std::abs(d2.mu(0.0) - std::conj(d2.a[0]) / 4.0) < 1e-15);
}

TEST_CASE("single-mode data produces a single Fourier line") {
  // phi(u) = ((1-r^2)^2/4) conj(u)^{m-2} has coefficient index n = -(m-2)+...
  // in the series frame: only the lattice frequency survives, everything
  // else is numerically zero
  LocalBeltramiData data;
  data.m = 3;
  data.a = {cplx(1.0, 0.0)};
  data.b = {cplx(0.0, 0.0)};
  auto phi = [&](cplx u) { return data.mu(u); };
  const auto rep = equivariance_fourier_check(phi, 3, 0.45, 12, 256);
  CHECK(rep.max_spurious < 1e-10);
  CHECK(rep.max_total > 0.1);  // the line itself is visible
  CHECK(rep.samples == 256);
}

TEST_CASE("projector output is exactly equivariant in the Fourier sense") {
  // arbitrary smooth non-equivariant input
  auto raw = [](cplx u) {
    return std::exp(0.3 * u) + std::conj(u) * std::conj(u) * 0.7 + cplx(0.0, 0.25) * u;
  };
  for (int m : {2, 3, 5}) {
    auto proj = equivariant_projector(raw, m);
    const auto rep = equivariance_fourier_check(proj, m, 0.5, 10, 200);
    CHECK(rep.max_spurious < 1e-12);
    // the raw function itself fails the same check (the test has teeth)
    const auto raw_rep = equivariance_fourier_check(raw, m, 0.5, 10, 200);
    CHECK(raw_rep.max_spurious > 1e-3);
  }
  CHECK_THROWS_AS(equivariance_fourier_check(raw, 3, 0.5, 100, 200),
                  std::invalid_argument);  // samples < 4 * max_index
  CHECK_THROWS_AS(equivariance_fourier_check(raw, 1, 0.5, 4, 64), std::invalid_argument);
  CHECK_THROWS_AS(equivariance_fourier_check(raw, 3, 1.5, 4, 64), std::invalid_argument);
}

TEST_CASE("zero-source mode series solves the homogeneous equation") {
  // with a = b = 0 the equation is -((1-r^2)^2/16)(f'' + f'/r - n^2 f/r^2)
  // + f/2 = 0; the series starts at r^{|n|} and the integrator must follow it
  LocalBeltramiData data;
  data.m = 4;
  data.a = {cplx(0, 0)};
  data.b = {cplx(0, 0)};
  for (int n : {0, 4, -4}) {
    const auto sol = mode_series_solve(data, n, 1.0, 400);
    CHECK(sol.leading_exponent == std::abs(n));
    CHECK(std::abs(sol.coeff[0] - cplx(1.0, 0.0)) == 0.0);
    const double dev = mode_ode_crosscheck(sol, 0.01, 0.5);
    CHECK(dev < 1e-10);
    // homogeneous solutions with zero data have no source
    CHECK(std::abs(sol.source(0.3)) == 0.0);
  }
}

TEST_CASE("c2 relation from the recursion: generic order") {
  for (int m : {3, 5, 7}) {
    const auto data = random_beltrami(m, 3, 900u + (unsigned)m);
    const auto sol = mode_series_solve(data, 0, 1.0, 300);
    CHECK(std::abs(sol.c0 - cplx(1.0, 0.0)) == 0.0);
    // m > 2: c2 = 2 c0 exactly (the source starts at r^{2m-4} > r^0)
    CHECK(std::abs(sol.c2 - 2.0 * sol.c0) < 1e-12);
  }
}

TEST_CASE("c2 relation from the recursion: order 2 picks up the source") {
  const auto data = random_beltrami(2, 3, 1200u);
  const auto sol = mode_series_solve(data, 0, 0.75, 300);
  // m = 2: c2 = 2 c0 - 4 mu(0) conj(nu)(0) = 2 c0 - conj(a_2) b_2 / 4
  const cplx mu0 = data.mu(0.0);
  const cplx nubar0 = std::conj(data.nu(0.0));
  const cplx expected = 2.0 * sol.c0 - 4.0 * mu0 * nubar0;
  CHECK(std::abs(sol.c2 - expected) < 1e-12);
  CHECK(std::abs(expected - (2.0 * sol.c0 - std::conj(data.a[0]) * data.b[0] / 4.0)) <
        1e-15);
}

TEST_CASE("series vs adaptive Runge-Kutta on random data") {
  for (int m : {2, 3, 5}) {
    const auto data = random_beltrami(m, 3, 3000u + (unsigned)m);
    SUBCASE("n = 0") {}
    const auto sol = mode_series_solve(data, 0, 1.0, 400);
    CHECK(mode_ode_crosscheck(sol, 0.05, 0.5) < 1e-8);
  }
  // nonzero modes, both signs
  for (int m : {2, 3, 5}) {
    const auto data = random_beltrami(m, 2, 4000u + (unsigned)m);
    for (int n : {m, -m, 2 * m, -2 * m}) {
      const auto sol = mode_series_solve(data, n, 1.0, 400);
      CHECK(sol.leading_exponent == std::abs(n));
      // leading behaviour f = c r^{|n|} (1 + O(r)): divide out and look at 0
      const double r_small = 1e-3;
      const cplx scaled = sol.eval(r_small) / std::pow(r_small, std::abs(n));
      CHECK(std::abs(scaled - sol.coeff[0]) < 1e-5 * std::abs(sol.coeff[0]));
      CHECK(mode_ode_crosscheck(sol, 0.05, 0.45) < 1e-8);
    }
  }
}

TEST_CASE("mode solver is linear in the data for fixed c0 = 0") {
  // with c0 = 0 the solution is the particular one, linear in (a-bar, b)
  LocalBeltramiData d1 = random_beltrami(3, 2, 61u);
  LocalBeltramiData d2 = d1;
  for (auto& b : d2.b) b *= 2.0;  // double the b side only
  const auto s1 = mode_series_solve(d1, 3, 0.0, 200);
  const auto s2 = mode_series_solve(d2, 3, 0.0, 200);
  for (double r : {0.1, 0.3, 0.5}) {
    CHECK(std::abs(s2.eval(r) - 2.0 * s1.eval(r)) < 1e-12);
  }
}

TEST_CASE("solver input validation") {
  const auto data = random_beltrami(3, 2, 77u);
  CHECK_THROWS_AS(mode_series_solve(data, 2, 1.0, 200), std::invalid_argument);  // n not mult of m
  CHECK_THROWS_AS(mode_series_solve(data, 3, 1.0, 2), std::invalid_argument);    // too few terms
  const auto sol = mode_series_solve(data, 3, 1.0, 200);
  CHECK_THROWS_AS(mode_ode_crosscheck(sol, 0.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(mode_ode_crosscheck(sol, 0.05, 0.95), std::invalid_argument);
  LocalBeltramiData bad = data;
  bad.b.pop_back();
  CHECK_THROWS_AS(mode_series_solve(bad, 3, 1.0, 200), std::invalid_argument);
}

TEST_CASE("derivative evaluation matches a finite difference") {
  const auto data = random_beltrami(2, 3, 88u);
  const auto sol = mode_series_solve(data, 0, 1.0, 300);
  for (double r : {0.1, 0.4, 0.7}) {
    const double h = 1e-6;
    const cplx fd = (sol.eval(r + h) - sol.eval(r - h)) / (2.0 * h);
    CHECK(std::abs(sol.eval_derivative(r) - fd) < 1e-7 * (1.0 + std::abs(fd)));
  }
}
