#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace orbispec {

// Dormand-Prince 5(4) adaptive Runge-Kutta for y' = f(t, y) on a fixed-size
// real state.  Integrates from t0 to t1 (either direction) with per-step
// error control err_i <= atol + rtol * |y_i|; throws std::runtime_error if
// the step count explodes or the step size underflows.
template <std::size_t N, typename F>
std::array<double, N> rk45_integrate(F&& f, double t0, double t1, std::array<double, N> y,
                                     double rtol = 1e-12, double atol = 1e-14) {
  if (t0 == t1) return y;
  const double dir = t1 > t0 ? 1.0 : -1.0;
  double t = t0;
  double h = dir * std::min(std::abs(t1 - t0), 1e-3);

  using Vec = std::array<double, N>;
  auto axpy = [](Vec& out, const Vec& base, std::initializer_list<std::pair<double, const Vec*>> terms,
                 double h) {
    for (std::size_t i = 0; i < N; ++i) {
      double acc = 0;
      for (const auto& [c, k] : terms) acc += c * (*k)[i];
      out[i] = base[i] + h * acc;
    }
  };

  Vec k1 = f(t, y);
  for (long long steps = 0; steps < 50'000'000; ++steps) {
    if (dir * (t - t1) >= 0) return y;
    if (dir * (t + h - t1) > 0) h = t1 - t;
    if (std::abs(h) < 1e-15 * (std::abs(t) + 1.0))
      throw std::runtime_error("rk45 step size underflow");

    Vec ytmp, k2, k3, k4, k5, k6, k7, y5, y4;
    axpy(ytmp, y, {{1.0 / 5, &k1}}, h);
    k2 = f(t + h / 5, ytmp);
    axpy(ytmp, y, {{3.0 / 40, &k1}, {9.0 / 40, &k2}}, h);
    k3 = f(t + 3 * h / 10, ytmp);
    axpy(ytmp, y, {{44.0 / 45, &k1}, {-56.0 / 15, &k2}, {32.0 / 9, &k3}}, h);
    k4 = f(t + 4 * h / 5, ytmp);
    axpy(ytmp, y,
         {{19372.0 / 6561, &k1}, {-25360.0 / 2187, &k2}, {64448.0 / 6561, &k3}, {-212.0 / 729, &k4}},
         h);
    k5 = f(t + 8 * h / 9, ytmp);
    axpy(ytmp, y,
         {{9017.0 / 3168, &k1},
          {-355.0 / 33, &k2},
          {46732.0 / 5247, &k3},
          {49.0 / 176, &k4},
          {-5103.0 / 18656, &k5}},
         h);
    k6 = f(t + h, ytmp);
    axpy(y5, y,
         {{35.0 / 384, &k1},
          {500.0 / 1113, &k3},
          {125.0 / 192, &k4},
          {-2187.0 / 6784, &k5},
          {11.0 / 84, &k6}},
         h);
    k7 = f(t + h, y5);
    axpy(y4, y,
         {{5179.0 / 57600, &k1},
          {7571.0 / 16695, &k3},
          {393.0 / 640, &k4},
          {-92097.0 / 339200, &k5},
          {187.0 / 2100, &k6},
          {1.0 / 40, &k7}},
         h);

    double err = 0;
    for (std::size_t i = 0; i < N; ++i) {
      const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      const double e = (y5[i] - y4[i]) / sc;
      err += e * e;
    }
    err = std::sqrt(err / N);

    if (err <= 1.0) {
      t += h;
      y = y5;
      k1 = k7;  // first-same-as-last
    }
    const double fac = err > 0 ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::min(5.0, std::max(0.2, fac));
  }
  throw std::runtime_error("rk45 failed to converge within the step budget");
}

}  // namespace orbispec
