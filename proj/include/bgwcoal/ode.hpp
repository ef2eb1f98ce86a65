#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "bgwcoal/errors.hpp"

namespace bgwcoal {

struct OdeOptions {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  double max_step = 0.1;
  long max_steps = 50'000'000;
};

namespace detail {

// Dormand-Prince 5(4) tableau.
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order weights equal dp_a[6]; e[] is (b5 - b4), the embedded error weights.
inline constexpr double dp_e[7] = {
    71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920, -17253.0 / 339200, 22.0 / 525, -1.0 / 40};

}  // namespace detail

/// Integrates dy/dt = rhs(t, y) from t0 to t1 with an adaptive embedded
/// Runge-Kutta 5(4) scheme. State is a std::vector<double> (any dimension).
/// `rhs(t, y, dydt)` writes the derivative; `post_step(y)` is applied after
/// each accepted step (e.g. to clamp a probability into [0,1]); pass a no-op
/// if not needed. Throws SolverError on step underflow.
template <typename Rhs, typename PostStep>
void integrate_ode(Rhs&& rhs, std::vector<double>& y, double t0, double t1,
                   const OdeOptions& opts, PostStep&& post_step) {
  const std::size_t dim = y.size();
  if (t1 < t0) throw std::domain_error("integrate_ode: t1 < t0");
  if (t1 == t0) return;

  std::vector<double> k(7 * dim), y_stage(dim), y_new(dim);
  auto stage = [&](std::size_t i) { return k.data() + i * dim; };

  double t = t0;
  double h = std::min(opts.max_step, t1 - t0);
  long steps = 0;

  while (t < t1) {
    if (++steps > opts.max_steps)
      throw SolverError("integrate_ode: step count exceeded", t);
    h = std::min(h, t1 - t);
    if (h < 16.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(t)))
      throw SolverError("integrate_ode: step size underflow at t=" + std::to_string(t), t);

    rhs(t, y, stage(0));
    for (std::size_t i = 1; i < 7; ++i) {
      for (std::size_t d = 0; d < dim; ++d) {
        double acc = y[d];
        for (std::size_t j = 0; j < i; ++j) acc += h * detail::dp_a[i][j] * stage(j)[d];
        y_stage[d] = acc;
      }
      rhs(t + detail::dp_c[i] * h, y_stage, stage(i));
    }
    // 5th-order solution is the i=6 stage argument (FSAL property of DP5).
    for (std::size_t d = 0; d < dim; ++d) {
      double acc = y[d];
      for (std::size_t j = 0; j < 6; ++j) acc += h * detail::dp_a[6][j] * stage(j)[d];
      y_new[d] = acc;
    }

    double err_sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      double e = 0.0;
      for (std::size_t j = 0; j < 7; ++j) e += detail::dp_e[j] * stage(j)[d];
      e *= h;
      const double scale =
          opts.abs_tol + opts.rel_tol * std::max(std::abs(y[d]), std::abs(y_new[d]));
      const double r = e / scale;
      err_sq += r * r;
    }
    const double err = std::sqrt(err_sq / static_cast<double>(dim));

    if (err <= 1.0) {
      t += h;
      y.swap(y_new);
      post_step(y);
      const double grow = err == 0.0 ? 5.0 : std::min(5.0, 0.9 * std::pow(err, -0.2));
      h = std::min(opts.max_step, h * std::max(1.0, grow));
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
}

template <typename Rhs>
void integrate_ode(Rhs&& rhs, std::vector<double>& y, double t0, double t1,
                   const OdeOptions& opts) {
  integrate_ode(std::forward<Rhs>(rhs), y, t0, t1, opts, [](std::vector<double>&) {});
}

}  // namespace bgwcoal
