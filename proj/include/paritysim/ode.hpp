#ifndef PARITYSIM_ODE_HPP
#define PARITYSIM_ODE_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace parity::ode {

struct Options {
  double tol = 1e-9;           // local error tolerance (absolute and relative)
  double initial_step = 0.0;   // 0 = choose automatically
  double min_step_fraction = 1e-14;  // of the span; below this we give up
};

struct StepStats {
  long accepted = 0;
  long rejected = 0;
  double last_step = 0.0;
};

struct StepSizeUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Dormand-Prince 5(4) embedded pair with FSAL. `State` is any Eigen dense
/// matrix or vector of complex doubles; `rhs(t, y, dydt)` writes the
/// derivative. Integrates y in place from t0 to t1. Deterministic for fixed
/// inputs (no threading, no randomness).
template <class State, class Rhs>
void integrate(Rhs&& rhs, State& y, double t0, double t1, const Options& opt,
               StepStats* stats = nullptr) {
  if (!(t1 > t0)) {
    if (t1 == t0) return;
    throw std::invalid_argument("ode::integrate: t1 < t0");
  }

  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                          a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                          a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                          b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  // b (5th order) minus b-hat (4th order)
  static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600;
  static constexpr double e3 = 500.0 / 1113 - 7571.0 / 16695;
  static constexpr double e4 = 125.0 / 192 - 393.0 / 640;
  static constexpr double e5 = -2187.0 / 6784 + 92097.0 / 339200;
  static constexpr double e6 = 11.0 / 84 - 187.0 / 2100;
  static constexpr double e7 = -1.0 / 40;

  const double span = t1 - t0;
  State k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y;
  State ytmp = y, ynew = y, yerr = y;

  rhs(t0, y, k1);

  double h = opt.initial_step;
  if (h <= 0.0) {
    const double ny = y.matrix().norm();
    const double nf = k1.matrix().norm();
    h = (nf > 0.0) ? 0.01 * (ny + opt.tol) / nf : span * 1e-3;
    h = std::min(h, span);
  }

  double t = t0;
  bool fsal_valid = true;
  while (t < t1) {
    bool boundary = false;
    if (h >= t1 - t) {
      h = t1 - t;  // final sliver; exempt from the underflow floor
      boundary = true;
    }
    if (!boundary && h < opt.min_step_fraction * span)
      throw StepSizeUnderflow("ode::integrate: step size underflow at t = " +
                              std::to_string(t));

    if (!fsal_valid) rhs(t, y, k1);

    ytmp = y + (h * a21) * k1;
    rhs(t + c2 * h, ytmp, k2);
    ytmp = y + (h * a31) * k1 + (h * a32) * k2;
    rhs(t + c3 * h, ytmp, k3);
    ytmp = y + (h * a41) * k1 + (h * a42) * k2 + (h * a43) * k3;
    rhs(t + c4 * h, ytmp, k4);
    ytmp = y + (h * a51) * k1 + (h * a52) * k2 + (h * a53) * k3 + (h * a54) * k4;
    rhs(t + c5 * h, ytmp, k5);
    ytmp = y + (h * a61) * k1 + (h * a62) * k2 + (h * a63) * k3 + (h * a64) * k4 +
           (h * a65) * k5;
    rhs(t + h, ytmp, k6);
    ynew = y + (h * b1) * k1 + (h * b3) * k3 + (h * b4) * k4 + (h * b5) * k5 +
           (h * b6) * k6;
    rhs(t + h, ynew, k7);
    yerr = (h * e1) * k1 + (h * e3) * k3 + (h * e4) * k4 + (h * e5) * k5 +
           (h * e6) * k6 + (h * e7) * k7;

    // weighted max-norm error against tol * (1 + |y|)
    double err = 0.0;
    const auto& ya = y.array();
    const auto& yna = ynew.array();
    const auto& ea = yerr.array();
    const auto scale =
        opt.tol * (1.0 + ya.abs().max(yna.abs()));
    err = (ea.abs() / scale).maxCoeff();

    if (!std::isfinite(err)) {
      // the step left the representable range; retry much smaller
      h *= 0.1;
      if (stats) ++stats->rejected;
      continue;
    }

    if (err <= 1.0) {
      t = boundary ? t1 : t + h;
      y.swap(ynew);
      k1.swap(k7);
      fsal_valid = true;
      if (stats) {
        ++stats->accepted;
        if (!boundary) stats->last_step = h;
      }
    } else {
      fsal_valid = true;  // k1 still matches y
      if (stats) ++stats->rejected;
    }

    const double factor =
        (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
    h *= std::clamp(factor, 0.2, 5.0);
  }
}

}  // namespace parity::ode

#endif
