#include <doctest.h>

#include <cmath>

#include "paritysim/fock.hpp"
#include "paritysim/ode.hpp"

using namespace parity;

TEST_CASE("scalar exponential decay") {
  Eigen::VectorXcd y(1);
  y(0) = 1.0;
  auto rhs = [](double, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
    dv = -2.0 * v;
  };
  ode::Options opt;
  opt.tol = 1e-10;
  ode::integrate(rhs, y, 0.0, 3.0, opt);
  CHECK(std::abs(y(0) - std::exp(-6.0)) < 1e-9);
}

TEST_CASE("harmonic oscillator keeps phase and norm") {
  Eigen::VectorXcd y(1);
  y(0) = cplx(1.0, 0.0);
  const double omega = 5.0;
  auto rhs = [&](double, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
    dv = cplx(0.0, -omega) * v;
  };
  ode::Options opt;
  opt.tol = 1e-11;
  ode::StepStats stats;
  ode::integrate(rhs, y, 0.0, 10.0, opt, &stats);
  CHECK(std::abs(y(0) - std::exp(cplx(0.0, -50.0))) < 1e-7);
  CHECK(stats.accepted > 10);
}

TEST_CASE("matrix-valued state") {
  // dX/dt = A X with A = -i sigma_y scaled; compare against the closed form
  Mat x = Mat::Identity(2, 2);
  Mat a(2, 2);
  a << 0.0, 1.0, -1.0, 0.0;  // rotation generator
  auto rhs = [&](double, const Mat& m, Mat& dm) { dm = a * m; };
  ode::Options opt;
  opt.tol = 1e-12;
  ode::integrate(rhs, x, 0.0, 1.0, opt);
  Mat expected(2, 2);
  expected << std::cos(1.0), std::sin(1.0), -std::sin(1.0), std::cos(1.0);
  CHECK((x - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("step-size underflow raises") {
  Eigen::VectorXcd y(1);
  y(0) = 1.0;
  // unbounded blow-up near t = 1 forces the controller below the floor
  auto rhs = [](double t, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
    dv = v / ((1.0 - t) * (1.0 - t));
  };
  ode::Options opt;
  opt.tol = 1e-10;
  CHECK_THROWS_AS(ode::integrate(rhs, y, 0.0, 2.0, opt), ode::StepSizeUnderflow);
}

TEST_CASE("tolerance controls the error") {
  auto run = [](double tol) {
    Eigen::VectorXcd y(2);
    y << cplx(1.0, 0.0), cplx(0.0, 0.0);
    auto rhs = [](double, const Eigen::VectorXcd& v, Eigen::VectorXcd& dv) {
      dv.resize(2);
      dv(0) = cplx(0.0, -1.0) * v(1);
      dv(1) = cplx(0.0, -1.0) * v(0);
    };
    ode::Options opt;
    opt.tol = tol;
    ode::integrate(rhs, y, 0.0, 20.0, opt);
    return y;
  };
  const auto coarse = run(1e-6);
  const auto fine = run(1e-12);
  const double coarse_err = (coarse - fine).norm();
  CHECK(coarse_err < 1e-4);
  CHECK(coarse_err > 1e-12);
}
