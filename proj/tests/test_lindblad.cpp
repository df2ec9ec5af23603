#include <doctest.h>

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "paritysim/fock.hpp"
#include "paritysim/lindblad.hpp"

using namespace parity;
using fock::HilbertSpace;

namespace {

std::vector<double> grid(double t_end, int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(t_end * i / (n - 1));
  return g;
}

lindblad::LindbladModel damped_cavity(int dim, double kappa) {
  const HilbertSpace space(dim);
  lindblad::LindbladModel model;
  model.hamiltonian = Mat::Zero(dim, dim);
  model.collapse_ops = {std::sqrt(kappa) * fock::annihilation(space)};
  return model;
}

}  // namespace

TEST_CASE("closed evolution matches the matrix exponential") {
  const int dim = 6;
  const HilbertSpace space(dim);
  lindblad::LindbladModel model;
  model.hamiltonian = 1.7 * fock::number_operator(space) +
                      0.4 * (fock::annihilation(space) + fock::creation(space));

  const Vec psi = fock::coherent_state(0.8, space);
  const Mat rho0 = psi * psi.adjoint();
  const double t_end = 2.0;
  const auto evo = lindblad::evolve(model, rho0, grid(t_end, 5), 1e-10);

  const Mat u = (cplx(0.0, -1.0) * t_end * model.hamiltonian).exp();
  const Mat expected = u * rho0 * u.adjoint();
  CHECK((evo.states.back() - expected).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("coherent state decay law") {
  const int dim = 25;
  const double kappa = 1.3;
  const auto model = damped_cavity(dim, kappa);
  const cplx alpha(2.0, 0.0);
  const Vec psi = fock::coherent_state(alpha, HilbertSpace(dim));
  const auto times = grid(2.0, 9);
  const auto evo = lindblad::evolve(model, psi * psi.adjoint(), times, 1e-10);

  const auto n_series =
      lindblad::real_expectation_series(evo, fock::number_operator(HilbertSpace(dim)));
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double expected = std::norm(alpha) * std::exp(-kappa * times[i]);
    CHECK(std::abs(n_series[i] - expected) < 1e-6);
  }

  SUBCASE("regressed rate within 1%") {
    // least-squares slope of ln<n> over the early window
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const int m = static_cast<int>(times.size());
    for (int i = 0; i < m; ++i) {
      sx += times[i];
      sy += std::log(n_series[i]);
      sxx += times[i] * times[i];
      sxy += times[i] * std::log(n_series[i]);
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(std::abs(-slope - kappa) < 0.01 * kappa);
  }

  SUBCASE("invariants at stored times") {
    const auto worst = evo.worst();
    CHECK(worst.trace_error < 1e-8);
    CHECK(worst.hermiticity_error < 1e-10);
    CHECK(worst.min_eigenvalue > -1e-9);
  }
}

TEST_CASE("steady state of a driven damped cavity stays put") {
  const int dim = 8;
  const HilbertSpace space(dim);
  lindblad::LindbladModel model;
  const Mat a = fock::annihilation(space);
  model.hamiltonian = 0.7 * fock::number_operator(space) + 0.3 * (a + a.adjoint());
  model.collapse_ops = {std::sqrt(2.0) * a};

  const Mat rho_ss = lindblad::steady_state(model);
  CHECK(std::abs(rho_ss.trace() - cplx(1.0)) < 1e-10);

  const auto evo = lindblad::evolve(model, rho_ss, grid(3.0, 4), 1e-10);
  CHECK((evo.states.back() - rho_ss).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("expectation series basics") {
  const int dim = 5;
  const auto model = damped_cavity(dim, 0.9);
  const Vec psi = fock::coherent_state(0.9, HilbertSpace(dim));
  const auto evo = lindblad::evolve(model, psi * psi.adjoint(), grid(1.0, 5), 1e-9);

  SUBCASE("identity gives one") {
    for (double v : lindblad::real_expectation_series(evo, Mat::Identity(dim, dim)))
      CHECK(std::abs(v - 1.0) < 1e-8);
  }

  SUBCASE("projector resolution sums to one") {
    std::vector<double> sums(evo.times.size(), 0.0);
    for (int n = 0; n < dim; ++n) {
      Mat p = Mat::Zero(dim, dim);
      p(n, n) = 1.0;
      const auto series = lindblad::real_expectation_series(evo, p);
      for (std::size_t i = 0; i < series.size(); ++i) sums[i] += series[i];
    }
    for (double s : sums) CHECK(std::abs(s - 1.0) < 1e-8);
  }

  SUBCASE("non-Hermitian observable rejected") {
    CHECK_THROWS_AS(
        lindblad::real_expectation_series(evo, fock::annihilation(HilbertSpace(dim))),
        std::invalid_argument);
  }

  SUBCASE("dimension mismatch rejected") {
    CHECK_THROWS_AS(lindblad::expectation_series(evo, Mat::Identity(3, 3)),
                    std::invalid_argument);
  }
}

TEST_CASE("superoperator linearity") {
  const int dim = 6;
  const auto model = damped_cavity(dim, 1.1);
  const HilbertSpace space(dim);
  const Vec a = fock::coherent_state(1.0, space);
  const Vec b = fock::coherent_state(cplx(0.0, -0.9), space);
  const Mat rho_a = a * a.adjoint();
  const Mat rho_b = b * b.adjoint();

  const auto times = grid(0.8, 3);
  const Mat mixed =
      lindblad::evolve(model, 0.5 * (rho_a + rho_b), times, 1e-10).states.back();
  const Mat separate =
      0.5 * (lindblad::evolve(model, rho_a, times, 1e-10).states.back() +
             lindblad::evolve(model, rho_b, times, 1e-10).states.back());
  CHECK((mixed - separate).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("halving the tolerance moves the answer by less than 10x tol") {
  const int dim = 10;
  const auto model = damped_cavity(dim, 1.0);
  const Vec psi = fock::coherent_state(1.2, HilbertSpace(dim));
  const Mat rho0 = psi * psi.adjoint();
  const double tol = 1e-7;
  const auto coarse = lindblad::evolve(model, rho0, grid(1.0, 3), tol);
  const auto fine = lindblad::evolve(model, rho0, grid(1.0, 3), tol / 2.0);
  CHECK((coarse.states.back() - fine.states.back()).cwiseAbs().maxCoeff() < 10.0 * tol);
}

TEST_CASE("time-dependent Hamiltonian contract") {
  const int dim = 4;
  const HilbertSpace space(dim);
  const Mat a = fock::annihilation(space);
  const Mat x = a + a.adjoint();

  lindblad::LindbladModel model;
  model.hamiltonian = Mat::Zero(dim, dim);
  model.hamiltonian_t = [&](double t, Mat& h) { h = std::cos(3.0 * t) * x; };

  Mat rho0 = Mat::Zero(dim, dim);
  rho0(0, 0) = 1.0;
  const double t_end = 1.0;
  const auto evo = lindblad::evolve(model, rho0, grid(t_end, 5), 1e-10);

  // commuting H(t): U = exp(-i x integral cos(3t)) with integral = sin(3T)/3
  const double phase = std::sin(3.0 * t_end) / 3.0;
  const Mat u = (cplx(0.0, -1.0) * phase * x).exp();
  const Mat expected = u * rho0 * u.adjoint();
  CHECK((evo.states.back() - expected).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("model validation") {
  lindblad::LindbladModel model;
  model.hamiltonian = Mat::Zero(3, 3);
  model.hamiltonian(0, 1) = cplx(0.0, 1.0);  // not Hermitian
  Mat rho = Mat::Identity(3, 3) / 3.0;
  CHECK_THROWS_AS(lindblad::evolve(model, rho, {0.0, 1.0}, 1e-9), std::invalid_argument);

  model.hamiltonian = Mat::Zero(3, 3);
  model.collapse_ops = {Mat::Zero(2, 2)};
  CHECK_THROWS_AS(lindblad::evolve(model, rho, {0.0, 1.0}, 1e-9), std::invalid_argument);

  model.collapse_ops.clear();
  CHECK_THROWS_AS(lindblad::evolve(model, rho, {0.5, 1.0}, 1e-9), std::invalid_argument);
  CHECK_THROWS_AS(lindblad::evolve(model, rho, {0.0, 1.0, 0.5}, 1e-9),
                  std::invalid_argument);
}
