#include <doctest.h>

#include <cmath>

#include "paritysim/mismatch.hpp"

using namespace parity;
using drive::Parity;

namespace {

drive::QubitRegister reg2(double eps_over_chi) {
  drive::QubitRegister reg;
  reg.n_qubits = 2;
  reg.chi = 2.0 * M_PI * 5e6;
  reg.epsilons = {0.0, eps_over_chi * reg.chi};
  return reg;
}

// a0 that puts |alpha_O|^2 = 9 in the matched odd bands
double a0_for_nine(double chi) { return 6.0 * chi / M_PI; }

}  // namespace

TEST_CASE("two-qubit amplitude closed forms") {
  const double chi = 2.0 * M_PI * 5e6;
  const double a0 = a0_for_nine(chi);

  SUBCASE("eps -> 0 limit") {
    const auto amps = mismatch::two_qubit_amplitudes(a0, chi, 0.0);
    const cplx beta(0.0, -0.5 * a0 * M_PI / chi);
    CHECK(std::abs(amps.a01 - beta) < 1e-12);
    CHECK(std::abs(amps.a10 - beta) < 1e-12);
    CHECK(std::abs(amps.a00) == 0.0);
  }

  SUBCASE("conjugation symmetry within each parity subspace") {
    for (double e : {0.01, 0.1, 0.2}) {
      const auto amps = mismatch::two_qubit_amplitudes(a0, chi, e * chi);
      CHECK(std::abs(amps.a11 + std::conj(amps.a00)) < 1e-16 * std::abs(amps.a00));
      CHECK(std::abs(amps.a10 + std::conj(amps.a01)) < 1e-16 * std::abs(amps.a01));
      // equal magnitudes -> equal detection probability within a subspace
      CHECK(std::abs(amps.a00) == std::abs(amps.a11));
      CHECK(std::abs(amps.a01) == std::abs(amps.a10));
    }
  }

  SUBCASE("matches the generic drive closed form exactly") {
    for (double e : {1e-3, 0.05, 0.19}) {
      const auto scenario = mismatch::mismatch_amplitudes(reg2(e), a0);
      const auto amps = mismatch::two_qubit_amplitudes(a0, chi, e * chi);
      // basis order 00, 01, 10, 11
      CHECK(std::abs(scenario.amplitudes[0] - amps.a00) <= 1e-12 * std::abs(amps.a00));
      CHECK(std::abs(scenario.amplitudes[1] - amps.a01) <= 1e-12 * std::abs(amps.a01));
      CHECK(std::abs(scenario.amplitudes[2] - amps.a10) <= 1e-12 * std::abs(amps.a10));
      CHECK(std::abs(scenario.amplitudes[3] - amps.a11) <= 1e-12 * std::abs(amps.a11));
    }
  }
}

TEST_CASE("four-qubit amplitudes compose per tone") {
  drive::QubitRegister reg;
  reg.n_qubits = 4;
  reg.chi = 2.0 * M_PI * 5e6;
  reg.epsilons = {0.0, 0.08 * reg.chi, 0.04 * reg.chi, -0.04 * reg.chi};
  const auto scenario = mismatch::mismatch_amplitudes(reg, a0_for_nine(reg.chi));
  REQUIRE(scenario.amplitudes.size() == 16);

  // reference: sum the single-tone closed forms by hand
  const cplx i(0.0, 1.0);
  const double t_d = scenario.pulse.t_d;
  for (std::size_t s = 0; s < 16; ++s) {
    cplx expected = 0.0;
    for (const auto& tone : scenario.pulse.tones) {
      const double delta = scenario.shifts[s].total_shift - tone.omega;
      expected += (std::abs(delta * t_d) < 1e-8)
                      ? -0.5 * scenario.pulse.a0 * i * t_d
                      : -0.5 * scenario.pulse.a0 * (std::exp(i * delta * t_d) - 1.0) / delta;
    }
    CHECK(std::abs(scenario.amplitudes[s] - expected) <= 1e-12 * (1.0 + std::abs(expected)));
  }
}

TEST_CASE("occupation expansions") {
  const double chi = 2.0 * M_PI * 5e6;
  const double a0 = a0_for_nine(chi);

  SUBCASE("series accuracy at eps/chi = 0.01") {
    const auto e = mismatch::occupation_expansions(a0, chi, 0.01 * chi);
    CHECK(e.odd_rel_err < 1e-6);
    // the even series keeps only the leading power, so its relative error
    // is first order in eps/chi
    CHECK(e.even_rel_err < 1.5 * 0.01);
    CHECK(e.odd_exact == doctest::Approx(9.0).epsilon(1e-3));
  }

  SUBCASE("matched case") {
    const auto e = mismatch::occupation_expansions(a0, chi, 0.0);
    CHECK(e.even_exact == 0.0);
    CHECK(e.even_series == 0.0);
    CHECK(e.odd_exact == doctest::Approx(9.0));
  }

  SUBCASE("log-log slope of |alpha_E|^2 vs eps is 2.00 +- 0.05") {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (double e = 1e-3; e <= 1.0001e-2; e *= std::pow(10.0, 0.125)) {
      const auto exp_e = mismatch::occupation_expansions(a0, chi, e * chi);
      const double x = std::log(e), y = std::log(exp_e.even_exact);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(std::abs(slope - 2.0) < 0.05);
  }

  SUBCASE("odd-band deficit is quadratic as well") {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    const double base = 9.0;
    for (double e = 1e-3; e <= 1.0001e-2; e *= std::pow(10.0, 0.125)) {
      const auto exp_e = mismatch::occupation_expansions(a0, chi, e * chi);
      const double x = std::log(e), y = std::log(base - exp_e.odd_exact);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
      ++m;
    }
    const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    CHECK(std::abs(slope - 2.0) < 0.05);
  }
}

TEST_CASE("intra-subspace decoherence") {
  const double chi = 2.0 * M_PI * 5e6;
  const double a0 = a0_for_nine(chi);

  SUBCASE("matched register keeps D = 1") {
    const auto r = mismatch::intra_subspace_decoherence(
        mismatch::mismatch_amplitudes(reg2(0.0), a0), Parity::Odd);
    CHECK(std::abs(r.decoherence_factor - cplx(1.0)) < 1e-12);
  }

  SUBCASE("odd pair leading order within 1% at eps/chi = 1e-2") {
    const auto r = mismatch::intra_subspace_decoherence(
        mismatch::mismatch_amplitudes(reg2(1e-2), a0), Parity::Odd);
    const cplx exact = -std::log(r.decoherence_factor);
    CHECK(std::abs(exact - r.neg_log_exact) < 1e-12 * std::abs(exact));
    CHECK(std::abs(r.neg_log_leading - exact) < 1e-2 * std::abs(exact));
    // real part alone (the magnitude damping) also matches to 1%
    CHECK(std::abs(r.neg_log_leading.real() - exact.real()) < 1e-2 * exact.real());
  }

  SUBCASE("even pair is higher order than the odd pair") {
    for (double e : {0.02, 0.05, 0.1}) {
      const auto scenario = mismatch::mismatch_amplitudes(reg2(e), a0);
      const auto odd = mismatch::intra_subspace_decoherence(scenario, Parity::Odd);
      const auto even = mismatch::intra_subspace_decoherence(scenario, Parity::Even);
      CHECK(1.0 - even.magnitude < 0.1 * (1.0 - odd.magnitude));
      CHECK(even.magnitude <= 1.0 + 1e-15);
      CHECK(odd.magnitude <= 1.0 + 1e-15);
    }
  }

  SUBCASE("conjugate symmetry D(eps) = conj(D(-eps))") {
    for (double e : {0.03, 0.12}) {
      const auto plus = mismatch::intra_subspace_decoherence(
          mismatch::mismatch_amplitudes(reg2(e), a0), Parity::Odd);
      const auto minus = mismatch::intra_subspace_decoherence(
          mismatch::mismatch_amplitudes(reg2(-e), a0), Parity::Odd);
      CHECK(std::abs(plus.decoherence_factor - std::conj(minus.decoherence_factor)) <
            1e-14);
    }
  }
}

TEST_CASE("measurement-basis overlap") {
  jpm::JpmParams params;
  params.gamma_j = 2e8;
  params.gamma_r = 2e8;

  SUBCASE("equal probabilities give unit overlap") {
    const auto r = mismatch::measurement_basis_overlap(3.0, 3.0, params, false);
    CHECK(r.overlap_exact == doctest::Approx(1.0));
    CHECK(r.delta == 0.0);
  }

  SUBCASE("ideal damping factor at |alpha| = 3") {
    const auto r = mismatch::measurement_basis_overlap(3.0, 3.0 * 1.001, params, false);
    const double expected = 81.0 * std::exp(-18.0) / 4.0;
    CHECK(r.damping_factor == doctest::Approx(expected).epsilon(1e-12));
    CHECK(r.damping_factor < 1e-5);
    CHECK(r.damping_factor == doctest::Approx(3.08e-7).epsilon(0.01));
  }

  SUBCASE("corrected damping scales as |alpha|^4 e^{-|alpha|^2} for gamma_j = gamma_r") {
    const auto r3 = mismatch::measurement_basis_overlap(3.0, 3.003, params, true);
    // |alpha|^4 e^{-|alpha|^2} evaluates to about 1e-2 at |alpha| = 3
    CHECK(81.0 * std::exp(-9.0) == doctest::Approx(0.01).epsilon(0.05));
    const double c3 = r3.damping_factor / (81.0 * std::exp(-9.0));
    const auto r2 = mismatch::measurement_basis_overlap(2.0, 2.002, params, true);
    const double c2 = r2.damping_factor / (16.0 * std::exp(-4.0));
    CHECK(c3 == doctest::Approx(c2).epsilon(1e-12));  // same proportionality constant
  }

  SUBCASE("approximation remainder is far below the delta^2 term at |alpha| = 3") {
    // the approximate overlap drops corrections of order e^{-3|alpha|^2}, so
    // its delta^2 coefficient is only asymptotically exact; at the operating
    // point |alpha| = 3 the remainder sits many orders below delta^2
    for (double delta : {1e-2, 1e-3, 1e-4}) {
      const auto r = mismatch::measurement_basis_overlap(3.0, 3.0 * (1.0 + delta), params,
                                                         false);
      const double remainder = std::abs(r.overlap_exact - r.overlap_approx);
      CHECK(remainder < 1e-6 * delta * delta + 1e-15);
    }
  }

  SUBCASE("overlap bounds") {
    for (double factor : {1.0, 1.2, 2.0, 10.0}) {
      const auto r = mismatch::measurement_basis_overlap(0.6, 0.6 * factor, params, false);
      CHECK(r.overlap_exact <= 1.0 + 1e-15);
      CHECK(r.overlap_exact >= 0.5);
    }
  }

  SUBCASE("degenerate inputs signalled") {
    CHECK_THROWS_AS(mismatch::measurement_basis_overlap(0.0, 0.0, params, false),
                    std::domain_error);
  }
}
