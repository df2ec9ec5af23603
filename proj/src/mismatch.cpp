#include "paritysim/mismatch.hpp"

#include <cmath>
#include <stdexcept>

namespace parity::mismatch {

MismatchScenario mismatch_amplitudes(const drive::QubitRegister& reg, double a0) {
  drive::validate(reg);
  MismatchScenario s;
  s.reg = reg;
  s.pulse = drive::parity_drive_pulse(reg, a0, drive::optimal_drive_time(reg));
  auto outcome = drive::drive_outcome(reg, s.pulse);
  s.shifts = std::move(outcome.shifts);
  s.amplitudes = std::move(outcome.amplitudes);
  return s;
}

TwoQubitAmplitudes two_qubit_amplitudes(double a0, double chi, double eps) {
  if (!(chi > 0.0) || !(std::abs(eps) < chi))
    throw std::invalid_argument("two_qubit_amplitudes: need 0 < |eps| < chi or eps = 0");
  const cplx i(0.0, 1.0);
  const double x = M_PI * eps / chi;

  TwoQubitAmplitudes amps;
  if (std::abs(x) < 1e-8) {
    // eps -> 0 limit of Eq-style odd amplitudes; even bands vanish
    const cplx odd = -i * 0.5 * a0 * (M_PI / chi);
    amps.a01 = odd;
    amps.a10 = odd;
  } else {
    amps.a01 = -(a0 / (2.0 * eps)) * (std::exp(i * x) - 1.0);
    amps.a10 = (a0 / (2.0 * eps)) * (std::exp(-i * x) - 1.0);
  }
  amps.a00 = (a0 / (2.0 * (2.0 * chi + eps))) * (std::exp(-i * x) - 1.0);
  amps.a11 = -(a0 / (2.0 * (2.0 * chi + eps))) * (std::exp(i * x) - 1.0);
  return amps;
}

OccupationExpansion occupation_expansions(double a0, double chi, double eps) {
  if (!(chi > 0.0) || !(std::abs(eps) < chi))
    throw std::invalid_argument("occupation_expansions: need |eps/chi| < 1");
  const double x = M_PI * eps / chi;
  const double base = (0.5 * a0) * (0.5 * a0) * (M_PI / chi) * (M_PI / chi);

  OccupationExpansion e;
  if (eps == 0.0) {
    e.odd_exact = base;
    e.even_exact = 0.0;
  } else {
    const double osc = 2.0 - 2.0 * std::cos(x);
    e.odd_exact = (a0 / (2.0 * eps)) * (a0 / (2.0 * eps)) * osc;
    const double pref = a0 / (2.0 * (2.0 * chi + eps));
    e.even_exact = pref * pref * osc;
  }
  e.odd_series = base * (1.0 - x * x / 12.0);
  e.even_series = base * (eps / (2.0 * chi)) * (eps / (2.0 * chi));

  const double floor = 1e-15;
  e.odd_rel_err = std::abs(e.odd_series - e.odd_exact) /
                  std::max(std::abs(e.odd_exact), floor);
  e.even_rel_err = std::abs(e.even_series - e.even_exact) /
                   std::max(std::abs(e.even_exact), floor);
  return e;
}

CoherenceReport intra_subspace_decoherence(const MismatchScenario& scenario,
                                           drive::Parity parity) {
  if (scenario.reg.n_qubits != 2)
    throw std::invalid_argument(
        "intra_subspace_decoherence: defined for the two-qubit pairs {01,10} and {00,11}");
  const double chi = scenario.reg.chi;
  const double eps = scenario.reg.epsilons.empty() ? 0.0 : scenario.reg.epsilons[1];
  const double x = M_PI * eps / chi;
  const cplx i(0.0, 1.0);

  // basis order 00, 01, 10, 11
  const double a0 = scenario.pulse.a0;
  cplx alpha_s, alpha_sp;
  double pref;  // A_O or its even counterpart
  if (parity == drive::Parity::Odd) {
    alpha_s = scenario.amplitudes[1];   // |01>
    alpha_sp = scenario.amplitudes[2];  // |10>
    pref = (eps != 0.0) ? a0 / (2.0 * eps) : 0.0;
  } else {
    alpha_s = scenario.amplitudes[0];   // |00>
    alpha_sp = scenario.amplitudes[3];  // |11>
    pref = a0 / (2.0 * (2.0 * chi + eps));
  }

  CoherenceReport r;
  r.decoherence_factor = fock::coherent_overlap(alpha_s, alpha_sp);
  r.magnitude = std::abs(r.decoherence_factor);
  r.phase = std::arg(r.decoherence_factor);
  const cplx a_conj_sq = std::conj(alpha_s) * std::conj(alpha_s);
  r.neg_log_exact = std::norm(alpha_s) + a_conj_sq;
  r.neg_log_leading = pref * pref * (0.5 * x * x * x * x + i * x * x * x);
  if (parity == drive::Parity::Odd) {
    r.magnitude_order = 2;  // of -ln|D| relative to base occupation
    r.phase_order = 1;
  } else {
    r.magnitude_order = 4;
    r.phase_order = 3;
  }
  return r;
}

OverlapReport measurement_basis_overlap(cplx alpha_a, cplx alpha_b,
                                        const jpm::JpmParams& params,
                                        bool relaxation_corrected) {
  const auto det_a = jpm::analytic_detection_probability(alpha_a, params);
  const auto det_b = jpm::analytic_detection_probability(alpha_b, params);
  OverlapReport r;
  r.p_a = relaxation_corrected ? det_a.relaxation_corrected : det_a.ideal;
  r.p_b = relaxation_corrected ? det_b.relaxation_corrected : det_b.ideal;
  if (r.p_a == 0.0 && r.p_b == 0.0)
    throw std::domain_error("measurement_basis_overlap: both detection probabilities vanish");

  r.overlap_exact = 0.5 * (1.0 + 2.0 * std::sqrt(r.p_a) * std::sqrt(r.p_b) / (r.p_a + r.p_b));

  const double mag_a = std::abs(alpha_a);
  if (mag_a == 0.0)
    throw std::domain_error("measurement_basis_overlap: delta undefined for alpha_a = 0");
  r.delta = std::abs(alpha_b) / mag_a - 1.0;

  const double branching =
      relaxation_corrected && params.gamma_j > 0.0
          ? params.gamma_j / (params.gamma_j + params.gamma_r)
          : 1.0;
  const double u = branching * mag_a * mag_a;  // exponent of the detection law
  r.damping_factor = 0.25 * u * u * std::exp(-2.0 * u);
  r.overlap_approx = 1.0 - r.delta * r.delta * r.damping_factor / (1.0 - std::exp(-u));
  return r;
}

}  // namespace parity::mismatch
