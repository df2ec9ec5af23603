#include "paritysim/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "paritysim/ode.hpp"

namespace parity::drive {

namespace {
constexpr double kResonantThreshold = 1e-8;  // |Delta * t_d| below this -> limit form
}

void validate(const QubitRegister& reg) {
  if (reg.n_qubits != 1 && reg.n_qubits != 2 && reg.n_qubits != 4)
    throw std::invalid_argument("QubitRegister: n_qubits must be 1, 2 or 4");
  if (!(reg.chi > 0.0))
    throw std::invalid_argument("QubitRegister: chi must be positive");
  if (!reg.epsilons.empty()) {
    if (static_cast<int>(reg.epsilons.size()) != reg.n_qubits)
      throw std::invalid_argument("QubitRegister: need one epsilon per qubit");
    if (reg.epsilons[0] != 0.0)
      throw std::invalid_argument("QubitRegister: epsilon_1 must be 0 by convention");
    for (double e : reg.epsilons)
      if (!(std::abs(e) < reg.chi))
        throw std::invalid_argument("QubitRegister: |epsilon_i| must be < chi");
  }
}

void validate(const DrivePulse& pulse) {
  if (pulse.tones.empty())
    throw std::invalid_argument("DrivePulse: at least one tone required");
  if (!(pulse.t_d > 0.0))
    throw std::invalid_argument("DrivePulse: t_d must be positive");
}

Parity label_parity(const std::string& label) {
  int ones = 0;
  for (char c : label) ones += (c == '1');
  return (ones % 2 == 0) ? Parity::Even : Parity::Odd;
}

std::vector<BasisStateShift> band_shifts(const QubitRegister& reg) {
  validate(reg);
  const int n = reg.n_qubits;
  std::vector<BasisStateShift> out;
  out.reserve(std::size_t(1) << n);
  for (int state = 0; state < (1 << n); ++state) {
    BasisStateShift s;
    s.label.resize(n);
    double eps_sum = 0.0;
    int coeff = 0;
    for (int q = 0; q < n; ++q) {
      const bool excited = (state >> (n - 1 - q)) & 1;
      s.label[q] = excited ? '1' : '0';
      coeff += excited ? 1 : -1;
      if (!reg.epsilons.empty())
        eps_sum += (excited ? 1.0 : -1.0) * reg.epsilons[q];
    }
    s.integer_coeff = coeff;
    // keeping the integer part separate makes mismatch-free shifts of one
    // band bit-identical across its member states
    s.total_shift = coeff * reg.chi + eps_sum;
    s.parity = label_parity(s.label);
    out.push_back(std::move(s));
  }
  return out;
}

double optimal_drive_time(const QubitRegister& reg) {
  if (!(reg.chi > 0.0))
    throw std::invalid_argument("optimal_drive_time: chi must be positive");
  return M_PI / reg.chi;
}

DrivePulse parity_drive_pulse(const QubitRegister& reg, double a0, double t_d) {
  validate(reg);
  DrivePulse p;
  p.a0 = a0;
  p.t_d = t_d;
  switch (reg.n_qubits) {
    case 1:
      p.tones = {{reg.omega_c + reg.chi, 0.0}};
      break;
    case 2:
      p.tones = {{reg.omega_c, 0.0}};
      break;
    case 4:
      p.tones = {{reg.omega_c + 2.0 * reg.chi, 0.0}, {reg.omega_c - 2.0 * reg.chi, 0.0}};
      break;
    default:
      throw std::invalid_argument("parity_drive_pulse: unsupported register size");
  }
  return p;
}

double amplitude_for_odd_occupation(double n_odd, double t_d) {
  if (n_odd < 0.0 || !(t_d > 0.0))
    throw std::invalid_argument("amplitude_for_odd_occupation: bad arguments");
  return 2.0 * std::sqrt(n_odd) / t_d;
}

namespace {
cplx closed_form_amplitude(double shifted_freq, const DrivePulse& pulse, double t_d) {
  const cplx i(0.0, 1.0);
  cplx alpha = 0.0;
  for (const Tone& tone : pulse.tones) {
    const double delta = shifted_freq - tone.omega;
    const cplx tone_phase = std::exp(-i * tone.phase);
    if (std::abs(delta * t_d) < kResonantThreshold) {
      alpha += -0.5 * pulse.a0 * tone_phase * i * t_d;
    } else {
      alpha += -0.5 * pulse.a0 * tone_phase * (std::exp(i * delta * t_d) - 1.0) / delta;
    }
  }
  return alpha;
}
}  // namespace

cplx drive_amplitude_closed_form(const BasisStateShift& shift, const DrivePulse& pulse,
                                 double omega_c) {
  validate(pulse);
  return closed_form_amplitude(omega_c + shift.total_shift, pulse, pulse.t_d);
}

DriveOutcome drive_outcome(const QubitRegister& reg, const DrivePulse& pulse) {
  DriveOutcome out;
  out.shifts = band_shifts(reg);
  out.amplitudes.reserve(out.shifts.size());
  for (const auto& s : out.shifts)
    out.amplitudes.push_back(drive_amplitude_closed_form(s, pulse, reg.omega_c));
  return out;
}

OccupationCurves occupation_curves(const QubitRegister& reg, const DrivePulse& tones,
                                   const std::vector<double>& t_grid) {
  validate(tones);
  const auto shifts = band_shifts(reg);

  // group basis states into bands of equal shift
  std::map<double, std::vector<std::size_t>> bands;
  for (std::size_t i = 0; i < shifts.size(); ++i)
    bands[shifts[i].total_shift].push_back(i);

  OccupationCurves curves;
  curves.times = t_grid;
  for (const auto& [shift_value, members] : bands) {
    curves.band_shifts.push_back(shift_value);
    curves.band_parities.push_back(shifts[members.front()].parity);
    std::vector<std::string> labels;
    for (std::size_t idx : members) labels.push_back(shifts[idx].label);
    curves.band_members.push_back(std::move(labels));

    std::vector<double> occ;
    occ.reserve(t_grid.size());
    const double freq = reg.omega_c + shift_value;
    for (double t : t_grid) {
      if (t == 0.0) {
        occ.push_back(0.0);
        continue;
      }
      occ.push_back(std::norm(closed_form_amplitude(freq, tones, t)));
    }
    curves.occupations.push_back(std::move(occ));
  }
  return curves;
}

cplx drive_unitary_numeric(const BasisStateShift& shift, const DrivePulse& pulse,
                           double omega_c, const fock::HilbertSpace& space,
                           double tol) {
  validate(pulse);
  const Mat a = fock::annihilation(space);
  const Mat ad = fock::creation(space);

  struct ToneTerm {
    double delta;
    cplx phase;
  };
  std::vector<ToneTerm> terms;
  const double shifted = omega_c + shift.total_shift;
  for (const Tone& tone : pulse.tones)
    terms.push_back({shifted - tone.omega, std::exp(cplx(0.0, tone.phase))});

  const double half_a0 = 0.5 * pulse.a0;
  const cplx mi(0.0, -1.0);
  Vec a_psi(space.dim), ad_psi(space.dim);
  auto rhs = [&](double t, const Vec& psi, Vec& dpsi) {
    cplx f = 0.0;
    for (const auto& term : terms)
      f += term.phase * std::exp(cplx(0.0, -term.delta * t));
    a_psi.noalias() = a * psi;
    ad_psi.noalias() = ad * psi;
    dpsi.noalias() = mi * half_a0 * (f * a_psi + std::conj(f) * ad_psi);
  };

  Vec psi = fock::basis_vector(space, 0);
  ode::Options opt;
  opt.tol = tol;
  ode::integrate(rhs, psi, 0.0, pulse.t_d, opt);
  return fock::mean_field(psi);
}

}  // namespace parity::drive
