#ifndef PARITYSIM_PROTOCOL_HPP
#define PARITYSIM_PROTOCOL_HPP

#include <string>
#include <vector>

#include "paritysim/fock.hpp"

namespace parity::drive {

/// N qubits dispersively coupled to one cavity. Angular frequencies (rad/s).
/// Sign convention: an excited qubit (label bit '1', sigma_z eigenvalue +1)
/// shifts the cavity by +chi_k, a ground qubit by -chi_k, chi_k = chi +
/// epsilons[k]. epsilons[0] is identically 0.
struct QubitRegister {
  int n_qubits = 2;                // 1, 2 or 4
  double chi = 0.0;                // base dispersive shift
  std::vector<double> epsilons;    // per-qubit mismatch; empty means all zero
  double omega_c = 0.0;            // bare cavity frequency
};

void validate(const QubitRegister& reg);

enum class Parity { Even, Odd };

/// Total dispersive shift of one computational basis state.
/// `label` is a bitstring, leftmost character = qubit 1, '1' = excited.
struct BasisStateShift {
  std::string label;
  Parity parity = Parity::Even;
  double total_shift = 0.0;   // chi-tilde = sum_k s_k chi_k
  int integer_coeff = 0;      // sum_k s_k (exact band id when mismatch-free)
};

struct Tone {
  double omega = 0.0;
  double phase = 0.0;
};

/// A(t) = a0 * sum_i cos(omega_i t + phase_i) for 0 <= t <= t_d.
struct DrivePulse {
  double a0 = 0.0;
  std::vector<Tone> tones;
  double t_d = 0.0;
};

void validate(const DrivePulse& pulse);

/// One entry per computational basis state, index order = binary value of the
/// label (leftmost qubit is the most significant bit).
std::vector<BasisStateShift> band_shifts(const QubitRegister& reg);

Parity label_parity(const std::string& label);

/// t_d = pi / chi, the drive time at which every mismatch-free even band
/// returns to vacuum.
double optimal_drive_time(const QubitRegister& reg);

/// Tones resonant with the odd-parity spectral lines: N=1 -> omega_c + chi,
/// N=2 -> omega_c, N=4 -> omega_c +- 2 chi. Phases zero.
DrivePulse parity_drive_pulse(const QubitRegister& reg, double a0, double t_d);

/// Drive amplitude that puts |alpha_O|^2 = n_odd photons in the odd bands at
/// t_d: a0 = 2 sqrt(n_odd) / t_d.
double amplitude_for_odd_occupation(double n_odd, double t_d);

/// First-order Magnus (exact for a linearly driven oscillator up to a global
/// phase): alpha(t_d) = -(a0/2) sum_i e^{-i phase_i} (e^{i Delta_i t_d} - 1) /
/// Delta_i with Delta_i = (omega_c + total_shift) - omega_i and the analytic
/// limit -(i a0/2) t_d e^{-i phase_i} applied whenever |Delta_i t_d| < 1e-8.
cplx drive_amplitude_closed_form(const BasisStateShift& shift, const DrivePulse& pulse,
                                 double omega_c);

/// Closed-form amplitude per basis state at the pulse's own t_d.
struct DriveOutcome {
  std::vector<BasisStateShift> shifts;
  std::vector<cplx> amplitudes;
};
DriveOutcome drive_outcome(const QubitRegister& reg, const DrivePulse& pulse);

/// |alpha(t)|^2 per band, sweeping the pulse duration over `t_grid` with the
/// tone set fixed. Bands group basis states of equal total shift.
struct OccupationCurves {
  std::vector<double> times;
  std::vector<double> band_shifts;           // one entry per band, ascending
  std::vector<Parity> band_parities;
  std::vector<std::vector<std::string>> band_members;
  std::vector<std::vector<double>> occupations;  // [band][time]
};
OccupationCurves occupation_curves(const QubitRegister& reg, const DrivePulse& tones,
                                   const std::vector<double>& t_grid);

/// Independent oracle: integrates the rotating-frame Schroedinger equation
/// i psi' = H'(t) psi, H'(t) = (a0/2)[a sum_i e^{i(phase_i - Delta_i t)} +
/// h.c.] from vacuum and returns <a> of the final state.
cplx drive_unitary_numeric(const BasisStateShift& shift, const DrivePulse& pulse,
                           double omega_c, const fock::HilbertSpace& space,
                           double tol = 1e-10);

}  // namespace parity::drive

#endif
