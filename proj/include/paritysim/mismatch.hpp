#ifndef PARITYSIM_MISMATCH_HPP
#define PARITYSIM_MISMATCH_HPP

#include <string>
#include <vector>

#include "paritysim/fock.hpp"
#include "paritysim/jpm.hpp"
#include "paritysim/protocol.hpp"

namespace parity::mismatch {

/// Drive outcome at t_d = pi/chi for a register with dispersive-shift
/// mismatch; amplitudes follow the protocol closed form.
struct MismatchScenario {
  drive::QubitRegister reg;
  drive::DrivePulse pulse;
  std::vector<drive::BasisStateShift> shifts;
  std::vector<cplx> amplitudes;
};

MismatchScenario mismatch_amplitudes(const drive::QubitRegister& reg, double a0);

/// Two-qubit closed forms at t_d = pi/chi (single tone at omega_c):
///   alpha_01 = -(a0 / 2 eps) (e^{i pi eps/chi} - 1), etc.
/// The eps -> 0 limit is taken analytically.
struct TwoQubitAmplitudes {
  cplx a00, a01, a10, a11;
};
TwoQubitAmplitudes two_qubit_amplitudes(double a0, double chi, double eps);

/// Exact odd/even occupations and their small-mismatch expansions:
///   |alpha_O|^2 = (a0/2)^2 (pi/chi)^2 (1 - (pi eps/chi)^2 / 12)
///   |alpha_E|^2 = (a0/2)^2 (pi/chi)^2 (eps / 2 chi)^2
struct OccupationExpansion {
  double odd_exact, odd_series, odd_rel_err;
  double even_exact, even_series, even_rel_err;
};
OccupationExpansion occupation_expansions(double a0, double chi, double eps);

/// Coherence of an equal superposition of the two same-parity basis states
/// (odd pair {01,10}, even pair {00,11}), cavity initially in vacuum.
/// D = <alpha_s'|alpha_s>; -ln D = |alpha|^2 + conj(alpha)^2 exactly, with
/// the leading-order value A^2 ((pi eps/chi)^4 / 2 + i (pi eps/chi)^3).
struct CoherenceReport {
  cplx decoherence_factor;   // D
  double magnitude;          // |D|
  double phase;              // arg D
  cplx neg_log_exact;        // -ln D
  cplx neg_log_leading;      // leading-order Taylor value
  int magnitude_order;       // order in eps/chi of -ln|D| (2 odd, 4 even)
  int phase_order;           // order of the phase   (1 odd, 3 even)
};
CoherenceReport intra_subspace_decoherence(const MismatchScenario& scenario,
                                           drive::Parity parity);

/// Output-basis rotation caused by unequal detection probabilities within a
/// parity subspace: O = (1 + 2 sqrt(P_a P_b) / (P_a + P_b)) / 2 and its
/// small-delta approximation O ~ 1 - delta^2 u^2 e^{-2u} / (4 (1 - e^{-u}))
/// with u the effective exponent of the detection law and
/// |alpha_b| = |alpha_a| (1 + delta).
struct OverlapReport {
  double p_a, p_b;
  double overlap_exact;
  double overlap_approx;
  double delta;
  double damping_factor;  // u^2 e^{-2u} / 4
};
OverlapReport measurement_basis_overlap(cplx alpha_a, cplx alpha_b,
                                        const jpm::JpmParams& params,
                                        bool relaxation_corrected = false);

}  // namespace parity::mismatch

#endif
