#ifndef PARITYSIM_DECAY_HPP
#define PARITYSIM_DECAY_HPP

#include <vector>

#include "paritysim/fock.hpp"
#include "paritysim/lindblad.hpp"

namespace parity::decay {

/// Cavity photon loss into a smooth thermal bath. `kappa` is the field
/// (amplitude) decay rate: <a>(t) ~ e^{-kappa t}. The Lindblad operator
/// sqrt(kappa_L) a corresponds to kappa = kappa_L / 2.
struct DecayParams {
  double kappa = 0.0;  // 1/s, field decay rate
  double omega = 0.0;  // rad/s, mode frequency (0 in the cavity rotating frame)
  double nbar = 0.0;   // thermal occupation n(omega)
  double eta() const { return 1.0 + 2.0 * nbar; }
};

void validate(const DecayParams& params);

/// Matrix element rho = |alpha_s><alpha_sp| between two coherent states.
struct CoherentPair {
  cplx alpha_s;
  cplx alpha_sp;
};

/// Wigner characteristic function chi(lambda) = Tr[rho D(lambda)] of the pair
/// at t = 0, in closed form.
cplx pair_char_function(const CoherentPair& pair, cplx lambda);

/// chi(lambda, t) = chi(lambda e^{-t (kappa - i omega)}, 0)
///                  * exp((eta/2) |lambda|^2 (e^{-2 t kappa} - 1)).
cplx characteristic_evolution(const CoherentPair& pair, const DecayParams& params,
                              cplx lambda, double t);

/// The t-dependent prefactor above; non-increasing in t for kappa > 0.
double damping_prefactor(const DecayParams& params, cplx lambda, double t);

/// t -> infinity limit: Tr[rho(0)] times the thermal characteristic function.
cplx steady_state_char(const CoherentPair& pair, const DecayParams& params, cplx lambda);

/// F_ss' = Tr[rho_ss'(0)] = <alpha_sp|alpha_s>; the factor by which the decay
/// steady state damps the associated qubit coherence.
cplx steady_damping_factor(const CoherentPair& pair);

/// Main-text steady-state law |F| = exp(-N_C (1 - cos(pi eps/chi))) for the
/// two-qubit odd pair with cavity occupation N_C.
double steady_state_coherence(double n_c, double eps_over_chi);

/// Worst-case post-reset coherence loss: branch states |+-A>, k photons
/// subtracted, each branch displaced by minus its own mean field. Reports
/// 1 - |F_01| with F_01 = <psi_1|psi_0>.
struct ResetEnvelopePoint {
  double occupation;
  int photons_removed;
  double one_minus_f;
};
std::vector<ResetEnvelopePoint> post_reset_decay_envelope(
    const std::vector<double>& occupations, const std::vector<int>& photons_removed);

/// Lindblad cross-check of the steady-state law: the odd two-qubit pair
/// {01,10} (spanned as a two-level system) entangled with the driven cavity
/// states, evolved under cavity loss to its steady state.
struct SteadyCoherenceCheck {
  double f_analytic;
  double f_numeric;              // 2 |rho_Q(01,10)| at the final time
  double offdiag_block_residual; // max |rho_01(T) - F * rho_thermal|
  lindblad::EvolutionResult::Worst worst;
};
SteadyCoherenceCheck lindblad_steady_coherence(double n_c, double eps_over_chi,
                                               double nbar, double kappa_lindblad,
                                               double tol = 1e-9, int cavity_dim = 0);

}  // namespace parity::decay

#endif
