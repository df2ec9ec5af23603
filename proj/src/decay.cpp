#include "paritysim/decay.hpp"

#include <cmath>
#include <stdexcept>

#include "paritysim/jpm.hpp"
#include "paritysim/mismatch.hpp"

namespace parity::decay {

void validate(const DecayParams& params) {
  if (params.kappa < 0.0 || params.nbar < 0.0)
    throw std::invalid_argument("DecayParams: kappa and nbar must be >= 0");
}

cplx pair_char_function(const CoherentPair& pair, cplx lambda) {
  // <alpha_sp| D(lambda) |alpha_s>
  const cplx phase = 0.5 * (lambda * std::conj(pair.alpha_s) -
                            std::conj(lambda) * pair.alpha_s);
  return std::exp(phase) * fock::coherent_overlap(pair.alpha_sp, pair.alpha_s + lambda);
}

double damping_prefactor(const DecayParams& params, cplx lambda, double t) {
  return std::exp(0.5 * params.eta() * std::norm(lambda) *
                  (std::exp(-2.0 * t * params.kappa) - 1.0));
}

cplx characteristic_evolution(const CoherentPair& pair, const DecayParams& params,
                              cplx lambda, double t) {
  validate(params);
  const cplx shrink = std::exp(-t * cplx(params.kappa, -params.omega));
  return pair_char_function(pair, lambda * shrink) * damping_prefactor(params, lambda, t);
}

cplx steady_damping_factor(const CoherentPair& pair) {
  return fock::coherent_overlap(pair.alpha_sp, pair.alpha_s);
}

cplx steady_state_char(const CoherentPair& pair, const DecayParams& params, cplx lambda) {
  return steady_damping_factor(pair) *
         std::exp(-0.5 * params.eta() * std::norm(lambda));
}

double steady_state_coherence(double n_c, double eps_over_chi) {
  if (n_c < 0.0)
    throw std::invalid_argument("steady_state_coherence: occupation must be >= 0");
  return std::exp(-n_c * (1.0 - std::cos(M_PI * eps_over_chi)));
}

std::vector<ResetEnvelopePoint> post_reset_decay_envelope(
    const std::vector<double>& occupations, const std::vector<int>& photons_removed) {
  std::vector<ResetEnvelopePoint> out;
  for (double occ : occupations) {
    if (!(occ > 0.0))
      throw std::invalid_argument("post_reset_decay_envelope: occupation must be > 0");
    const double amp = std::sqrt(occ);
    const fock::HilbertSpace space(fock::recommended_dim(amp) + 4);
    for (int k : photons_removed) {
      const Vec psi0 = jpm::post_click_state(amp, k, space);
      const Vec psi1 = jpm::post_click_state(-amp, k, space);
      const Vec reset0 = jpm::apply_reset(psi0, {fock::mean_field(psi0)});
      const Vec reset1 = jpm::apply_reset(psi1, {fock::mean_field(psi1)});
      const cplx f01 = reset1.dot(reset0);
      out.push_back({occ, k, 1.0 - std::abs(f01)});
    }
  }
  return out;
}

SteadyCoherenceCheck lindblad_steady_coherence(double n_c, double eps_over_chi,
                                               double nbar, double kappa_lindblad,
                                               double tol, int cavity_dim) {
  if (!(n_c > 0.0) || !(kappa_lindblad > 0.0))
    throw std::invalid_argument("lindblad_steady_coherence: bad parameters");

  // scaled units: chi = 1, eps = eps_over_chi; only the initial amplitudes
  // depend on them (the decay itself is frequency-free in the rotating frame)
  const auto unit = mismatch::two_qubit_amplitudes(1.0, 1.0, eps_over_chi);
  const double a0 = std::sqrt(n_c) / std::abs(unit.a01);
  const cplx alpha01 = a0 * unit.a01;
  const cplx alpha10 = a0 * unit.a10;

  const int dim = (cavity_dim > 0) ? cavity_dim
                                   : fock::recommended_dim(std::abs(alpha01));
  const fock::HilbertSpace cavity(dim);

  // qubit pair {|01>, |10>} spanned as a two-level factor (slowest index)
  const Vec c0 = fock::coherent_state(alpha01, cavity);
  const Vec c1 = fock::coherent_state(alpha10, cavity);
  Vec psi = Vec::Zero(2 * dim);
  psi.segment(0, dim) = c0 / std::sqrt(2.0);
  psi.segment(dim, dim) = c1 / std::sqrt(2.0);
  const Mat rho0 = psi * psi.adjoint();

  lindblad::LindbladModel model;
  model.hamiltonian = Mat::Zero(2 * dim, 2 * dim);
  const Mat id2 = Mat::Identity(2, 2);
  const Mat a = fock::annihilation(cavity);
  model.collapse_ops.push_back(std::sqrt(kappa_lindblad * (nbar + 1.0)) *
                               fock::kron(id2, a));
  if (nbar > 0.0)
    model.collapse_ops.push_back(std::sqrt(kappa_lindblad * nbar) *
                                 fock::kron(id2, a.adjoint()));

  const double t_end = 40.0 / kappa_lindblad;
  std::vector<double> times;
  for (int i = 0; i <= 8; ++i) times.push_back(t_end * i / 8.0);

  const auto evo = lindblad::evolve(model, rho0, times, tol);
  const Mat& final_state = evo.states.back();

  SteadyCoherenceCheck check;
  check.f_analytic = steady_state_coherence(std::norm(alpha01), eps_over_chi);
  const Mat rho_q = fock::partial_trace(final_state, {2, dim}, {0});
  check.f_numeric = 2.0 * std::abs(rho_q(0, 1));

  // thermal state of the cavity at nbar
  Mat rho_th = Mat::Zero(dim, dim);
  if (nbar == 0.0) {
    rho_th(0, 0) = 1.0;
  } else {
    double norm = 0.0;
    for (int n = 0; n < dim; ++n) {
      rho_th(n, n) = std::pow(nbar / (1.0 + nbar), n) / (1.0 + nbar);
      norm += rho_th(n, n).real();
    }
    rho_th /= norm;
  }
  const cplx f01 = steady_damping_factor({alpha01, alpha10});
  const Mat block01 = final_state.block(0, dim, dim, dim);
  check.offdiag_block_residual = (block01 - 0.5 * f01 * rho_th).cwiseAbs().maxCoeff();
  check.worst = evo.worst();
  return check;
}

}  // namespace parity::decay
