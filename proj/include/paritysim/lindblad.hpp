#ifndef PARITYSIM_LINDBLAD_HPP
#define PARITYSIM_LINDBLAD_HPP

#include <functional>
#include <vector>

#include "paritysim/fock.hpp"

namespace parity::lindblad {

/// rho' = -i[H, rho] + sum_k (L_k rho L_k^dag - 1/2 {L_k^dag L_k, rho}).
/// `hamiltonian_t`, when set, writes H(t) into its output argument and is
/// sampled at the integrator stages; otherwise `hamiltonian` is used as a
/// constant. All operators live on one Hilbert space.
struct LindbladModel {
  Mat hamiltonian;
  std::function<void(double, Mat&)> hamiltonian_t;
  std::vector<Mat> collapse_ops;

  int dim() const { return static_cast<int>(hamiltonian.rows()); }
};

/// Throws if dimensions disagree or H is not Hermitian (checked at t = 0 and,
/// for time-dependent models, at a few sample times of the given span).
void validate(const LindbladModel& model, double t_span = 0.0);

struct StateDiagnostics {
  double trace_error = 0.0;
  double hermiticity_error = 0.0;
  double min_eigenvalue = 0.0;
};

struct EvolutionResult {
  std::vector<double> times;
  std::vector<Mat> states;
  std::vector<StateDiagnostics> diagnostics;

  /// Worst diagnostics over all stored times, with the offending times.
  struct Worst {
    double trace_error = 0.0;
    double hermiticity_error = 0.0;
    double min_eigenvalue = 0.0;
    double t_trace = 0.0, t_herm = 0.0, t_eig = 0.0;
  };
  Worst worst() const;
};

/// Integrates the master equation with an adaptive embedded Runge-Kutta
/// (Dormand-Prince 5(4)) directly on the density matrix. The state is
/// re-Hermitized after every accepted step. Trace/Hermiticity/positivity are
/// monitored (not enforced) at the stored times. `times` must be strictly
/// increasing and start at 0.
EvolutionResult evolve(const LindbladModel& model, const Mat& rho0,
                       const std::vector<double>& times, double tol = 1e-9);

/// Tr(O rho(t)) per stored time.
std::vector<cplx> expectation_series(const EvolutionResult& result, const Mat& observable);

/// Real part of Tr(O rho(t)); requires Hermitian O and throws if any
/// imaginary residue exceeds 1e-8.
std::vector<double> real_expectation_series(const EvolutionResult& result,
                                            const Mat& observable);

/// Column-stacked superoperator matrix of the generator (dim^2 x dim^2).
/// Time-dependent Hamiltonians are sampled at t = 0.
Mat liouvillian_matrix(const LindbladModel& model);

/// Dense null-space solve for a stationary state; intended for small
/// dimensions. Throws if no one-dimensional kernel with nonzero trace is
/// found.
Mat steady_state(const LindbladModel& model);

}  // namespace parity::lindblad

#endif
