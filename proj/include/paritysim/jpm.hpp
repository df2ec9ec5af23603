#ifndef PARITYSIM_JPM_HPP
#define PARITYSIM_JPM_HPP

#include <string>
#include <vector>

#include "paritysim/fock.hpp"
#include "paritysim/lindblad.hpp"

namespace parity::jpm {

/// Three-level threshold photon counter: ground |0>, excited |1>, absorbing
/// measured state |m>. Couplings are angular (rad/s); the gamma rates are
/// plain rates (1/s, no 2*pi). Pure dephasing is not modeled.
struct JpmParams {
  double omega_j = 0.0;   // detector frequency, rad/s (enters via detuning only)
  double g_j = 0.0;       // cavity-detector coupling, rad/s
  double gamma_j = 0.0;   // bright tunneling rate |1> -> |m>, 1/s
  double gamma_r = 0.0;   // inelastic relaxation |1> -> |0>, 1/s
  double gamma_d = 0.0;   // dark count rate |0> -> |m>, 1/s
  double measured_level_energy = 0.0;  // rad/s; arbitrary, default 0
};

void validate(const JpmParams& params);

inline constexpr int kJpmLevels = 3;
inline constexpr int kGround = 0, kExcited = 1, kMeasured = 2;

/// Cavity (x) JPM model in the frame rotating with the detector:
/// H = detuning * n (x) I + g_j (a (x) |1><0| + a^dag (x) |0><1|)
///   + measured_level_energy * I (x) |m><m|,
/// detuning = shifted cavity frequency minus omega_j. Collapse operators are
/// the dark count, inelastic relaxation and bright tunneling channels.
/// Composite dimensions above 5000 are rejected.
lindblad::LindbladModel build_measurement_model(double detuning, const JpmParams& params,
                                                const fock::HilbertSpace& cavity);

struct MeasurementCurve {
  std::vector<double> times;
  std::vector<double> p_click;
  std::string label;  // "bright", "dark", "contrast", ...
};

struct DetectionRun {
  MeasurementCurve curve;
  lindblad::EvolutionResult::Worst worst;  // stored-time invariant monitor
};

/// Click probability Tr[(I (x) |m><m|) rho(t)] for the cavity prepared in
/// |alpha_in> and the JPM in its ground state.
DetectionRun detection_probability(cplx alpha_in, double detuning, const JpmParams& params,
                                   const std::vector<double>& t_grid, int cavity_dim,
                                   double tol = 1e-9);

/// Same, for an arbitrary cavity density matrix (used for post-drive reduced
/// states that are not coherent).
DetectionRun detection_probability(const Mat& cavity_state, double detuning,
                                   const JpmParams& params,
                                   const std::vector<double>& t_grid, double tol = 1e-9);

/// C(t_M) = P_bright(t_M) - P_dark(t_M); requires a common time grid.
MeasurementCurve contrast_curve(const MeasurementCurve& bright, const MeasurementCurve& dark);

/// Closed-form detection probabilities for a coherent input:
/// ideal 1 - exp(-|alpha|^2) and the relaxation-corrected
/// 1 - exp(-|alpha|^2 gamma_j / (gamma_j + gamma_r)).
struct AnalyticDetection {
  double ideal;
  double relaxation_corrected;
};
AnalyticDetection analytic_detection_probability(cplx alpha, const JpmParams& params);

/// Subtraction back action: state proportional to S^k |alpha_in> with
/// S|n> = |n-1> (bare lowering, S|0> = 0), normalized. Throws
/// std::domain_error when the result has zero norm (vacuum input).
Vec post_click_state(cplx alpha_in, int photons_removed, const fock::HilbertSpace& space);

struct ResetSpec {
  cplx alpha_m;  // reset displacement amplitude
};

/// Applies D(-alpha_m).
Vec apply_reset(const Vec& state, const ResetSpec& reset);

}  // namespace parity::jpm

#endif
