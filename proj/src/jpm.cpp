#include "paritysim/jpm.hpp"

#include <cmath>
#include <stdexcept>

namespace parity::jpm {

void validate(const JpmParams& params) {
  if (params.g_j < 0.0 || params.gamma_j < 0.0 || params.gamma_r < 0.0 ||
      params.gamma_d < 0.0)
    throw std::invalid_argument("JpmParams: coupling and rates must be >= 0");
}

namespace {
Mat jpm_level_op(int ket, int bra) {
  Mat m = Mat::Zero(kJpmLevels, kJpmLevels);
  m(ket, bra) = 1.0;
  return m;
}
}  // namespace

lindblad::LindbladModel build_measurement_model(double detuning, const JpmParams& params,
                                                const fock::HilbertSpace& cavity) {
  validate(params);
  const long composite = static_cast<long>(cavity.dim) * kJpmLevels;
  if (composite > 5000)
    throw std::invalid_argument("build_measurement_model: composite dimension " +
                                std::to_string(composite) + " exceeds 5000");

  const Mat a = fock::annihilation(cavity);
  const Mat n = fock::number_operator(cavity);
  const Mat id_c = Mat::Identity(cavity.dim, cavity.dim);
  const Mat id_j = Mat::Identity(kJpmLevels, kJpmLevels);

  const Mat raise_j = jpm_level_op(kExcited, kGround);   // |1><0|
  const Mat lower_j = jpm_level_op(kGround, kExcited);   // |0><1|

  lindblad::LindbladModel model;
  model.hamiltonian = detuning * fock::kron(n, id_j) +
                      params.g_j * (fock::kron(a, raise_j) +
                                    fock::kron(a.adjoint(), lower_j));
  if (params.measured_level_energy != 0.0)
    model.hamiltonian +=
        params.measured_level_energy * fock::kron(id_c, jpm_level_op(kMeasured, kMeasured));

  model.collapse_ops = {
      std::sqrt(params.gamma_d) * fock::kron(id_c, jpm_level_op(kMeasured, kGround)),
      std::sqrt(params.gamma_r) * fock::kron(id_c, jpm_level_op(kGround, kExcited)),
      std::sqrt(params.gamma_j) * fock::kron(id_c, jpm_level_op(kMeasured, kExcited)),
  };
  return model;
}

DetectionRun detection_probability(const Mat& cavity_state, double detuning,
                                   const JpmParams& params,
                                   const std::vector<double>& t_grid, double tol) {
  const int dim = static_cast<int>(cavity_state.rows());
  const fock::HilbertSpace cavity(dim);
  const auto model = build_measurement_model(detuning, params, cavity);

  Mat jpm_ground = Mat::Zero(kJpmLevels, kJpmLevels);
  jpm_ground(kGround, kGround) = 1.0;
  const Mat rho0 = fock::kron(cavity_state, jpm_ground);

  const auto evo = lindblad::evolve(model, rho0, t_grid, tol);

  const Mat projector =
      fock::kron(Mat::Identity(dim, dim), jpm_level_op(kMeasured, kMeasured));
  DetectionRun run;
  run.curve.times = t_grid;
  run.curve.p_click = lindblad::real_expectation_series(evo, projector);
  run.curve.label = "p_click";
  run.worst = evo.worst();
  return run;
}

DetectionRun detection_probability(cplx alpha_in, double detuning, const JpmParams& params,
                                   const std::vector<double>& t_grid, int cavity_dim,
                                   double tol) {
  const fock::HilbertSpace cavity(cavity_dim);
  const Vec psi = fock::coherent_state(alpha_in, cavity);
  const Mat rho_c = psi * psi.adjoint();
  auto run = detection_probability(rho_c, detuning, params, t_grid, tol);
  run.curve.label = (alpha_in == cplx(0.0, 0.0)) ? "dark" : "bright";
  return run;
}

MeasurementCurve contrast_curve(const MeasurementCurve& bright, const MeasurementCurve& dark) {
  if (bright.times != dark.times)
    throw std::invalid_argument("contrast_curve: time grids differ");
  MeasurementCurve c;
  c.times = bright.times;
  c.label = "contrast";
  c.p_click.reserve(bright.p_click.size());
  for (std::size_t i = 0; i < bright.p_click.size(); ++i)
    c.p_click.push_back(bright.p_click[i] - dark.p_click[i]);
  return c;
}

AnalyticDetection analytic_detection_probability(cplx alpha, const JpmParams& params) {
  validate(params);
  const double occ = std::norm(alpha);
  const double total = params.gamma_j + params.gamma_r;
  const double branching = (params.gamma_j > 0.0) ? params.gamma_j / total : 0.0;
  return {1.0 - std::exp(-occ), 1.0 - std::exp(-occ * branching)};
}

Vec post_click_state(cplx alpha_in, int photons_removed, const fock::HilbertSpace& space) {
  if (photons_removed < 1)
    throw std::invalid_argument("post_click_state: photons_removed must be >= 1");
  Vec psi = fock::coherent_state(alpha_in, space);
  // S^k drops the k lowest amplitudes: amplitude of |n> becomes that of |n+k>
  Vec shifted = Vec::Zero(space.dim);
  for (int n = 0; n + photons_removed < space.dim; ++n)
    shifted(n) = psi(n + photons_removed);
  const double norm = shifted.norm();
  if (norm < 1e-150)
    throw std::domain_error("post_click_state: zero-norm result (no photons to subtract)");
  return shifted / norm;
}

Vec apply_reset(const Vec& state, const ResetSpec& reset) {
  const fock::HilbertSpace space(static_cast<int>(state.size()));
  return fock::displacement(-reset.alpha_m, space) * state;
}

}  // namespace parity::jpm
