#include "paritysim/jc.hpp"

#include <cmath>
#include <stdexcept>

#include "paritysim/ode.hpp"

namespace parity::jc {

JcModel build_jc_model(const drive::QubitRegister& reg, double detuning, int cavity_dim) {
  drive::validate(reg);
  if (detuning == 0.0)
    throw std::invalid_argument("build_jc_model: detuning must be nonzero");
  JcModel model;
  model.n_qubits = reg.n_qubits;
  model.omega_c = reg.omega_c;
  model.detuning = detuning;
  model.cavity_dim = cavity_dim;
  for (int k = 0; k < reg.n_qubits; ++k) {
    const double chi_k = reg.chi + (reg.epsilons.empty() ? 0.0 : reg.epsilons[k]);
    if (chi_k * detuning <= 0.0)
      throw std::invalid_argument("build_jc_model: chi and detuning signs incompatible");
    model.chis.push_back(chi_k);
    model.couplings.push_back(std::sqrt(chi_k * detuning));
  }
  return model;
}

double jc_band_shift(const JcModel& model, const std::string& label) {
  if (static_cast<int>(label.size()) != model.n_qubits)
    throw std::invalid_argument("jc_band_shift: label length mismatch");
  double shift = 0.0;
  for (int k = 0; k < model.n_qubits; ++k)
    shift += (label[k] == '1' ? -1.0 : 1.0) * model.chis[k];
  return shift;
}

namespace {

// Operators in the frame rotating at omega_c for the cavity and omega_q for
// every qubit. The qubit self-energies drop out and the excitation-swapping
// coupling carries the detuning phase instead:
//   H'(t) = e^{-i detuning t} C+ + e^{+i detuning t} C-
//           + (a0/2)(f(t) a + conj(f(t)) a^dag),   C+ = sum_k g_k sigma_+^k a.
// This keeps the state amplitudes slow (the oscillation lives in a term of
// magnitude g, not in diagonal energies of magnitude detuning).
struct JcOperators {
  SpMat coupling_plus;   // sum_k g_k sigma_+^k a
  SpMat coupling_minus;  // adjoint
  SpMat a_full;          // cavity annihilation embedded in the joint space
  SpMat n_full;          // bare cavity number
};

JcOperators build_operators(const JcModel& model) {
  const int nq = model.n_qubits;
  const int dimc = model.cavity_dim;
  const Mat id2 = Mat::Identity(2, 2);
  const fock::HilbertSpace cavity(dimc);
  const Mat a = fock::annihilation(cavity);
  const Mat idc = Mat::Identity(dimc, dimc);

  Mat s_raise = Mat::Zero(2, 2);  // |1><0|
  s_raise(1, 0) = 1.0;

  auto embed_qubit = [&](const Mat& op, int k) {
    std::vector<Mat> factors(nq, id2);
    factors[k] = op;
    factors.push_back(idc);
    return fock::tensor_embed(factors);
  };

  std::vector<Mat> cavity_factors(nq, id2);
  cavity_factors.push_back(a);
  const Mat a_joint = fock::tensor_embed(cavity_factors);

  Mat cp = Mat::Zero(a_joint.rows(), a_joint.cols());
  for (int k = 0; k < nq; ++k)
    cp += model.couplings[k] * (embed_qubit(s_raise, k) * a_joint);

  JcOperators ops;
  ops.coupling_plus = cp.sparseView(1.0, 1e-14);
  ops.coupling_minus = SpMat(ops.coupling_plus.adjoint());
  ops.a_full = a_joint.sparseView(1.0, 1e-14);
  std::vector<Mat> nf(nq, id2);
  nf.push_back(fock::number_operator(cavity));
  ops.n_full = fock::tensor_embed(nf).sparseView(1.0, 1e-14);
  return ops;
}

int label_to_index(const std::string& label) {
  int idx = 0;
  for (char c : label) {
    if (c != '0' && c != '1')
      throw std::invalid_argument("basis label must be a bitstring");
    idx = idx * 2 + (c == '1' ? 1 : 0);
  }
  return idx;
}

}  // namespace

JcDriveResult jc_drive_evolution(const JcModel& model, const drive::DrivePulse& pulse,
                                 const std::string& label,
                                 const std::vector<double>& t_grid, double tol) {
  drive::validate(pulse);
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw std::invalid_argument("jc_drive_evolution: time grid must start at 0");

  const auto ops = build_operators(model);
  const SpMat a_dag = SpMat(ops.a_full.adjoint());
  const int dim_joint = (1 << model.n_qubits) * model.cavity_dim;

  struct ToneTerm {
    double delta;  // omega_i - omega_c
    double phase;
  };
  std::vector<ToneTerm> terms;
  for (const auto& tone : pulse.tones)
    terms.push_back({tone.omega - model.omega_c, tone.phase});

  const double half_a0 = 0.5 * pulse.a0;
  const double detuning = model.detuning;
  const cplx mi(0.0, -1.0);
  Vec work1(dim_joint), work2(dim_joint);
  auto rhs = [&](double t, const Vec& psi, Vec& dpsi) {
    cplx f = 0.0;
    for (const auto& term : terms)
      f += std::exp(cplx(0.0, term.delta * t + term.phase));
    const cplx swap_phase = std::exp(cplx(0.0, -detuning * t));
    work1.noalias() = ops.coupling_plus * psi;
    work2.noalias() = ops.coupling_minus * psi;
    dpsi.noalias() = swap_phase * work1 + std::conj(swap_phase) * work2;
    work1.noalias() = ops.a_full * psi;
    work2.noalias() = a_dag * psi;
    dpsi.noalias() += half_a0 * (f * work1 + std::conj(f) * work2);
    dpsi *= mi;
  };

  Vec psi = Vec::Zero(dim_joint);
  psi(label_to_index(label) * model.cavity_dim) = 1.0;

  JcDriveResult result;
  result.times = t_grid;
  result.occupation.reserve(t_grid.size());
  result.occupation.push_back(0.0);
  result.band_shift = jc_band_shift(model, label);
  result.parity = drive::label_parity(label);

  ode::Options opt;
  opt.tol = tol;
  ode::StepStats stats;
  for (std::size_t i = 1; i < t_grid.size(); ++i) {
    opt.initial_step = stats.last_step;
    ode::integrate(rhs, psi, t_grid[i - 1], t_grid[i], opt, &stats);
    result.occupation.push_back(std::real(psi.dot(ops.n_full * psi)));
  }
  result.norm_drift = std::abs(psi.norm() - 1.0);

  // reduced cavity state: the cavity is the fastest index
  const int nq_dim = 1 << model.n_qubits;
  Mat rho_c = Mat::Zero(model.cavity_dim, model.cavity_dim);
  for (int q = 0; q < nq_dim; ++q) {
    const auto block = psi.segment(q * model.cavity_dim, model.cavity_dim);
    rho_c.noalias() += block * block.adjoint();
  }
  result.final_cavity_state = rho_c;
  return result;
}

JcContrastResult jc_contrast(const JcModel& model, const drive::DrivePulse& pulse,
                             const jpm::JpmParams& params,
                             const std::vector<double>& t_m, int bright_cavity_dim,
                             double tol, double drive_tol) {
  // representative state per band; within a band residuals agree up to
  // mismatch, which enters through the chis
  const std::string odd_label = std::string(model.n_qubits - 1, '0') + "1";
  std::vector<std::string> even_labels;
  even_labels.push_back(std::string(model.n_qubits, '0'));
  even_labels.push_back(std::string(model.n_qubits, '1'));
  if (model.n_qubits >= 4) {
    std::string center(model.n_qubits, '0');
    center[model.n_qubits - 1] = '1';
    center[model.n_qubits - 2] = '1';
    even_labels.push_back(center);
  }

  const std::vector<double> drive_grid = {0.0, pulse.t_d};
  JcContrastResult result;

  JcDriveResult worst_even;
  bool first = true;
  for (const auto& label : even_labels) {
    auto run = jc_drive_evolution(model, pulse, label, drive_grid, drive_tol);
    if (first || run.occupation.back() > worst_even.occupation.back()) {
      worst_even = std::move(run);
      result.even_label = label;
      first = false;
    }
  }
  auto odd_run = jc_drive_evolution(model, pulse, odd_label, drive_grid, drive_tol);

  result.even_band_shift = worst_even.band_shift;
  result.even_occupation = worst_even.occupation.back();
  result.odd_occupation = odd_run.occupation.back();

  auto truncate = [](const Mat& rho, int dim) {
    Mat out = rho.topLeftCorner(dim, dim);
    out /= out.trace().real();
    return out;
  };
  const int even_dim = std::min(
      model.cavity_dim,
      std::max(10, fock::recommended_dim(std::sqrt(std::max(0.0, result.even_occupation)))));
  const int bright_dim = std::min(model.cavity_dim, bright_cavity_dim);

  const auto bright = jpm::detection_probability(
      truncate(odd_run.final_cavity_state, bright_dim), odd_run.band_shift, params, t_m, tol);
  const auto dark = jpm::detection_probability(
      truncate(worst_even.final_cavity_state, even_dim), worst_even.band_shift, params,
      t_m, tol);

  result.times = t_m;
  result.bright = bright.curve.p_click;
  result.dark = dark.curve.p_click;
  result.contrast.resize(t_m.size());
  result.max_contrast = -1.0;
  for (std::size_t i = 0; i < t_m.size(); ++i) {
    result.contrast[i] = result.bright[i] - result.dark[i];
    if (result.contrast[i] > result.max_contrast) {
      result.max_contrast = result.contrast[i];
      result.t_at_max = t_m[i];
    }
  }

  result.worst = bright.worst;
  auto merge = [&](const lindblad::EvolutionResult::Worst& w) {
    if (w.trace_error > result.worst.trace_error) {
      result.worst.trace_error = w.trace_error;
      result.worst.t_trace = w.t_trace;
    }
    if (w.hermiticity_error > result.worst.hermiticity_error) {
      result.worst.hermiticity_error = w.hermiticity_error;
      result.worst.t_herm = w.t_herm;
    }
    if (w.min_eigenvalue < result.worst.min_eigenvalue) {
      result.worst.min_eigenvalue = w.min_eigenvalue;
      result.worst.t_eig = w.t_eig;
    }
  };
  merge(dark.worst);
  return result;
}

}  // namespace parity::jc
