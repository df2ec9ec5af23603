#include "paritysim/lindblad.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>

#include "paritysim/ode.hpp"

namespace parity::lindblad {

void validate(const LindbladModel& model, double t_span) {
  const int n = model.dim();
  if (n < 2 || model.hamiltonian.cols() != n)
    throw std::invalid_argument("LindbladModel: Hamiltonian must be square, dim >= 2");
  for (const Mat& l : model.collapse_ops)
    if (l.rows() != n || l.cols() != n)
      throw std::invalid_argument("LindbladModel: collapse operator dimension mismatch");

  auto check_herm = [&](const Mat& h, double t) {
    if (fock::hermiticity_error(h) > 1e-10) {
      std::ostringstream msg;
      msg << "LindbladModel: Hamiltonian not Hermitian at t = " << t;
      throw std::invalid_argument(msg.str());
    }
  };
  if (model.hamiltonian_t) {
    Mat h(n, n);
    for (double frac : {0.0, 0.37, 1.0}) {
      model.hamiltonian_t(frac * t_span, h);
      if (h.rows() != n || h.cols() != n)
        throw std::invalid_argument("LindbladModel: hamiltonian_t wrote wrong size");
      check_herm(h, frac * t_span);
    }
  } else {
    check_herm(model.hamiltonian, 0.0);
  }
}

namespace {

// Right-hand side with preallocated work buffers.
struct MasterRhs {
  const LindbladModel& model;
  std::vector<Mat> l_adj;
  Mat ldagl_sum;  // sum_k L_k^dag L_k
  mutable Mat h_buf, work;

  explicit MasterRhs(const LindbladModel& m) : model(m) {
    const int n = m.dim();
    ldagl_sum = Mat::Zero(n, n);
    for (const Mat& l : m.collapse_ops) {
      l_adj.push_back(l.adjoint());
      ldagl_sum += l_adj.back() * l;
    }
    h_buf = m.hamiltonian;
    work = Mat::Zero(n, n);
  }

  void operator()(double t, const Mat& rho, Mat& drho) const {
    const cplx mi(0.0, -1.0);
    if (model.hamiltonian_t) {
      model.hamiltonian_t(t, h_buf);
      drho.noalias() = mi * (h_buf * rho);
      drho.noalias() -= mi * (rho * h_buf);
    } else {
      drho.noalias() = mi * (model.hamiltonian * rho);
      drho.noalias() -= mi * (rho * model.hamiltonian);
    }
    for (std::size_t k = 0; k < model.collapse_ops.size(); ++k) {
      work.noalias() = model.collapse_ops[k] * rho;
      drho.noalias() += work * l_adj[k];
    }
    if (!model.collapse_ops.empty()) {
      drho.noalias() -= 0.5 * (ldagl_sum * rho);
      drho.noalias() -= 0.5 * (rho * ldagl_sum);
    }
  }
};

StateDiagnostics diagnose(const Mat& rho) {
  StateDiagnostics d;
  const auto full = fock::density_diagnostics(rho);
  d.trace_error = full.trace_error;
  d.hermiticity_error = full.hermiticity_error;
  d.min_eigenvalue = full.min_eigenvalue;
  return d;
}

}  // namespace

EvolutionResult evolve(const LindbladModel& model, const Mat& rho0,
                       const std::vector<double>& times, double tol) {
  validate(model, times.empty() ? 0.0 : times.back());
  const int n = model.dim();
  if (rho0.rows() != n || rho0.cols() != n)
    throw std::invalid_argument("evolve: rho0 dimension mismatch");
  if (times.empty() || times.front() != 0.0)
    throw std::invalid_argument("evolve: time grid must start at 0");
  for (std::size_t i = 1; i < times.size(); ++i)
    if (times[i] <= times[i - 1])
      throw std::invalid_argument("evolve: time grid must be strictly increasing");

  MasterRhs rhs(model);
  EvolutionResult result;
  result.times = times;
  result.states.reserve(times.size());
  result.diagnostics.reserve(times.size());

  Mat rho = 0.5 * (rho0 + rho0.adjoint());
  result.states.push_back(rho);
  result.diagnostics.push_back(diagnose(rho));

  ode::Options opt;
  opt.tol = tol;
  ode::StepStats stats;
  for (std::size_t i = 1; i < times.size(); ++i) {
    // reuse the previous accepted step as the starting guess
    opt.initial_step = stats.last_step;
    ode::integrate(rhs, rho, times[i - 1], times[i], opt, &stats);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    result.states.push_back(rho);
    result.diagnostics.push_back(diagnose(rho));
  }
  return result;
}

EvolutionResult::Worst EvolutionResult::worst() const {
  Worst w;
  w.min_eigenvalue = 1.0;
  for (std::size_t i = 0; i < diagnostics.size(); ++i) {
    const auto& d = diagnostics[i];
    if (d.trace_error >= w.trace_error) {
      w.trace_error = d.trace_error;
      w.t_trace = times[i];
    }
    if (d.hermiticity_error >= w.hermiticity_error) {
      w.hermiticity_error = d.hermiticity_error;
      w.t_herm = times[i];
    }
    if (d.min_eigenvalue <= w.min_eigenvalue) {
      w.min_eigenvalue = d.min_eigenvalue;
      w.t_eig = times[i];
    }
  }
  return w;
}

std::vector<cplx> expectation_series(const EvolutionResult& result, const Mat& observable) {
  std::vector<cplx> out;
  out.reserve(result.states.size());
  for (const Mat& rho : result.states) {
    if (rho.rows() != observable.rows() || rho.cols() != observable.cols())
      throw std::invalid_argument("expectation_series: dimension mismatch");
    out.push_back((observable * rho).trace());
  }
  return out;
}

std::vector<double> real_expectation_series(const EvolutionResult& result,
                                            const Mat& observable) {
  if (fock::hermiticity_error(observable) > 1e-12)
    throw std::invalid_argument("real_expectation_series: observable not Hermitian");
  const auto series = expectation_series(result, observable);
  std::vector<double> out;
  out.reserve(series.size());
  for (cplx v : series) {
    if (std::abs(v.imag()) > 1e-8)
      throw std::runtime_error("real_expectation_series: imaginary residue " +
                               std::to_string(v.imag()));
    out.push_back(v.real());
  }
  return out;
}

Mat liouvillian_matrix(const LindbladModel& model) {
  const int n = model.dim();
  const Eigen::Index n2 = Eigen::Index(n) * n;
  Mat h = model.hamiltonian;
  if (model.hamiltonian_t) model.hamiltonian_t(0.0, h);
  const Mat id = Mat::Identity(n, n);
  const cplx mi(0.0, -1.0);

  // column-stacking convention: vec(A X B) = (B^T (x) A) vec(X)
  Mat liou = mi * (fock::kron(id, h) - fock::kron(h.transpose(), id));
  for (const Mat& l : model.collapse_ops) {
    const Mat ldl = l.adjoint() * l;
    liou += fock::kron(l.conjugate(), l);
    liou -= 0.5 * fock::kron(id, ldl);
    liou -= 0.5 * fock::kron(ldl.transpose(), id);
  }
  (void)n2;
  return liou;
}

Mat steady_state(const LindbladModel& model) {
  const int n = model.dim();
  const Mat liou = liouvillian_matrix(model);
  Eigen::FullPivLU<Mat> lu(liou);
  lu.setThreshold(1e-9);
  const Mat kernel = lu.kernel();
  if (kernel.cols() < 1)
    throw std::runtime_error("steady_state: generator has no kernel");
  for (Eigen::Index c = 0; c < kernel.cols(); ++c) {
    Mat rho = Eigen::Map<const Mat>(kernel.col(c).data(), n, n);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const cplx tr = rho.trace();
    if (std::abs(tr) > 1e-9) {
      rho /= tr;
      return rho;
    }
  }
  throw std::runtime_error("steady_state: kernel has no trace-class element");
}

}  // namespace parity::lindblad
