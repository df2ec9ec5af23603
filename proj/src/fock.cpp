#include "paritysim/fock.hpp"

#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

namespace parity::fock {

namespace {
std::function<void(const std::string&)>& warning_handler() {
  static std::function<void(const std::string&)> handler =
      [](const std::string& msg) { std::cerr << "paritysim: " << msg << "\n"; };
  return handler;
}
}  // namespace

HilbertSpace::HilbertSpace(int d) : dim(d) {
  if (d < 2) {
    throw std::invalid_argument("HilbertSpace: dim must be >= 2, got " +
                                std::to_string(d));
  }
}

int recommended_dim(double alpha_abs) {
  const double a = std::abs(alpha_abs);
  return static_cast<int>(std::ceil(a * a + 6.0 * a + 10.0));
}

bool truncation_adequate(cplx alpha, const HilbertSpace& space) {
  const double a = std::abs(alpha);
  return a * a + 6.0 * a + 10.0 <= static_cast<double>(space.dim);
}

void set_truncation_warning_handler(std::function<void(const std::string&)> handler) {
  warning_handler() = std::move(handler);
}

namespace {
void warn_if_truncated(cplx alpha, const HilbertSpace& space, const char* where) {
  if (!truncation_adequate(alpha, space)) {
    std::ostringstream msg;
    msg << where << ": dim " << space.dim << " is below the recommended "
        << recommended_dim(std::abs(alpha)) << " for |alpha| = " << std::abs(alpha);
    if (warning_handler()) warning_handler()(msg.str());
  }
}
}  // namespace

Mat annihilation(const HilbertSpace& space) {
  Mat a = Mat::Zero(space.dim, space.dim);
  for (int n = 1; n < space.dim; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

Mat creation(const HilbertSpace& space) { return annihilation(space).adjoint(); }

Mat number_operator(const HilbertSpace& space) {
  Mat n = Mat::Zero(space.dim, space.dim);
  for (int k = 0; k < space.dim; ++k) n(k, k) = double(k);
  return n;
}

Mat displacement(cplx alpha, const HilbertSpace& space) {
  warn_if_truncated(alpha, space, "displacement");
  if (alpha == cplx(0.0, 0.0)) return Mat::Identity(space.dim, space.dim);
  const Mat a = annihilation(space);
  const Mat gen = alpha * a.adjoint() - std::conj(alpha) * a;
  return gen.exp();
}

Vec coherent_state(cplx alpha, const HilbertSpace& space) {
  warn_if_truncated(alpha, space, "coherent_state");
  Vec psi(space.dim);
  psi(0) = std::exp(-0.5 * std::norm(alpha));
  for (int n = 1; n < space.dim; ++n)
    psi(n) = psi(n - 1) * alpha / std::sqrt(double(n));
  psi.normalize();
  return psi;
}

cplx coherent_overlap(cplx alpha, cplx beta) {
  return std::exp(-0.5 * std::norm(alpha) - 0.5 * std::norm(beta) +
                  std::conj(alpha) * beta);
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Mat tensor_embed(const std::vector<Mat>& ops) {
  if (ops.empty()) throw std::invalid_argument("tensor_embed: empty operator list");
  for (const Mat& op : ops)
    if (op.rows() != op.cols())
      throw std::invalid_argument("tensor_embed: operators must be square");
  Mat out = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) out = kron(out, ops[i]);
  return out;
}

Mat partial_trace(const Mat& rho, const std::vector<int>& dims,
                  const std::vector<int>& keep) {
  const int n = static_cast<int>(dims.size());
  Eigen::Index total = 1;
  for (int d : dims) {
    if (d < 1) throw std::invalid_argument("partial_trace: bad factor dim");
    total *= d;
  }
  if (rho.rows() != total || rho.cols() != total)
    throw std::invalid_argument("partial_trace: dims do not match matrix size");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] < 0 || keep[i] >= n)
      throw std::invalid_argument("partial_trace: keep index out of range");
    if (i > 0 && keep[i] <= keep[i - 1])
      throw std::invalid_argument("partial_trace: keep must be strictly increasing");
  }

  std::vector<int> traced;
  for (int i = 0; i < n; ++i)
    if (std::find(keep.begin(), keep.end(), i) == keep.end()) traced.push_back(i);

  // strides with leftmost factor slowest
  std::vector<Eigen::Index> stride(n, 1);
  for (int i = n - 2; i >= 0; --i) stride[i] = stride[i + 1] * dims[i + 1];

  Eigen::Index dim_keep = 1, dim_traced = 1;
  for (int i : keep) dim_keep *= dims[i];
  for (int i : traced) dim_traced *= dims[i];

  // full-space offsets for each kept (resp. traced) multi-index
  auto offsets = [&](const std::vector<int>& subs, Eigen::Index count) {
    std::vector<Eigen::Index> off(count, 0);
    for (Eigen::Index flat = 0; flat < count; ++flat) {
      Eigen::Index rem = flat, o = 0;
      for (int j = static_cast<int>(subs.size()) - 1; j >= 0; --j) {
        const int d = dims[subs[j]];
        o += (rem % d) * stride[subs[j]];
        rem /= d;
      }
      off[flat] = o;
    }
    return off;
  };
  const auto keep_off = offsets(keep, dim_keep);
  const auto tr_off = offsets(traced, dim_traced);

  Mat out = Mat::Zero(dim_keep, dim_keep);
  for (Eigen::Index r = 0; r < dim_keep; ++r)
    for (Eigen::Index c = 0; c < dim_keep; ++c) {
      cplx sum = 0.0;
      for (Eigen::Index t = 0; t < dim_traced; ++t)
        sum += rho(keep_off[r] + tr_off[t], keep_off[c] + tr_off[t]);
      out(r, c) = sum;
    }
  return out;
}

double hermiticity_error(const Mat& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

double min_eigenvalue(const Mat& rho) {
  const Mat h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

DensityDiagnostics density_diagnostics(const Mat& rho) {
  DensityDiagnostics d;
  d.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
  d.hermiticity_error = hermiticity_error(rho);
  d.min_eigenvalue = min_eigenvalue(rho);
  return d;
}

cplx expectation(const Mat& op, const Vec& psi) { return psi.dot(op * psi); }

double real_expectation(const Mat& op, const Vec& psi) {
  return expectation(op, psi).real();
}

cplx mean_field(const Vec& psi) {
  cplx sum = 0.0;
  for (Eigen::Index n = 0; n + 1 < psi.size(); ++n)
    sum += std::conj(psi(n)) * psi(n + 1) * std::sqrt(double(n + 1));
  return sum;
}

Vec basis_vector(const HilbertSpace& space, int n) {
  if (n < 0 || n >= space.dim)
    throw std::invalid_argument("basis_vector: index out of range");
  Vec v = Vec::Zero(space.dim);
  v(n) = 1.0;
  return v;
}

}  // namespace parity::fock
