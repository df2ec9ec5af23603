#ifndef PARITYSIM_FOCK_HPP
#define PARITYSIM_FOCK_HPP

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace parity {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

namespace fock {

/// Truncated single-mode Fock space, or any finite-level subsystem.
/// Composite spaces are handled through explicit factor-dimension lists;
/// the leftmost factor is always the slowest-varying index.
struct HilbertSpace {
  int dim;
  explicit HilbertSpace(int d);
};

/// Smallest truncation that keeps the Poisson tail of |alpha> below ~1e-10
/// for |alpha|^2 <= 16: ceil(|alpha|^2 + 6|alpha| + 10).
int recommended_dim(double alpha_abs);

bool truncation_adequate(cplx alpha, const HilbertSpace& space);

/// Handler invoked when an operation is asked to represent a coherent
/// amplitude the truncation cannot hold. Default writes to stderr.
void set_truncation_warning_handler(std::function<void(const std::string&)> handler);

/// a|n> = sqrt(n)|n-1> on the truncated basis.
Mat annihilation(const HilbertSpace& space);
/// Adjoint of annihilation.
Mat creation(const HilbertSpace& space);
/// a^dag a.
Mat number_operator(const HilbertSpace& space);

/// D(alpha) = exp(alpha a^dag - conj(alpha) a), dense matrix exponential.
Mat displacement(cplx alpha, const HilbertSpace& space);

/// Coherent-state amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!), renormalized
/// after truncation.
Vec coherent_state(cplx alpha, const HilbertSpace& space);

/// <alpha|beta> = exp(-|alpha|^2/2 - |beta|^2/2 + conj(alpha) beta), closed
/// form without truncation.
cplx coherent_overlap(cplx alpha, cplx beta);

/// Kronecker composition; leftmost operator is the slowest-varying index.
Mat tensor_embed(const std::vector<Mat>& ops);
Mat kron(const Mat& a, const Mat& b);

/// Trace out every subsystem not listed in `keep` (indices into `dims`,
/// strictly increasing). Preserves trace and Hermiticity.
Mat partial_trace(const Mat& rho, const std::vector<int>& dims,
                  const std::vector<int>& keep);

double hermiticity_error(const Mat& m);
/// Smallest eigenvalue of the Hermitian part of rho.
double min_eigenvalue(const Mat& rho);

struct DensityDiagnostics {
  double trace_error;        // |Tr(rho) - 1|
  double hermiticity_error;  // max |rho - rho^dag|
  double min_eigenvalue;
};
DensityDiagnostics density_diagnostics(const Mat& rho);

cplx expectation(const Mat& op, const Vec& psi);
double real_expectation(const Mat& op, const Vec& psi);
/// <a> of a pure state.
cplx mean_field(const Vec& psi);

Vec basis_vector(const HilbertSpace& space, int n);

}  // namespace fock
}  // namespace parity

#endif
