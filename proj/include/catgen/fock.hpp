#pragma once

// Truncated Fock-space primitives shared by the target-state constructors and
// the Fock-basis reference simulation.

#include <Eigen/Dense>

#include <complex>
#include <vector>

namespace catgen {

/// Amplitudes over `modes` modes, each truncated at `dim` levels. Index of
/// (n_0, ..., n_{M-1}) is sum_k n_k dim^(M-1-k): mode 0 varies slowest.
struct FockVector {
  int dim = 0;
  int modes = 1;
  Eigen::VectorXcd amps;

  double norm() const { return amps.norm(); }
  /// Probability mass missing from the truncated space, for a state that is
  /// normalized in the untruncated space.
  double truncation_error() const { return 1.0 - amps.squaredNorm(); }
};

/// Single-mode operator in the Fock basis, entries(m, n) = <m|rho|n>.
struct FockMatrix {
  int dim = 0;
  Eigen::MatrixXcd entries;

  std::complex<double> trace() const { return entries.trace(); }
  bool is_hermitian(double tol) const {
    return (entries - entries.adjoint()).cwiseAbs().maxCoeff() <= tol;
  }
};

namespace fock {

Eigen::MatrixXd annihilation(int dim);

/// exp[(s/2)(a^2 - a^dag^2)] on the truncated space.
Eigen::MatrixXd squeeze_operator(double s, int dim);

/// exp[s (a^dag b^dag - a b)] on the truncated two-mode space (index n_a*dim + n_b).
/// Its quadrature action is b_a -> b_a cosh s + b_b^* sinh s.
Eigen::MatrixXd two_mode_squeeze_operator(double s, int dim);

/// exp[(theta/2)(a b^dag - a^dag b)], t = cos(theta/2). `flip_sign` uses
/// theta -> -theta; it exists for mutation tests of the sign convention.
Eigen::MatrixXd beam_splitter_operator(double t, int dim, bool flip_sign = false);

/// Coherent-state amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!).
Eigen::VectorXcd coherent_amplitudes(std::complex<double> alpha, int dim);

FockVector vacuum(int dim, int modes);
FockVector basis_state(int dim, const std::vector<int>& occupation);

/// Applies a two-mode operator to modes (first, second) of a multimode state;
/// `first` is the slow index of the operator.
FockVector apply_two_mode(const FockVector& state, const Eigen::MatrixXd& op, int first, int second);

/// Probability mass sitting in the top truncation level of any mode.
double boundary_population(const FockVector& state);

FockMatrix projector(const Eigen::VectorXcd& amps);

/// <psi| rho |psi> for a normalized single-mode vector.
double expectation(const FockMatrix& rho, const Eigen::VectorXcd& psi);

}  // namespace fock
}  // namespace catgen
