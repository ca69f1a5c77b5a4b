#include "catgen/fock.hpp"

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <stdexcept>
#include <vector>

namespace catgen::fock {

namespace {

int ipow(int base, int exp) {
  int r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace

Eigen::MatrixXd annihilation(int dim) {
  if (dim < 1) throw std::invalid_argument("Fock dimension must be positive");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

Eigen::MatrixXd squeeze_operator(double s, int dim) {
  const Eigen::MatrixXd a = annihilation(dim);
  const Eigen::MatrixXd a2 = a * a;
  const Eigen::MatrixXd gen = 0.5 * s * (a2 - a2.transpose());
  return gen.exp();
}

Eigen::MatrixXd two_mode_squeeze_operator(double s, int dim) {
  const Eigen::MatrixXd a = annihilation(dim);
  const Eigen::MatrixXd ab = Eigen::kroneckerProduct(a, a);
  const Eigen::MatrixXd gen = s * (ab.transpose() - ab);
  return gen.exp();
}

Eigen::MatrixXd beam_splitter_operator(double t, int dim, bool flip_sign) {
  if (!(t >= -1.0 && t <= 1.0)) throw std::invalid_argument("beam splitter transmissivity out of range");
  const double theta = 2.0 * std::acos(t) * (flip_sign ? -1.0 : 1.0);
  const Eigen::MatrixXd a = annihilation(dim);
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
  const Eigen::MatrixXd a1 = Eigen::kroneckerProduct(a, id);
  const Eigen::MatrixXd a2 = Eigen::kroneckerProduct(id, a);
  const Eigen::MatrixXd gen = 0.5 * theta * (a1 * a2.transpose() - a1.transpose() * a2);
  return gen.exp();
}

Eigen::VectorXcd coherent_amplitudes(std::complex<double> alpha, int dim) {
  Eigen::VectorXcd c(dim);
  const double mag = std::abs(alpha);
  const double phase = std::arg(alpha);
  for (int n = 0; n < dim; ++n) {
    if (mag == 0.0) {
      c(n) = n == 0 ? 1.0 : 0.0;
      continue;
    }
    const double log_mag = -0.5 * mag * mag + n * std::log(mag) - 0.5 * std::lgamma(n + 1.0);
    c(n) = std::polar(std::exp(log_mag), n * phase);
  }
  return c;
}

FockVector vacuum(int dim, int modes) {
  FockVector v{dim, modes, Eigen::VectorXcd::Zero(ipow(dim, modes))};
  v.amps(0) = 1.0;
  return v;
}

FockVector basis_state(int dim, const std::vector<int>& occupation) {
  const int modes = static_cast<int>(occupation.size());
  FockVector v{dim, modes, Eigen::VectorXcd::Zero(ipow(dim, modes))};
  int idx = 0;
  for (int n : occupation) {
    if (n < 0 || n >= dim) throw std::invalid_argument("occupation exceeds truncation");
    idx = idx * dim + n;
  }
  v.amps(idx) = 1.0;
  return v;
}

FockVector apply_two_mode(const FockVector& state, const Eigen::MatrixXd& op, int first, int second) {
  const int d = state.dim;
  const int m = state.modes;
  if (first < 0 || second < 0 || first >= m || second >= m || first == second)
    throw std::invalid_argument("apply_two_mode: bad mode pair");
  if (op.rows() != d * d || op.cols() != d * d)
    throw std::invalid_argument("apply_two_mode: operator dimension mismatch");
  const int stride_first = ipow(d, m - 1 - first);
  const int stride_second = ipow(d, m - 1 - second);
  const int total = static_cast<int>(state.amps.size());

  FockVector out = state;
  Eigen::VectorXcd local(d * d);
  for (int base = 0; base < total; ++base) {
    if ((base / stride_first) % d != 0 || (base / stride_second) % d != 0) continue;
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) local(p * d + q) = state.amps(base + p * stride_first + q * stride_second);
    if (local.squaredNorm() == 0.0) continue;
    const Eigen::VectorXcd mapped = op * local;
    for (int p = 0; p < d; ++p)
      for (int q = 0; q < d; ++q) out.amps(base + p * stride_first + q * stride_second) = mapped(p * d + q);
  }
  return out;
}

double boundary_population(const FockVector& state) {
  const int d = state.dim;
  double acc = 0.0;
  for (Eigen::Index idx = 0; idx < state.amps.size(); ++idx) {
    Eigen::Index rest = idx;
    bool edge = false;
    for (int k = 0; k < state.modes; ++k) {
      if (rest % d == d - 1) edge = true;
      rest /= d;
    }
    if (edge) acc += std::norm(state.amps(idx));
  }
  return acc;
}

FockMatrix projector(const Eigen::VectorXcd& amps) {
  return FockMatrix{static_cast<int>(amps.size()), amps * amps.adjoint()};
}

double expectation(const FockMatrix& rho, const Eigen::VectorXcd& psi) {
  const int n = std::min<int>(rho.dim, static_cast<int>(psi.size()));
  const std::complex<double> v =
      psi.head(n).adjoint() * rho.entries.topLeftCorner(n, n) * psi.head(n);
  return v.real();
}

}  // namespace catgen::fock
