#include "catgen/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace catgen {

namespace {

using Complex = std::complex<double>;

void require_single_mode(const GaussianMixtured& w, const char* what) {
  if (w.modes() != 1) throw DimensionMismatch(std::string(what) + " expects a single-mode mixture");
}

FockMatrix density_matrix_unchecked(const GaussianMixtured& w, int dim) {
  // <alpha|rho|alpha> e^{|alpha|^2} = sum_mn rho_mn u^m v^n / sqrt(m! n!) with
  // u = alpha^*, v = alpha. The Husimi function of each term is the Gaussian
  // with covariance V + I/4, so the left side is exp(quadratic in u, v) and
  // its Taylor coefficients follow from two first-order recursions. The
  // recursions are written for g_mn = rho_mn contributions directly.
  Eigen::Matrix2cd lift;
  lift << 0.5, 0.5, Complex(0.0, 0.5), Complex(0.0, -0.5);
  const Eigen::Matrix2d swap{{0.0, 1.0}, {1.0, 0.0}};

  FockMatrix rho{dim, Eigen::MatrixXcd::Zero(dim, dim)};
  Eigen::MatrixXcd g(dim, dim);
  std::vector<double> root(dim + 1);
  for (int k = 0; k <= dim; ++k) root[k] = std::sqrt(static_cast<double>(k));

  for (const auto& t : w.terms()) {
    const Eigen::Matrix2d husimi_cov = t.cov + 0.25 * Eigen::Matrix2d::Identity();
    const CovarianceFactor<double> husimi(husimi_cov);
    const Eigen::Matrix2d prec = husimi_cov.inverse();
    const Eigen::Matrix2cd quad = -lift.transpose() * prec.cast<Complex>() * lift + swap.cast<Complex>();
    const Eigen::Vector2cd lin = lift.transpose() * prec.cast<Complex>() * t.center;
    const Complex constant = -0.5 * Complex(t.center.transpose() * prec.cast<Complex>() * t.center);
    const Complex aa = quad(0, 0), bb = quad(0, 1), cc = quad(1, 1);
    const Complex p = lin(0), q = lin(1);

    g.setZero();
    g(0, 0) = std::numbers::pi * t.weight * husimi.normalization() * std::exp(constant);
    for (int m = 0; m + 1 < dim; ++m) {
      Complex next = p * g(m, 0);
      if (m > 0) next += aa * root[m] * g(m - 1, 0);
      g(m + 1, 0) = next / root[m + 1];
    }
    for (int m = 0; m < dim; ++m) {
      for (int n = 0; n + 1 < dim; ++n) {
        Complex next = q * g(m, n);
        if (n > 0) next += cc * root[n] * g(m, n - 1);
        if (m > 0) next += bb * root[m] * g(m - 1, n);
        g(m, n + 1) = next / root[n + 1];
      }
    }
    rho.entries += g;
  }
  return rho;
}

}  // namespace

double fidelity(const GaussianMixtured& w_out, const GaussianMixtured& target) {
  require_single_mode(w_out, "fidelity");
  require_single_mode(target, "fidelity");
  const double f = (std::numbers::pi * overlap(w_out, target)).real();
  return (f < 0.0 && f > -1e-12) ? 0.0 : f;
}

double mean_photon_number(const GaussianMixtured& w) {
  require_single_mode(w, "mean_photon_number");
  Complex acc{0.0};
  for (const auto& t : w.terms()) {
    const Complex second_moment = t.cov.trace() + Complex(t.center.transpose() * t.center);
    acc += t.weight * (second_moment - 0.5);
  }
  return acc.real();
}

double mqi(const GaussianMixtured& w) {
  require_single_mode(w, "mqi");
  // MQI = Tr(rho^2 n) - Tr(rho a^dag rho a). The phase-space pair sum is
  // exact too but squares the mixture weights, which are ~1/P and cancel
  // on heralded outputs; the Fock form only sees them linearly.
  const double n_mean = std::max(mean_photon_number(w), 0.0);
  int dim = std::max(24, static_cast<int>(std::ceil(6.0 * n_mean + 16.0)));
  for (;; dim *= 2) {
    const FockMatrix rho = density_matrix_unchecked(w, dim);
    double tail = 0.0;
    for (int n = dim - 4; n < dim; ++n) tail += std::abs(rho.entries(n, n));
    if (tail < 1e-15 || dim >= kMaxMqiDim) {
      const Eigen::MatrixXcd& r = rho.entries;
      const Eigen::MatrixXcd r2 = r * r;
      Complex n_term{0.0}, cross{0.0};
      for (int n = 1; n < dim; ++n) n_term += static_cast<double>(n) * r2(n, n);
      // (a^dag rho a)_{ji} = sqrt(j i) rho_{j-1,i-1}
      for (int i = 1; i < dim; ++i)
        for (int j = 1; j < dim; ++j) cross += r(i, j) * std::sqrt(static_cast<double>(i) * j) * r(j - 1, i - 1);
      return (n_term - cross).real();
    }
  }
}

double relative_mqi(const GaussianMixtured& w) {
  const double n = mean_photon_number(w);
  return n > 1e-9 ? mqi(w) / n : 0.0;
}

FockMatrix fock_density_matrix(const GaussianMixtured& w, int dim) {
  require_single_mode(w, "fock_density_matrix");
  if (dim < 1) throw std::invalid_argument("Fock dimension must be positive");
  if (dim > kMaxDensityMatrixDim) throw std::invalid_argument("Fock dimension exceeds the supported budget");
  return density_matrix_unchecked(w, dim);
}

MetricsReport compute_metrics(const GaussianMixtured& w, const GaussianMixtured& target, int fock_dim) {
  MetricsReport r;
  r.fidelity = fidelity(w, target);
  r.mean_n = mean_photon_number(w);
  r.mqi = mqi(w);
  r.relative_mqi = r.mean_n > 1e-9 ? r.mqi / r.mean_n : 0.0;
  r.rho_fock = fock_density_matrix(w, fock_dim);
  return r;
}

}  // namespace catgen
