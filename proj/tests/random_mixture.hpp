#pragma once

#include <random>

#include "catgen/phase_space.hpp"

namespace catgen::testing {

/// Random symmetric positive definite matrix with eigenvalues in [lo, hi].
inline Eigen::MatrixXd random_covariance(std::mt19937_64& rng, int n, double lo = 0.1, double hi = 5.0) {
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = g(rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd q = qr.householderQ();
  Eigen::VectorXd ev(n);
  for (int i = 0; i < n; ++i) ev(i) = u(rng);
  Eigen::MatrixXd v = q * ev.asDiagonal() * q.transpose();
  return 0.5 * (v + v.transpose());
}

/// Mixture of `pairs` conjugate pairs of terms with complex weights and
/// complex centers, so the result is real on real arguments.
inline GaussianMixtured random_hermitian_mixture(std::mt19937_64& rng, int modes, int pairs) {
  std::normal_distribution<double> g(0.0, 0.5);
  std::vector<GaussianTermd> terms;
  for (int k = 0; k < pairs; ++k) {
    GaussianTermd t;
    t.weight = {g(rng), g(rng)};
    t.center.resize(2 * modes);
    for (int i = 0; i < 2 * modes; ++i) t.center(i) = {g(rng), 0.3 * g(rng)};
    t.cov = random_covariance(rng, 2 * modes);
    GaussianTermd c = t;
    c.weight = std::conj(t.weight);
    c.center = t.center.conjugate();
    terms.push_back(t);
    terms.push_back(c);
  }
  return GaussianMixtured(modes, terms);
}

/// Single real Gaussian with a real center.
inline GaussianMixtured random_real_term(std::mt19937_64& rng, int modes) {
  std::normal_distribution<double> g(0.0, 0.5);
  GaussianTermd t;
  t.weight = 1.0 + std::abs(g(rng));
  t.center.resize(2 * modes);
  for (int i = 0; i < 2 * modes; ++i) t.center(i) = g(rng);
  t.cov = random_covariance(rng, 2 * modes, 0.1, 2.0);
  return GaussianMixtured(modes, {t});
}

}  // namespace catgen::testing
