#pragma once

#include "catgen/fock.hpp"
#include "catgen/phase_space.hpp"

namespace catgen {

/// Largest Fock truncation accepted by fock_density_matrix.
inline constexpr int kMaxDensityMatrixDim = 20;
/// Largest internal truncation used when evaluating the MQI.
inline constexpr int kMaxMqiDim = 384;

struct MetricsReport {
  double fidelity = 0.0;
  double mean_n = 0.0;
  double mqi = 0.0;
  double relative_mqi = 0.0;
  FockMatrix rho_fock;
};

/// pi * integral(W_out W_target); exact for a pure target.
double fidelity(const GaussianMixtured& w_out, const GaussianMixtured& target);

/// <a^dag a> = integral(W |b|^2) - 1/2.
double mean_photon_number(const GaussianMixtured& w);

/// Measure of quantum interference (pi/2) integral W (-d^2/db db^* - 1) W,
/// with d^2/db db^* = (1/4) Laplacian.
double mqi(const GaussianMixtured& w);

/// mqi / mean_n, or 0 when mean_n <= 1e-9.
double relative_mqi(const GaussianMixtured& w);

/// rho_mn = <m|rho|n> for m, n < dim, exact for Gaussian mixtures.
FockMatrix fock_density_matrix(const GaussianMixtured& w, int dim);

MetricsReport compute_metrics(const GaussianMixtured& w, const GaussianMixtured& target, int fock_dim);

}  // namespace catgen
