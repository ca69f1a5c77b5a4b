#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>

#include "catgen/circuit.hpp"

namespace catgen {

struct NelderMeadSettings {
  int max_iterations = 2000;
  double f_tolerance = 1e-11;  ///< spread of simplex values
  double x_tolerance = 1e-7;   ///< simplex diameter
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes f from `start` with initial simplex edges `step`. Non-finite
/// values are treated as +inf.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& start,
                             const Eigen::VectorXd& step, const NelderMeadSettings& settings = {});

struct OptimizerSettings {
  NelderMeadSettings simplex;
  int multistarts = 5;
  std::uint64_t seed = 20240601;
  /// Lower bound on the target amplitude; the odd cat degenerates at 0.
  double alpha_floor = 0.05;
};

struct Detectors {
  double eta_d = 1.0;
  double eta_b = 1.0;
  double eta_c = 1.0;

  static Detectors uniform(double eta) { return {eta, eta, eta}; }
};

struct FidelityOptimum {
  double t = 0.0;
  double s_prime = 0.0;
  double alpha = 0.0;
  double fidelity = 0.0;
  bool converged = false;
};

/// Maximizes F(run_circuit(s, t1, t), sSCS_odd(alpha, s')) over (t, s', alpha).
FidelityOptimum optimize_fidelity(double s, double t1, const Detectors& etas, const OptimizerSettings& settings = {});

struct TargetOptimum {
  double s_prime = 0.0;
  double alpha = 0.0;
  double fidelity = 0.0;
  bool converged = false;
};

/// Best odd squeezed-cat match to a fixed single-mode state, over (s', alpha).
TargetOptimum optimize_target(const GaussianMixtured& w_out, const OptimizerSettings& settings = {});

struct SizeOptimum {
  double t = 0.0;
  double s_prime = 0.0;
  double alpha = 0.0;
  double fidelity = 0.0;
  double mean_n = 0.0;
  bool feasible = false;  ///< some t reached the fidelity floor
};

/// Largest output mean photon number over t such that the best odd
/// squeezed-cat fidelity stays >= fidelity_floor.
SizeOptimum maximize_mean_n(double s, double t1, const Detectors& etas, double fidelity_floor,
                            const OptimizerSettings& settings = {});

}  // namespace catgen
