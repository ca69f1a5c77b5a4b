#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "catgen/circuit.hpp"
#include "catgen/optimizer.hpp"
#include "catgen/phase_space.hpp"

namespace catgen {

enum class SweepMode {
  optimize,  ///< optimize (t, s', alpha) per grid point
  fixed,     ///< evaluate at a fixed (t, s', alpha)
  max_size,  ///< largest mean photon number over t with fidelity >= floor
};

struct FixedTarget {
  double t = 0.21;
  double s_prime = 0.57;
  double alpha = 2.4;
};

/// Every key of the flat JSON config document. Point keys (s, t, alpha,
/// s_prime, r1sq) drive `simulate` and `density-matrix`; grid keys drive
/// `sweep` and `wigner-grid`.
struct SweepConfig {
  SweepMode mode = SweepMode::optimize;
  std::vector<double> s_grid;
  std::vector<double> r1sq_list{0.001, 0.01, 0.1};
  std::vector<double> eta_grid{1.0};
  std::optional<double> eta_d, eta_b, eta_c;  ///< per-detector overrides
  FixedTarget fixed;
  double fidelity_floor = 0.59;
  OptimizerSettings optimizer;
  std::string output;
  int threads = 1;
  int fock_dim = 16;

  // single point
  double s = 0.16;
  double r1sq = 0.001;
  double t = 0.3;
  double alpha = 1.7;
  double s_prime = 0.33;
  double eta = 1.0;

  // phase-space grid
  double grid_min = -4.0;
  double grid_max = 4.0;
  int grid_points = 161;

  SweepConfig();
  void validate() const;
  Detectors detectors(double eta_value) const;
  CircuitParams point_params() const;
};

/// Parses a flat JSON object; unknown keys and bad values throw ConfigError.
SweepConfig parse_config(const std::string& json_text);
SweepConfig load_config(const std::string& path);

struct SweepRow {
  double s = 0.0;
  double r1sq = 0.0;
  double eta = 0.0;
  double t_opt = 0.0;
  double s_prime_opt = 0.0;
  double alpha_opt = 0.0;
  double p_d = 0.0;
  double p_bc = 0.0;
  double p = 0.0;
  double f = 0.0;
  double mean_n = 0.0;
  double mqi = 0.0;
  double rel_mqi = 0.0;
  std::string status = "ok";
};

inline constexpr const char* kSweepHeader = "s,r1sq,eta,t_opt,s_prime_opt,alpha_opt,P_d,P_bc,P,F,mean_n,MQI,rel_MQI,status";

/// Seed for grid point `index`, independent of evaluation order.
std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index);

/// One grid point. Errors are reported in `status`.
SweepRow evaluate_point(const SweepConfig& config, double s, double r1sq, double eta, std::uint64_t seed);

/// Rows in grid order (r1sq outermost, then eta, then s), whatever the thread count.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows);

struct GridSpec {
  double min = -4.0;
  double max = 4.0;
  int points = 161;
};

struct WignerSample {
  double beta_r = 0.0;
  double beta_i = 0.0;
  double w = 0.0;
  double w_imag = 0.0;  ///< imaginary residue of the mixture sum
};

/// W on a points x points grid over [min, max]^2, beta_r varying fastest.
std::vector<WignerSample> export_wigner_grid(const GaussianMixtured& w, const GridSpec& grid);

void write_wigner_csv(std::ostream& os, const std::vector<WignerSample>& samples);

}  // namespace catgen
