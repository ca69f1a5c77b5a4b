#pragma once

// Truncated Fock-space simulation of the whole scheme. Shares no code with the
// Gaussian pipeline beyond the parameter struct, so it can serve as an oracle.

#include "catgen/circuit.hpp"
#include "catgen/fock.hpp"

namespace catgen {

inline constexpr double kLeakageBudget = 1e-10;

/// sech s sum_n (tanh s)^n |n, n>, the two-mode squeezed vacuum produced by
/// exp[s (a^dag d^dag - a d)]. Throws std::invalid_argument when
/// tanh(s)^dim >= 1e-12.
FockVector tmsv(double s, int dim);

/// exp[s (a^dag b^dag - a b)] on modes (first, second). Throws
/// LeakageExceeded when the result puts more than `budget` of its norm on the
/// top truncation level.
FockVector apply_tms(const FockVector& state, double s, int first, int second, double budget = kLeakageBudget);

/// Beam splitter with transmissivity t on modes (first, second).
FockVector apply_bs(const FockVector& state, double t, int first, int second, bool flip_sign = false,
                    double budget = kLeakageBudget);

struct FockOracleOptions {
  int dim = 16;                ///< levels per mode for the three-mode (a, b, c) state
  bool flip_bs_sign = false;   ///< mutation toggle for the mixing beam splitter
  double leakage_budget = kLeakageBudget;
};

struct FockCircuitResult {
  FockMatrix rho_a;  ///< normalized conditional state of mode a
  double p_d = 0.0;
  double p_bc = 0.0;
  double p = 0.0;
  double leakage = 0.0;  ///< boundary population relative to p_d * p_bc
};

/// Herald on d, second squeezing pass on (a, c), BS(t1) on (a, b), BS(t) on
/// (b, c), clicks on b and c. Throws LeakageExceeded over budget.
FockCircuitResult run_circuit_fock(const CircuitParams& params, const FockOracleOptions& options = {});

/// Whether the |0,2> -> sqrt(2) t r |1,1> amplitude of the mixing beam
/// splitter is kept in the second-order coefficient.
enum class BunchingFactor { omitted, included };

/// Low-squeezing output 2 C1 |1> + sqrt(6) C2 |3> with C1 = s r1 (r^2 - t^2)
/// and C2 = s^2 t r, or s^2 t r / sqrt(2) when the factor is omitted.
struct PerturbativeCoefficients {
  double c1 = 0.0;
  double c2 = 0.0;
  /// Predicted amplitude ratio <3|out> / <1|out>.
  double ratio() const;
};

PerturbativeCoefficients perturbative_coefficients(double s, double r1, double t, BunchingFactor factor);

/// Mixing transmissivity t in (0, 1/sqrt 2) at which the predicted ratio equals
/// sqrt(2/3), the ratio of the phi_3 state.
double t_for_phi3(double s, double r1, BunchingFactor factor);

/// rho_31 / rho_11 of a Fock density matrix, real part.
double amplitude_ratio_31(const FockMatrix& rho);

}  // namespace catgen
