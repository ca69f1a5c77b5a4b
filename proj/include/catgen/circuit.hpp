#pragma once

// Conditional cat-state generator: NDPA heralding at PD_d, a second pass
// through the NDPA with a fresh idler c, the tap BS_ab, the mixer BS_bc and
// coincident on-off clicks at PD_b and PD_c.

#include "catgen/phase_space.hpp"

namespace catgen {

struct CircuitParams {
  double s = 0.04;    ///< NDPA squeezing, used for both passes
  double t1 = 0.0;    ///< tap beam splitter transmissivity
  double t = 0.5;     ///< mixing beam splitter transmissivity
  double eta_d = 1.0;
  double eta_b = 1.0;
  double eta_c = 1.0;

  /// Parameters with tap reflectance r1^2 and one efficiency for all detectors.
  static CircuitParams with_reflectance(double s, double r1sq, double t, double eta = 1.0);

  double r1() const;
  double r() const;
  void validate() const;
};

struct CircuitResult {
  GaussianMixtured w_out{1};  ///< normalized single-mode output
  double p_d = 0.0;
  double p_bc = 0.0;
  double p = 0.0;  ///< p_d * p_bc
};

struct HeraldResult {
  GaussianMixtured state{1};  ///< normalized state of mode a
  double p_d = 0.0;
};

/// Two-mode squeezed vacuum on (a, d) with an on-off click on d.
HeraldResult herald_single_photon(double s, double eta_d);

enum class DetectionOrder { b_then_c, c_then_b };

CircuitResult run_circuit(const CircuitParams& params, DetectionOrder order = DetectionOrder::b_then_c);

/// Full four-mode Wigner function over (a, b, c, d) after both beam splitters,
/// with no detector applied yet. Conditioning it on clicks at d, b and c
/// reproduces p_d * p_bc.
GaussianMixtured joint_state_before_detection(const CircuitParams& params);

}  // namespace catgen
