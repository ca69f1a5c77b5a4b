#pragma once

// Constructors for the states and detector elements of the scheme, in
// Gaussian-mixture (Wigner) and truncated-Fock form.

#include <complex>

#include "catgen/fock.hpp"
#include "catgen/phase_space.hpp"

namespace catgen {

enum class Parity { even, odd };

/// Squeezed cat target S(s') (|alpha> +- |-alpha>), alpha real.
struct TargetSpec {
  double alpha = 0.0;
  double s_prime = 0.0;
  Parity parity = Parity::odd;

  void validate() const;
};

/// Squeezing in dB: 20 s / ln 10 (so ln sqrt 2 is 3.01 dB).
double squeezing_to_db(double s);
double squeezing_from_db(double db);

/// Normalization of |alpha> +- |-alpha>: 1/sqrt(2 +- 2 e^{-2 alpha^2}).
double cat_normalization(double alpha, Parity parity);

GaussianMixtured vacuum_wigner();
GaussianMixtured coherent_wigner(std::complex<double> alpha);
GaussianMixtured thermal_wigner(double mean_photons);
GaussianMixtured squeezed_vacuum_wigner(double s);

/// Unsqueezed cat (s_prime ignored): two displaced vacua plus the interference
/// fringe -+ 2 e^{-2 alpha^2} W_vac cos(4 alpha b_i) written as a conjugate pair
/// of Gaussians centered at +-i alpha on the imaginary axis.
GaussianMixtured scs_wigner(const TargetSpec& spec);

/// scs_wigner transformed by the single-mode squeezer S(s').
GaussianMixtured sscs_wigner(const TargetSpec& spec);

enum class PovmKind { click, no_click };

/// On-off detector element with efficiency eta. The no-click element
/// sum_n (1-eta)^n |n><n| has Wigner function (1/eta) W_th with covariance
/// (2 - eta)/(4 eta) I; the click element is identity minus that.
struct PovmElement {
  PovmKind kind = PovmKind::click;
  double eta = 1.0;
  OperatorKernel<double> kernel;
};

PovmElement off_povm(double eta);
PovmElement click_povm(double eta);

/// Probability of the element's outcome for detector efficiency eta when n
/// photons arrive: (1-eta)^n for no-click, 1 - (1-eta)^n for click.
double povm_diagonal(const PovmElement& element, int n);

/// (-i)^n sqrt(n!/(2n)!) H_n(i a^dag / sqrt 2)|0>.
FockVector phi_n_fock(int n, int dim);

/// S(ln sqrt 2)|SCS_{(-1)^n}(sqrt n)>; throws when dim captures less than
/// 1 - 1e-10 of the norm.
FockVector psi_n_fock(int n, int dim);

FockVector scs_fock(const TargetSpec& spec, int dim);
FockVector sscs_fock(const TargetSpec& spec, int dim);

}  // namespace catgen
