#include "catgen/states.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "catgen/symplectic.hpp"

namespace catgen {

namespace {

constexpr double kVacuumVariance = 0.25;

GaussianTermd make_term(std::complex<double> weight, std::complex<double> re, std::complex<double> im,
                        double var_re, double var_im) {
  GaussianTermd t;
  t.weight = weight;
  t.center.resize(2);
  t.center << re, im;
  t.cov = Eigen::Matrix2d{{var_re, 0.0}, {0.0, var_im}};
  return t;
}

// Extra levels used when building squeezed Fock states, so that the
// truncated generator's edge effects stay far above the returned levels.
constexpr int kSqueezePadding = 60;

}  // namespace

void TargetSpec::validate() const {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("target alpha must be >= 0");
  if (!std::isfinite(s_prime)) throw std::invalid_argument("target squeezing must be finite");
  if (parity == Parity::odd && alpha == 0.0)
    throw std::invalid_argument("odd cat is undefined at alpha = 0");
}

double squeezing_to_db(double s) { return 20.0 * s / std::log(10.0); }
double squeezing_from_db(double db) { return db * std::log(10.0) / 20.0; }

double cat_normalization(double alpha, Parity parity) {
  const double overlap = std::exp(-2.0 * alpha * alpha);
  // 1 - e^{-2a^2} loses precision for small alpha; expm1 keeps it.
  const double denom = parity == Parity::even ? 2.0 + 2.0 * overlap : -2.0 * std::expm1(-2.0 * alpha * alpha);
  return 1.0 / std::sqrt(denom);
}

GaussianMixtured vacuum_wigner() {
  return GaussianMixtured(1, {make_term(1.0, 0.0, 0.0, kVacuumVariance, kVacuumVariance)});
}

GaussianMixtured coherent_wigner(std::complex<double> alpha) {
  return GaussianMixtured(1, {make_term(1.0, alpha.real(), alpha.imag(), kVacuumVariance, kVacuumVariance)});
}

GaussianMixtured thermal_wigner(double mean_photons) {
  if (!(mean_photons >= 0.0)) throw std::invalid_argument("thermal occupation must be >= 0");
  const double var = (2.0 * mean_photons + 1.0) / 4.0;
  return GaussianMixtured(1, {make_term(1.0, 0.0, 0.0, var, var)});
}

GaussianMixtured squeezed_vacuum_wigner(double s) {
  return apply_affine(vacuum_wigner(), single_mode_squeezer(s));
}

GaussianMixtured scs_wigner(const TargetSpec& spec) {
  spec.validate();
  const double a = spec.alpha;
  const double n2 = std::pow(cat_normalization(a, spec.parity), 2);
  const double fringe = (spec.parity == Parity::even ? 1.0 : -1.0) * n2 * std::exp(-2.0 * a * a);
  const std::complex<double> ia(0.0, a);
  const GaussianMixtured raw(1, {
      make_term(n2, a, 0.0, kVacuumVariance, kVacuumVariance),
      make_term(n2, -a, 0.0, kVacuumVariance, kVacuumVariance),
      make_term(fringe, 0.0, ia, kVacuumVariance, kVacuumVariance),
      make_term(fringe, 0.0, -ia, kVacuumVariance, kVacuumVariance),
  });
  return merged(raw);
}

GaussianMixtured sscs_wigner(const TargetSpec& spec) {
  return apply_affine(scs_wigner(spec), single_mode_squeezer(spec.s_prime));
}

PovmElement off_povm(double eta) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("detector efficiency must lie in (0, 1]");
  const double var = (2.0 - eta) / (4.0 * eta);
  PovmElement e;
  e.kind = PovmKind::no_click;
  e.eta = eta;
  e.kernel.identity = 0.0;
  e.kernel.gaussian = GaussianMixtured(1, {make_term(1.0 / eta, 0.0, 0.0, var, var)});
  return e;
}

PovmElement click_povm(double eta) {
  PovmElement e = off_povm(eta);
  e.kind = PovmKind::click;
  e.kernel.identity = 1.0;
  e.kernel.gaussian = scaled(e.kernel.gaussian, std::complex<double>(-1.0));
  return e;
}

double povm_diagonal(const PovmElement& element, int n) {
  const double off = std::pow(1.0 - element.eta, n);
  return element.kind == PovmKind::no_click ? off : 1.0 - off;
}

FockVector phi_n_fock(int n, int dim) {
  if (n < 0) throw std::invalid_argument("phi_n: n must be >= 0");
  if (dim <= n) throw std::invalid_argument("phi_n: truncation must exceed n");
  // H_n(x) = n! sum_m (-1)^m (2x)^(n-2m) / (m! (n-2m)!), x = i a^dag / sqrt 2,
  // and a^dag^k |0> = sqrt(k!) |k>.
  FockVector v{dim, 1, Eigen::VectorXcd::Zero(dim)};
  const std::complex<double> minus_i(0.0, -1.0);
  const std::complex<double> i(0.0, 1.0);
  const double log_pref = 0.5 * (std::lgamma(n + 1.0) - std::lgamma(2.0 * n + 1.0)) + std::lgamma(n + 1.0);
  for (int m = 0; 2 * m <= n; ++m) {
    const int k = n - 2 * m;
    const double log_mag = log_pref + 0.5 * k * std::log(2.0) - std::lgamma(m + 1.0) -
                           std::lgamma(k + 1.0) + 0.5 * std::lgamma(k + 1.0);
    const std::complex<double> phase = std::pow(minus_i, n) * std::pow(i, k) * (m % 2 == 0 ? 1.0 : -1.0);
    v.amps(k) = phase * std::exp(log_mag);
  }
  return v;
}

FockVector scs_fock(const TargetSpec& spec, int dim) {
  spec.validate();
  const double sign = spec.parity == Parity::even ? 1.0 : -1.0;
  const Eigen::VectorXcd plus = fock::coherent_amplitudes(spec.alpha, dim);
  const Eigen::VectorXcd minus = fock::coherent_amplitudes(-spec.alpha, dim);
  return FockVector{dim, 1, cat_normalization(spec.alpha, spec.parity) * (plus + sign * minus)};
}

FockVector sscs_fock(const TargetSpec& spec, int dim) {
  const int work = dim + kSqueezePadding;
  const FockVector cat = scs_fock(spec, work);
  const Eigen::VectorXcd squeezed = fock::squeeze_operator(spec.s_prime, work) * cat.amps;
  return FockVector{dim, 1, squeezed.head(dim)};
}

FockVector psi_n_fock(int n, int dim) {
  if (n < 0) throw std::invalid_argument("psi_n: n must be >= 0");
  const TargetSpec spec{std::sqrt(static_cast<double>(n)), std::log(std::sqrt(2.0)),
                        n % 2 == 0 ? Parity::even : Parity::odd};
  FockVector v = sscs_fock(spec, dim);
  if (v.truncation_error() > 1e-10) throw std::invalid_argument("psi_n: truncation too small for requested accuracy");
  return v;
}

}  // namespace catgen
