#include "catgen/fock_oracle.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

#include "catgen/errors.hpp"

namespace catgen {

namespace {

void check_leakage(double leak, double budget, const char* what) {
  if (leak > budget) {
    std::ostringstream msg;
    msg << what << ": truncation leakage " << std::scientific << std::setprecision(3) << leak << " exceeds budget "
        << budget;
    throw LeakageExceeded(msg.str());
  }
}

double click_probability(double eta, int n) { return 1.0 - std::pow(1.0 - eta, n); }

}  // namespace

FockVector tmsv(double s, int dim) {
  if (dim < 1) throw std::invalid_argument("tmsv: dimension must be positive");
  const double th = std::tanh(s);
  if (std::pow(std::abs(th), dim) >= 1e-12) throw std::invalid_argument("tmsv: truncation too small for squeezing");
  FockVector v = fock::vacuum(dim, 2);
  const double sech = 1.0 / std::cosh(s);
  double amp = sech;
  for (int n = 0; n < dim; ++n) {
    v.amps(n * dim + n) = amp;
    amp *= th;
  }
  return v;
}

FockVector apply_tms(const FockVector& state, double s, int first, int second, double budget) {
  FockVector out = fock::apply_two_mode(state, fock::two_mode_squeeze_operator(s, state.dim), first, second);
  check_leakage(fock::boundary_population(out) / std::max(out.amps.squaredNorm(), 1e-300), budget, "apply_tms");
  return out;
}

FockVector apply_bs(const FockVector& state, double t, int first, int second, bool flip_sign, double budget) {
  FockVector out =
      fock::apply_two_mode(state, fock::beam_splitter_operator(t, state.dim, flip_sign), first, second);
  check_leakage(fock::boundary_population(out) / std::max(out.amps.squaredNorm(), 1e-300), budget, "apply_bs");
  return out;
}

FockCircuitResult run_circuit_fock(const CircuitParams& params, const FockOracleOptions& options) {
  params.validate();
  const int dim = options.dim;
  if (dim < 2) throw std::invalid_argument("run_circuit_fock: dimension must be at least 2");

  // The click on d leaves mode a in the mixture sum_n pi_n |n><n| with
  // pi_n = sech^2 s tanh^2n s (1 - (1-eta_d)^n); each |n> is propagated as a
  // pure three-mode state and the b, c outcomes are summed incoherently.
  const Eigen::MatrixXd squeeze = fock::two_mode_squeeze_operator(params.s, dim);
  const Eigen::MatrixXd tap = fock::beam_splitter_operator(params.t1, dim);
  const Eigen::MatrixXd mixer = fock::beam_splitter_operator(params.t, dim, options.flip_bs_sign);

  const double th2 = std::pow(std::tanh(params.s), 2);
  const double sech2 = 1.0 - th2;

  std::vector<double> click_b(dim), click_c(dim);
  for (int n = 0; n < dim; ++n) {
    click_b[n] = click_probability(params.eta_b, n);
    click_c[n] = click_probability(params.eta_c, n);
  }

  FockCircuitResult result;
  result.rho_a = FockMatrix{dim, Eigen::MatrixXcd::Zero(dim, dim)};
  double leaked = 0.0;
  double herald_mass = sech2;  // running sech^2 tanh^2n
  for (int n = 0; n < dim; ++n, herald_mass *= th2) {
    const double pi_n = herald_mass * click_probability(params.eta_d, n);
    if (pi_n == 0.0) continue;
    result.p_d += pi_n;

    FockVector psi = fock::basis_state(dim, {n, 0, 0});
    psi = fock::apply_two_mode(psi, squeeze, 0, 2);
    psi = fock::apply_two_mode(psi, tap, 0, 1);
    psi = fock::apply_two_mode(psi, mixer, 1, 2);
    leaked += pi_n * fock::boundary_population(psi);

    for (int nb = 1; nb < dim; ++nb) {
      for (int nc = 1; nc < dim; ++nc) {
        const double weight = pi_n * click_b[nb] * click_c[nc];
        Eigen::VectorXcd column(dim);
        for (int na = 0; na < dim; ++na) column(na) = psi.amps((na * dim + nb) * dim + nc);
        result.rho_a.entries.noalias() += weight * column * column.adjoint();
      }
    }
  }
  // Herald levels beyond the truncation are lost outright.
  leaked += herald_mass;

  const double unnormalized = result.rho_a.entries.trace().real();
  if (!(unnormalized > 0.0)) throw Underflow("run_circuit_fock: coincidence probability vanished");
  result.p_bc = unnormalized / result.p_d;
  result.p = unnormalized;
  result.rho_a.entries /= unnormalized;
  result.leakage = leaked / unnormalized;
  check_leakage(result.leakage, options.leakage_budget, "run_circuit_fock");
  return result;
}

double PerturbativeCoefficients::ratio() const { return std::sqrt(6.0) * c2 / (2.0 * c1); }

PerturbativeCoefficients perturbative_coefficients(double s, double r1, double t, BunchingFactor factor) {
  const double r = std::sqrt(1.0 - t * t);
  PerturbativeCoefficients c;
  c.c1 = s * r1 * (r * r - t * t);
  c.c2 = s * s * t * r;
  if (factor == BunchingFactor::omitted) c.c2 /= std::sqrt(2.0);
  return c;
}

double t_for_phi3(double s, double r1, BunchingFactor factor) {
  // The ratio grows monotonically from 0 to +inf on (0, 1/sqrt 2).
  const double goal = std::sqrt(2.0 / 3.0);
  double lo = 0.0, hi = 1.0 / std::sqrt(2.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (perturbative_coefficients(s, r1, mid, factor).ratio() < goal)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

double amplitude_ratio_31(const FockMatrix& rho) {
  if (rho.dim < 4) throw std::invalid_argument("amplitude_ratio_31: need at least four levels");
  return (rho.entries(3, 1) / rho.entries(1, 1)).real();
}

}  // namespace catgen
