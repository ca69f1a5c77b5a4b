#include "catgen/circuit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "catgen/states.hpp"
#include "catgen/symplectic.hpp"

namespace catgen {

namespace {

constexpr double kMinProbability = 1e-300;

void check_efficiency(double eta, const char* name) {
  if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in (0, 1]");
}

// Mode layout after the second NDPA pass: a = 0, b = 1, c = 2.
GaussianMixtured propagate_second_stage(const GaussianMixtured& state_a, const CircuitParams& p) {
  auto ac = apply_affine(tensor(state_a, vacuum_wigner()), two_mode_squeezer(p.s));
  auto abc = permute_modes(tensor(ac, vacuum_wigner()), {0, 2, 1});
  abc = apply_affine(abc, embed(beam_splitter(p.t1), 3, {0, 1}));
  return apply_affine(abc, embed(beam_splitter(p.t), 3, {1, 2}));
}

double real_probability(std::complex<double> value, const char* what) {
  if (!std::isfinite(value.real())) throw Underflow(std::string(what) + " is not finite");
  if (value.real() < kMinProbability) throw Underflow(std::string(what) + " underflowed");
  return value.real();
}

}  // namespace

CircuitParams CircuitParams::with_reflectance(double s, double r1sq, double t, double eta) {
  CircuitParams p;
  p.s = s;
  p.t1 = std::sqrt(1.0 - r1sq);
  p.t = t;
  p.eta_d = p.eta_b = p.eta_c = eta;
  return p;
}

double CircuitParams::r1() const { return std::sqrt(1.0 - t1 * t1); }
double CircuitParams::r() const { return std::sqrt(1.0 - t * t); }

void CircuitParams::validate() const {
  if (!(s > 0.0) || !std::isfinite(s)) throw std::invalid_argument("squeezing s must be > 0");
  if (!(t1 > 0.0 && t1 < 1.0)) throw std::invalid_argument("t1 must lie in (0, 1)");
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("t must lie in (0, 1)");
  check_efficiency(eta_d, "eta_d");
  check_efficiency(eta_b, "eta_b");
  check_efficiency(eta_c, "eta_c");
}

HeraldResult herald_single_photon(double s, double eta_d) {
  if (!(s > 0.0)) throw std::invalid_argument("squeezing s must be > 0");
  const auto ad = apply_affine(tensor(vacuum_wigner(), vacuum_wigner()), two_mode_squeezer(s));
  const auto a = partial_trace_with(ad, click_povm(eta_d).kernel, {1});
  const double p_d = real_probability(total_integral(a), "heralding probability");
  return {normalized(a), p_d};
}

CircuitResult run_circuit(const CircuitParams& params, DetectionOrder order) {
  params.validate();
  const HeraldResult herald = herald_single_photon(params.s, params.eta_d);
  const auto abc = propagate_second_stage(herald.state, params);

  const auto click_b = click_povm(params.eta_b).kernel;
  const auto click_c = click_povm(params.eta_c).kernel;
  GaussianMixtured out{1};
  if (order == DetectionOrder::b_then_c) {
    out = partial_trace_with(partial_trace_with(abc, click_b, {1}), click_c, {1});
  } else {
    out = partial_trace_with(partial_trace_with(abc, click_c, {2}), click_b, {1});
  }

  CircuitResult result;
  result.p_d = herald.p_d;
  result.p_bc = real_probability(total_integral(out), "coincidence probability");
  result.p = result.p_d * result.p_bc;
  if (result.p < kMinProbability) throw Underflow("success probability underflowed");
  result.w_out = normalized(out);
  return result;
}

GaussianMixtured joint_state_before_detection(const CircuitParams& params) {
  params.validate();
  // (a, d) -> (a, d, c) -> squeeze (a, c) -> (a, d, c, b) -> reorder to (a, b, c, d)
  const auto ad = apply_affine(tensor(vacuum_wigner(), vacuum_wigner()), two_mode_squeezer(params.s));
  auto adc = tensor(ad, vacuum_wigner());
  adc = apply_affine(adc, embed(two_mode_squeezer(params.s), 3, {0, 2}));
  auto abcd = permute_modes(tensor(adc, vacuum_wigner()), {0, 3, 2, 1});
  abcd = apply_affine(abcd, embed(beam_splitter(params.t1), 4, {0, 1}));
  return apply_affine(abcd, embed(beam_splitter(params.t), 4, {1, 2}));
}

}  // namespace catgen
