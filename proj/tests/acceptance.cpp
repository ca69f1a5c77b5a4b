// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
// usage: acceptance <catgen-cli> <scratch dir>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iterator>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "catgen/circuit.hpp"
#include "catgen/fock_oracle.hpp"
#include "catgen/metrics.hpp"
#include "catgen/optimizer.hpp"
#include "catgen/states.hpp"
#include "catgen/sweep.hpp"

using namespace catgen;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

bool within(double x, double centre, double tol) { return std::abs(x - centre) <= tol; }

std::string cli_path, scratch;

// the default optimized grid, shared by criteria 3 and 11
const std::vector<SweepRow>& optimized_grid() {
  static const std::vector<SweepRow> rows = [] {
    SweepConfig c;
    c.threads = 4;
    return run_sweep(c);
  }();
  return rows;
}

Outcome heralding() {
  double worst = 0.0;
  for (double s : {0.01, 0.04, 0.1, 0.2})
    worst = std::max(worst, rel(herald_single_photon(s, 1.0).p_d, std::pow(std::tanh(s), 2)));
  return {worst < 1e-10, fmt("max rel err %.2e", worst)};
}

Outcome low_squeezing_optimum() {
  const FidelityOptimum o = optimize_fidelity(0.04, std::sqrt(0.999), Detectors::uniform(1.0));
  const bool f_ok = o.fidelity >= 0.985;
  const bool loc_ok = within(o.alpha, 1.7, 0.15) && within(o.s_prime, 0.33, 0.08);
  return {f_ok && loc_ok, fmt("F=%.5f (>=0.985: %s) at t=%.4f alpha=%.4f s'=%.4f (near 1.7/0.33: %s)", o.fidelity,
                              f_ok ? "yes" : "no", o.t, o.alpha, o.s_prime, loc_ok ? "yes" : "no")};
}

Outcome probability_regime() {
  double best = 0.0;
  int n = 0;
  for (const auto& r : optimized_grid())
    if (r.status == "ok" && r.f >= 0.90 && (r.r1sq == 0.001 || r.r1sq == 0.01)) {
      best = std::max(best, r.p);
      ++n;
    }
  return {n > 0 && best >= 1e-6 && best <= 1e-4, fmt("%d points with F>=0.90, max P=%.3e", n, best)};
}

Outcome anchor_016() {
  const double a = optimize_fidelity(0.16, std::sqrt(0.999), Detectors::uniform(1.0)).fidelity;
  const double b = optimize_fidelity(0.16, std::sqrt(0.99), Detectors::uniform(1.0)).fidelity;
  return {within(a, 0.90, 0.02) && within(b, 0.89, 0.02), fmt("F=%.5f (r1^2=0.001), %.5f (r1^2=0.01)", a, b)};
}

Outcome size_anchor() {
  const FixedTarget ft;
  const TargetSpec target{ft.alpha, ft.s_prime, Parity::odd};
  auto output = [&](double s) { return run_circuit(CircuitParams::with_reflectance(s, 0.001, ft.t)).w_out; };
  // mean n grows with s; bisect for <n> = 2.75
  double lo = 0.02, hi = 0.30;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mean_photon_number(output(mid)) < 2.75 ? lo : hi) = mid;
  }
  const double s275 = 0.5 * (lo + hi);
  const auto w = output(s275);
  const double n275 = mean_photon_number(w);
  const double f275 = fidelity(w, sscs_wigner(target));

  SweepConfig c;
  c.mode = SweepMode::fixed;
  c.r1sq_list = {0.001};
  double n_max = 0.0;
  for (const auto& r : run_sweep(c)) n_max = std::max(n_max, r.mean_n);
  const bool reach = std::abs(n275 - 2.75) < 1e-6;
  const bool f_ok = within(f275, 0.83, 0.03);
  return {reach && f_ok && n_max > 3.0,
          fmt("<n>=2.75 at s=%.4f with F=%.4f (0.83+-0.03: %s); max <n> on grid %.4f", s275, f275, f_ok ? "yes" : "no",
              n_max)};
}

Outcome inefficiency_anchor() {
  const SizeOptimum a = maximize_mean_n(0.2, std::sqrt(0.999), Detectors::uniform(0.1), 0.59);
  const SizeOptimum b = maximize_mean_n(0.2, std::sqrt(0.99), Detectors::uniform(0.1), 0.59);
  const bool ok = a.feasible && b.feasible && within(a.mean_n, 3.24, 0.05) && within(b.mean_n, 3.18, 0.05) &&
                  within(a.fidelity, 0.59, 0.03) && within(b.fidelity, 0.59, 0.03);
  return {ok, fmt("<n>=%.4f F=%.4f (r1^2=0.001); <n>=%.4f F=%.4f (r1^2=0.01)", a.mean_n, a.fidelity, b.mean_n,
                  b.fidelity)};
}

Outcome parity() {
  double worst_pop = 0.0, worst_coh = 0.0;
  for (double s : {0.04, 0.16, 0.3})
    for (double eta : {1.0, 0.5, 0.1})
      for (double t : {0.103, 0.21, 0.5}) {
        const auto w = run_circuit(CircuitParams::with_reflectance(s, 0.001, t, eta)).w_out;
        const FockMatrix rho = fock_density_matrix(w, 16);
        const double top = rho.entries.cwiseAbs().maxCoeff();
        for (int m = 0; m < 16; ++m)
          for (int n = 0; n < 16; ++n) {
            const double v = std::abs(rho.entries(m, n)) / top;
            if (m == n && m % 2 == 0) worst_pop = std::max(worst_pop, v);
            if ((m + n) % 2 == 1) worst_coh = std::max(worst_coh, v);
          }
      }
  return {worst_pop < 1e-6 && worst_coh < 1e-6,
          fmt("max even population %.3e, max even-odd coherence %.3e (relative to largest entry)", worst_pop, worst_coh)};
}

Outcome oracle_equivalence() {
  double worst = 0.0;
  for (double s : {0.05, 0.12, 0.2})
    for (double r1sq : {0.001, 0.01, 0.1})
      for (double eta : {1.0, 0.5}) {
        const CircuitParams p = CircuitParams::with_reflectance(s, r1sq, 0.35, eta);
        const CircuitResult g = run_circuit(p);
        const FockCircuitResult f = run_circuit_fock(p);
        const FockMatrix rho = fock_density_matrix(g.w_out, 16);
        worst = std::max({worst, rel(g.p_d, f.p_d), rel(g.p_bc, f.p_bc),
                          (rho.entries - f.rho_a.entries).cwiseAbs().maxCoeff() / f.rho_a.entries.cwiseAbs().maxCoeff()});
      }
  return {worst < 1e-6, fmt("max rel deviation %.2e over 18 points", worst)};
}

Outcome perturbative() {
  const double s = 1e-3, r1 = 1e-3;
  double worst = 0.0, worst_exact = 0.0;
  for (double t : {0.2, 0.3, 0.5, 0.9}) {
    const double measured = amplitude_ratio_31(run_circuit_fock(CircuitParams::with_reflectance(s, r1 * r1, t)).rho_a);
    worst = std::max(worst, rel(measured, perturbative_coefficients(s, r1, t, BunchingFactor::omitted).ratio()));
    worst_exact = std::max(worst_exact, rel(measured, perturbative_coefficients(s, r1, t, BunchingFactor::included).ratio()));
  }
  const double t3 = t_for_phi3(s, r1, BunchingFactor::omitted);
  const FockMatrix rho = run_circuit_fock(CircuitParams::with_reflectance(s, r1 * r1, t3)).rho_a;
  const double f3 = fock::expectation(rho, phi_n_fock(3, rho.dim).amps);
  return {worst < 0.01 && f3 >= 0.999,
          fmt("ratio err %.3e with C2=s^2 t r/sqrt2 (%.2e with C2=s^2 t r); F(phi_3)=%.5f at t=%.5f", worst, worst_exact,
              f3, t3)};
}

Outcome target_math() {
  auto f = [](int n) { return std::norm(psi_n_fock(n, 60).amps.dot(phi_n_fock(n, 60).amps)); };
  bool ok = within(f(2), 0.972, 0.002);
  std::ostringstream os;
  os << "F_2=" << fmt("%.5f", f(2)) << "; F_n:";
  for (int n = 0; n <= 6; ++n) {
    ok = ok && f(n) >= 0.97;
    os << fmt(" %d:%.4f", n, f(n));
  }
  return {ok, os.str()};
}

Outcome mqi_properties() {
  const double vac = mqi(vacuum_wigner());
  const double coh = mqi(coherent_wigner({1.7, -0.4}));
  const double cat = relative_mqi(sscs_wigner({1.7, 0.33, Parity::odd}));
  double excess = -1e9;
  for (const auto& r : optimized_grid())
    if (r.status == "ok") excess = std::max(excess, r.mqi - r.mean_n);
  bool mono = true;
  double prev = 2.0;
  for (int i = 0; i < 8; ++i) {
    const double s = 0.02 + i * (0.28 / 7);
    const double v = relative_mqi(run_circuit(CircuitParams::with_reflectance(s, 0.001, 0.21)).w_out);
    mono = mono && v < prev;
    prev = v;
  }
  const bool ok = std::abs(vac) < 1e-9 && std::abs(coh) < 1e-7 && excess <= 1e-6 && std::abs(cat - 1) < 1e-5 && mono;
  return {ok, fmt("vac %.1e, coherent %.1e, max MQI-<n> %.3e, target rel %.8f, monotone %s", vac, coh, excess, cat,
                  mono ? "yes" : "no")};
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const std::string cfg = scratch + "/acceptance_sweep.json";
  std::ofstream(cfg) << R"({"s_grid": [0.05, 0.1, 0.2], "r1sq_list": [0.001, 0.1], "eta_grid": [1.0, 0.6], "multistarts": 3})";
  std::string out[2];
  for (int k = 0; k < 2; ++k) {
    const std::string path = scratch + "/acceptance_sweep_" + std::to_string(k) + ".csv";
    const std::string cmd = "\"" + cli_path + "\" sweep --config \"" + cfg + "\" --seed 11 --threads " +
                            std::to_string(k == 0 ? 1 : 4) + " --out \"" + path + "\"";
    if (std::system(cmd.c_str()) != 0) return {false, "sweep command failed"};
    out[k] = slurp(path);
  }
  return {!out[0].empty() && out[0] == out[1], fmt("%zu bytes, identical: %s", out[0].size(), out[0] == out[1] ? "yes" : "no")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <catgen-cli> <scratch dir>\n";
    return 2;
  }
  cli_path = argv[1];
  scratch = argv[2];

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"heralding probability", heralding},
      {"low-squeezing optimum", low_squeezing_optimum},
      {"probability regime", probability_regime},
      {"fidelity anchor at s=0.16", anchor_016},
      {"size anchor, fixed target", size_anchor},
      {"inefficiency anchor", inefficiency_anchor},
      {"parity of the output", parity},
      {"Gaussian vs Fock oracle", oracle_equivalence},
      {"perturbative algebra", perturbative},
      {"target-state math", target_math},
      {"MQI properties", mqi_properties},
      {"sweep determinism", determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << fmt(" %2zu ", i + 1) << criteria[i].first << ": " << o.detail
              << fmt(" [%.1f s]", secs) << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
