#include "catgen/validation.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>
#include <sstream>

#include "catgen/circuit.hpp"
#include "catgen/errors.hpp"
#include "catgen/fock_oracle.hpp"
#include "catgen/metrics.hpp"
#include "catgen/states.hpp"

namespace catgen {

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Largest |even/odd coherence| relative to the largest entry. The global
// state has even total photon number, so these vanish for any detector
// that is diagonal in the number basis.
double parity_coherence(const FockMatrix& rho) {
  double worst = 0.0;
  for (int m = 0; m < rho.dim; ++m)
    for (int n = 0; n < rho.dim; ++n)
      if ((m + n) % 2 == 1) worst = std::max(worst, std::abs(rho.entries(m, n)));
  return worst / max_abs(rho.entries);
}

using Check = std::function<CheckResult()>;

CheckResult herald_probability() {
  double worst = 0.0;
  for (double s : {0.01, 0.04, 0.1, 0.2})
    worst = std::max(worst, rel_diff(herald_single_photon(s, 1.0).p_d, std::pow(std::tanh(s), 2)));
  return {"herald probability equals tanh^2 s", worst < 1e-10, "max rel err " + fmt(worst)};
}

CheckResult oracle_equivalence(const ValidationOptions& o) {
  double worst = 0.0;
  try {
    for (double s : {0.05, 0.16})
      for (double r1sq : {0.001, 0.01})
        for (double eta : {1.0, 0.5}) {
          const CircuitParams p = CircuitParams::with_reflectance(s, r1sq, 0.35, eta);
          const CircuitResult g = run_circuit(p);
          const FockCircuitResult f = run_circuit_fock(p, {o.fock_dim, o.flip_bs_sign});
          const int dim = std::min(o.fock_dim, kMaxDensityMatrixDim);
          const FockMatrix rho = fock_density_matrix(g.w_out, dim);
          const double scale = max_abs(f.rho_a.entries);
          const double rho_err =
              max_abs(rho.entries - f.rho_a.entries.topLeftCorner(dim, dim)) / scale;
          worst = std::max({worst, rel_diff(g.p_d, f.p_d), rel_diff(g.p_bc, f.p_bc), rho_err});
        }
  } catch (const std::exception& e) {
    return {"Gaussian pipeline matches Fock oracle", false, e.what()};
  }
  return {"Gaussian pipeline matches Fock oracle", worst < 1e-6, "max rel err " + fmt(worst)};
}

CheckResult leakage_budget(const ValidationOptions& o) {
  try {
    const FockCircuitResult f =
        run_circuit_fock(CircuitParams::with_reflectance(0.25, 0.01, 0.35, 1.0), {o.fock_dim, o.flip_bs_sign});
    return {"Fock truncation leakage within budget at s = 0.25", true, "leakage " + fmt(f.leakage)};
  } catch (const LeakageExceeded& e) {
    return {"Fock truncation leakage within budget at s = 0.25", false, e.what()};
  }
}

CheckResult mixing_sign(const ValidationOptions& o) {
  // The |3>/|1> amplitude ratio has the sign of t r / (r^2 - t^2).
  bool ok = true;
  std::string detail;
  try {
    for (double t : {0.3, 0.9}) {
      const CircuitParams p = CircuitParams::with_reflectance(1e-3, 1e-6, t, 1.0);
      const double measured = amplitude_ratio_31(run_circuit_fock(p, {o.fock_dim, o.flip_bs_sign}).rho_a);
      const double predicted = perturbative_coefficients(1e-3, 1e-3, t, BunchingFactor::included).ratio();
      ok = ok && (measured > 0) == (predicted > 0);
      detail += "t=" + fmt(t) + " ratio " + fmt(measured) + " predicted " + fmt(predicted) + "; ";
    }
  } catch (const std::exception& e) {
    return {"sign of r^2 - t^2 in the first-order coefficient", false, e.what()};
  }
  return {"sign of r^2 - t^2 in the first-order coefficient", ok, detail};
}

CheckResult perturbative_ratio(const ValidationOptions& o) {
  const double t = 0.3;
  try {
    const CircuitParams p = CircuitParams::with_reflectance(1e-3, 1e-6, t, 1.0);
    const double measured = amplitude_ratio_31(run_circuit_fock(p, {o.fock_dim, o.flip_bs_sign}).rho_a);
    const double predicted = perturbative_coefficients(1e-3, 1e-3, t, BunchingFactor::included).ratio();
    const double err = rel_diff(measured, predicted);
    return {"low-squeezing |3>/|1> ratio", err < 0.01, "rel err " + fmt(err)};
  } catch (const std::exception& e) {
    return {"low-squeezing |3>/|1> ratio", false, e.what()};
  }
}

CheckResult parity() {
  double worst = 0.0;
  for (double eta : {1.0, 0.1})
    for (double s : {0.04, 0.16, 0.3}) {
      const CircuitResult g = run_circuit(CircuitParams::with_reflectance(s, 0.001, 0.3, eta));
      worst = std::max(worst, parity_coherence(fock_density_matrix(g.w_out, 16)));
    }
  return {"no coherence between even and odd photon numbers", worst < 1e-12, "max relative entry " + fmt(worst)};
}

CheckResult density_matrix_consistency() {
  double worst = 0.0;
  for (double s : {0.04, 0.16}) {
    const CircuitResult g = run_circuit(CircuitParams::with_reflectance(s, 0.001, 0.3, 1.0));
    const FockMatrix rho = fock_density_matrix(g.w_out, 20);
    double n_sum = 0.0;
    for (int n = 0; n < rho.dim; ++n) n_sum += n * rho.entries(n, n).real();
    worst = std::max({worst, std::abs(rho.trace().real() - 1.0), std::abs(n_sum - mean_photon_number(g.w_out)),
                      max_abs(rho.entries - rho.entries.adjoint())});
  }
  return {"density matrix trace, hermiticity and photon number", worst < 1e-6, "max err " + fmt(worst)};
}

CheckResult mqi_properties() {
  const double vac = std::abs(mqi(vacuum_wigner()));
  const double coh = std::abs(mqi(coherent_wigner({1.3, -0.7})));
  const double rel = relative_mqi(sscs_wigner({1.7, 0.33, Parity::odd}));
  const bool ok = vac < 1e-9 && coh < 1e-7 && std::abs(rel - 1.0) < 1e-5;
  return {"MQI of vacuum, coherent and pure cat", ok,
          "vacuum " + fmt(vac) + " coherent " + fmt(coh) + " relative(cat) " + fmt(rel)};
}

CheckResult target_math() {
  double f2 = 0.0, worst = 1.0;
  for (int n = 1; n <= 6; ++n) {
    const FockVector psi = psi_n_fock(n, 60);
    const FockVector phi = phi_n_fock(n, 60);
    const double f = std::norm(psi.amps.dot(phi.amps));
    if (n == 2) f2 = f;
    worst = std::min(worst, f);
  }
  const bool ok = std::abs(f2 - 0.972) <= 0.002 && worst >= 0.97;
  return {"Hermite states approximate squeezed cats", ok, "F2 " + fmt(f2) + " min " + fmt(worst)};
}

CheckResult detection_order() {
  const CircuitParams p = CircuitParams::with_reflectance(0.16, 0.01, 0.4, 0.6);
  const CircuitResult bc = run_circuit(p, DetectionOrder::b_then_c);
  const CircuitResult cb = run_circuit(p, DetectionOrder::c_then_b);
  const double err = std::max(rel_diff(bc.p_bc, cb.p_bc),
                              max_abs(fock_density_matrix(bc.w_out, 12).entries - fock_density_matrix(cb.w_out, 12).entries));
  return {"detection order does not matter", err < 1e-9, "err " + fmt(err)};
}

CheckResult reference_fidelity() {
  const CircuitResult g = run_circuit(CircuitParams::with_reflectance(0.04, 0.001, 0.349, 1.0));
  const double f = fidelity(g.w_out, sscs_wigner({1.7, 0.33, Parity::odd}));
  return {"fidelity at s = 0.04 near the reference point", f >= 0.985, "F " + fmt(f)};
}

}  // namespace

bool ValidationReport::all_passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

ValidationReport validate(const ValidationOptions& options) {
  const std::vector<Check> suite{
      herald_probability,
      [&] { return oracle_equivalence(options); },
      [&] { return leakage_budget(options); },
      [&] { return mixing_sign(options); },
      [&] { return perturbative_ratio(options); },
      parity,
      density_matrix_consistency,
      mqi_properties,
      target_math,
      detection_order,
      reference_fidelity,
  };
  ValidationReport report;
  for (const auto& check : suite) {
    try {
      report.checks.push_back(check());
    } catch (const std::exception& e) {
      report.checks.push_back({"unnamed check", false, e.what()});
    }
  }
  return report;
}

void print_report(std::ostream& os, const ValidationReport& report) {
  for (const auto& c : report.checks) os << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  (" << c.detail << ")\n";
  os << (report.all_passed() ? "all checks passed" : "validation FAILED") << '\n';
}

}  // namespace catgen
