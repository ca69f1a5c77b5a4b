// Command-line front end: single-point simulation, optimization, sweeps,
// phase-space and Fock exports, and the validation suite.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include "catgen/circuit.hpp"
#include "catgen/errors.hpp"
#include "catgen/metrics.hpp"
#include "catgen/optimizer.hpp"
#include "catgen/states.hpp"
#include "catgen/sweep.hpp"
#include "catgen/validation.hpp"

namespace {

using namespace catgen;

constexpr int kExitValidation = 1;
constexpr int kExitConfig = 2;

struct CommonFlags {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> fock_dim;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--config", f.config, "flat JSON config file");
  cmd->add_option("--out", f.out, "output file (stdout when omitted)");
  cmd->add_option("--seed", f.seed, "optimizer seed");
  cmd->add_option("--threads", f.threads, "worker threads for sweeps");
  cmd->add_option("--fock-dim", f.fock_dim, "Fock truncation");
}

SweepConfig resolve(const CommonFlags& f) {
  SweepConfig c = f.config.empty() ? SweepConfig{} : load_config(f.config);
  if (f.seed) c.optimizer.seed = *f.seed;
  if (f.threads) c.threads = *f.threads;
  if (f.fock_dim) c.fock_dim = *f.fock_dim;
  c.validate();
  return c;
}

// Writes through `fn` to --out, the config's output path, or stdout.
template <class Fn>
void emit(const CommonFlags& f, const SweepConfig& c, Fn&& fn) {
  const std::string path = !f.out.empty() ? f.out : c.output;
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  fn(os);
}

// json dumps shortest round-trip doubles; keep 12 significant digits like the CSVs
double sig12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

nlohmann::json rho_json(const FockMatrix& rho) {
  nlohmann::json rows = nlohmann::json::array();
  for (int m = 0; m < rho.dim; ++m) {
    nlohmann::json row = nlohmann::json::array();
    for (int n = 0; n < rho.dim; ++n) row.push_back({sig12(rho.entries(m, n).real()), sig12(rho.entries(m, n).imag())});
    rows.push_back(row);
  }
  return rows;
}

int cmd_simulate(const CommonFlags& f) {
  const SweepConfig c = resolve(f);
  const CircuitParams p = c.point_params();
  const CircuitResult out = run_circuit(p);
  const MetricsReport m = compute_metrics(out.w_out, sscs_wigner({c.alpha, c.s_prime, Parity::odd}), c.fock_dim);
  nlohmann::json j;
  j["params"] = {{"s", sig12(p.s)},         {"t1", sig12(p.t1)},       {"t", sig12(p.t)},
                 {"eta_d", sig12(p.eta_d)}, {"eta_b", sig12(p.eta_b)}, {"eta_c", sig12(p.eta_c)}};
  j["target"] = {{"alpha", sig12(c.alpha)}, {"s_prime", sig12(c.s_prime)}, {"parity", "odd"}};
  j["P_d"] = sig12(out.p_d);
  j["P_bc"] = sig12(out.p_bc);
  j["P"] = sig12(out.p);
  j["F"] = sig12(m.fidelity);
  j["mean_n"] = sig12(m.mean_n);
  j["MQI"] = sig12(m.mqi);
  j["rel_MQI"] = sig12(m.relative_mqi);
  j["rho_fock"] = rho_json(m.rho_fock);
  emit(f, c, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  return 0;
}

int cmd_optimize(const CommonFlags& f) {
  const SweepConfig c = resolve(f);
  const SweepRow row = evaluate_point(c, c.s, c.r1sq, c.eta, c.optimizer.seed);
  emit(f, c, [&](std::ostream& os) { write_csv(os, {row}); });
  return row.status == "ok" ? 0 : kExitValidation;
}

int cmd_sweep(const CommonFlags& f) {
  const SweepConfig c = resolve(f);
  const auto rows = run_sweep(c);
  emit(f, c, [&](std::ostream& os) { write_csv(os, rows); });
  return 0;
}

int cmd_wigner(const CommonFlags& f, bool target_only) {
  const SweepConfig c = resolve(f);
  const GaussianMixtured w =
      target_only ? sscs_wigner({c.alpha, c.s_prime, Parity::odd}) : run_circuit(c.point_params()).w_out;
  const auto samples = export_wigner_grid(w, {c.grid_min, c.grid_max, c.grid_points});
  emit(f, c, [&](std::ostream& os) { write_wigner_csv(os, samples); });
  return 0;
}

int cmd_density(const CommonFlags& f) {
  const SweepConfig c = resolve(f);
  const FockMatrix rho = fock_density_matrix(run_circuit(c.point_params()).w_out, c.fock_dim);
  emit(f, c, [&](std::ostream& os) {
    os << "m,n,re,im,abs\n" << std::setprecision(12);
    for (int m = 0; m < rho.dim; ++m)
      for (int n = 0; n < rho.dim; ++n)
        os << m << ',' << n << ',' << rho.entries(m, n).real() << ',' << rho.entries(m, n).imag() << ','
           << std::abs(rho.entries(m, n)) << '\n';
  });
  return 0;
}

int cmd_validate(const CommonFlags& f, bool flip) {
  ValidationOptions o;
  if (f.fock_dim) o.fock_dim = *f.fock_dim;
  o.flip_bs_sign = flip;
  const ValidationReport r = validate(o);
  print_report(std::cout, r);
  return r.all_passed() ? 0 : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Conditional squeezed-cat generator simulator"};
  app.require_subcommand(1);

  CommonFlags flags;
  bool target_only = false;
  bool flip = false;
  auto* simulate = app.add_subcommand("simulate", "one circuit run with metrics, as JSON");
  auto* optimize = app.add_subcommand("optimize", "optimize (t, s', alpha) at one point, as CSV");
  auto* sweep = app.add_subcommand("sweep", "parameter sweep, as CSV");
  auto* wigner = app.add_subcommand("wigner-grid", "Wigner function on a grid, as CSV");
  auto* density = app.add_subcommand("density-matrix", "Fock density matrix of the output, as CSV");
  auto* validate_cmd = app.add_subcommand("validate", "run the oracle and invariant checks");
  for (auto* cmd : {simulate, optimize, sweep, wigner, density, validate_cmd}) add_common(cmd, flags);
  wigner->add_flag("--target", target_only, "export the target state instead of the circuit output");
  validate_cmd->add_flag("--flip-bs-sign", flip, "reverse the mixing beam splitter phase in the Fock oracle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*simulate) return cmd_simulate(flags);
    if (*optimize) return cmd_optimize(flags);
    if (*sweep) return cmd_sweep(flags);
    if (*wigner) return cmd_wigner(flags, target_only);
    if (*density) return cmd_density(flags);
    if (*validate_cmd) return cmd_validate(flags, flip);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid parameters: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return 0;
}
