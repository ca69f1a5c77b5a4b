#include "catgen/sweep.hpp"

#include <json.hpp>

#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <thread>

#include "catgen/errors.hpp"
#include "catgen/metrics.hpp"
#include "catgen/states.hpp"

namespace catgen {

namespace {

using nlohmann::json;

double number(const json& v, const std::string& key) {
  if (!v.is_number()) throw ConfigError("config key '" + key + "' must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ConfigError("config key '" + key + "' must be finite");
  return x;
}

int integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw ConfigError("config key '" + key + "' must be an integer");
  return v.get<int>();
}

std::vector<double> number_list(const json& v, const std::string& key) {
  if (!v.is_array()) throw ConfigError("config key '" + key + "' must be a list of numbers");
  std::vector<double> out;
  for (const auto& x : v) out.push_back(number(x, key));
  return out;
}

std::string sanitize_message(std::string msg) {
  for (char& c : msg)
    if (c == ',' || c == '\n' || c == '"') c = ' ';
  return msg;
}

void check_range(double x, double lo, double hi, bool open_lo, const std::string& what) {
  const bool ok = (open_lo ? x > lo : x >= lo) && x <= hi;
  if (!ok) throw ConfigError(what + " out of range");
}

}  // namespace

SweepConfig::SweepConfig() {
  for (int i = 1; i <= 15; ++i) s_grid.push_back(0.02 * i);
}

void SweepConfig::validate() const {
  if (s_grid.empty() || r1sq_list.empty() || eta_grid.empty()) throw ConfigError("sweep grids must be non-empty");
  for (double v : s_grid) check_range(v, 0.0, 3.0, true, "s_grid value");
  for (double v : r1sq_list) check_range(v, 0.0, 1.0, true, "r1sq_list value");
  for (double v : r1sq_list)
    if (v >= 1.0) throw ConfigError("r1sq_list value out of range");
  for (double v : eta_grid) check_range(v, 0.0, 1.0, true, "eta_grid value");
  for (const auto& e : {eta_d, eta_b, eta_c})
    if (e) check_range(*e, 0.0, 1.0, true, "detector efficiency");
  check_range(fixed.t, 0.0, 1.0, true, "fixed_t");
  if (fixed.t >= 1.0) throw ConfigError("fixed_t out of range");
  if (!(fixed.alpha > 0.0)) throw ConfigError("fixed_alpha out of range");
  check_range(fidelity_floor, 0.0, 1.0, false, "fidelity_floor");
  if (optimizer.multistarts < 1) throw ConfigError("multistarts must be >= 1");
  if (optimizer.simplex.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
  if (!(optimizer.simplex.f_tolerance > 0.0)) throw ConfigError("simplex_tolerance must be > 0");
  if (threads < 1) throw ConfigError("threads must be >= 1");
  if (fock_dim < 2 || fock_dim > kMaxDensityMatrixDim) throw ConfigError("fock_dim out of range");
  check_range(s, 0.0, 3.0, true, "s");
  check_range(r1sq, 0.0, 1.0, true, "r1sq");
  if (r1sq >= 1.0) throw ConfigError("r1sq out of range");
  check_range(t, 0.0, 1.0, true, "t");
  if (t >= 1.0) throw ConfigError("t out of range");
  if (!(alpha > 0.0)) throw ConfigError("alpha out of range");
  check_range(eta, 0.0, 1.0, true, "eta");
  if (!(grid_max > grid_min) || grid_points < 2) throw ConfigError("phase-space grid is empty");
}

Detectors SweepConfig::detectors(double eta_value) const {
  return {eta_d.value_or(eta_value), eta_b.value_or(eta_value), eta_c.value_or(eta_value)};
}

CircuitParams SweepConfig::point_params() const {
  CircuitParams p = CircuitParams::with_reflectance(s, r1sq, t, eta);
  const Detectors d = detectors(eta);
  p.eta_d = d.eta_d;
  p.eta_b = d.eta_b;
  p.eta_c = d.eta_c;
  return p;
}

SweepConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");

  SweepConfig c;
  for (const auto& [key, v] : doc.items()) {
    if (key == "mode") {
      const std::string m = v.is_string() ? v.get<std::string>() : "";
      if (m == "optimize")
        c.mode = SweepMode::optimize;
      else if (m == "fixed")
        c.mode = SweepMode::fixed;
      else if (m == "max-size")
        c.mode = SweepMode::max_size;
      else
        throw ConfigError("mode must be one of optimize, fixed, max-size");
    } else if (key == "s_grid") {
      c.s_grid = number_list(v, key);
    } else if (key == "r1sq_list") {
      c.r1sq_list = number_list(v, key);
    } else if (key == "eta_grid") {
      c.eta_grid = number_list(v, key);
    } else if (key == "eta_d") {
      c.eta_d = number(v, key);
    } else if (key == "eta_b") {
      c.eta_b = number(v, key);
    } else if (key == "eta_c") {
      c.eta_c = number(v, key);
    } else if (key == "fixed_t") {
      c.fixed.t = number(v, key);
    } else if (key == "fixed_s_prime") {
      c.fixed.s_prime = number(v, key);
    } else if (key == "fixed_alpha") {
      c.fixed.alpha = number(v, key);
    } else if (key == "fidelity_floor") {
      c.fidelity_floor = number(v, key);
    } else if (key == "max_iterations") {
      c.optimizer.simplex.max_iterations = integer(v, key);
    } else if (key == "simplex_tolerance") {
      c.optimizer.simplex.f_tolerance = number(v, key);
    } else if (key == "multistarts") {
      c.optimizer.multistarts = integer(v, key);
    } else if (key == "seed") {
      if (!v.is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
      c.optimizer.seed = v.get<std::uint64_t>();
    } else if (key == "output") {
      if (!v.is_string()) throw ConfigError("output must be a string");
      c.output = v.get<std::string>();
    } else if (key == "threads") {
      c.threads = integer(v, key);
    } else if (key == "fock_dim") {
      c.fock_dim = integer(v, key);
    } else if (key == "s") {
      c.s = number(v, key);
    } else if (key == "r1sq") {
      c.r1sq = number(v, key);
    } else if (key == "t") {
      c.t = number(v, key);
    } else if (key == "alpha") {
      c.alpha = number(v, key);
    } else if (key == "s_prime") {
      c.s_prime = number(v, key);
    } else if (key == "eta") {
      c.eta = number(v, key);
    } else if (key == "grid_min") {
      c.grid_min = number(v, key);
    } else if (key == "grid_max") {
      c.grid_max = number(v, key);
    } else if (key == "grid_points") {
      c.grid_points = integer(v, key);
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::uint64_t point_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

SweepRow evaluate_point(const SweepConfig& config, double s, double r1sq, double eta, std::uint64_t seed) {
  SweepRow row;
  row.s = s;
  row.r1sq = r1sq;
  row.eta = eta;
  try {
    const double t1 = std::sqrt(1.0 - r1sq);
    const Detectors etas = config.detectors(eta);
    OptimizerSettings settings = config.optimizer;
    settings.seed = seed;
    bool converged = true;
    switch (config.mode) {
      case SweepMode::optimize: {
        const FidelityOptimum opt = optimize_fidelity(s, t1, etas, settings);
        row.t_opt = opt.t;
        row.s_prime_opt = opt.s_prime;
        row.alpha_opt = opt.alpha;
        converged = opt.converged;
        break;
      }
      case SweepMode::fixed:
        row.t_opt = config.fixed.t;
        row.s_prime_opt = config.fixed.s_prime;
        row.alpha_opt = config.fixed.alpha;
        break;
      case SweepMode::max_size: {
        const SizeOptimum opt = maximize_mean_n(s, t1, etas, config.fidelity_floor, settings);
        if (!opt.feasible) {
          row.status = "infeasible";
          return row;
        }
        row.t_opt = opt.t;
        row.s_prime_opt = opt.s_prime;
        row.alpha_opt = opt.alpha;
        break;
      }
    }
    CircuitParams p;
    p.s = s;
    p.t1 = t1;
    p.t = row.t_opt;
    p.eta_d = etas.eta_d;
    p.eta_b = etas.eta_b;
    p.eta_c = etas.eta_c;
    const CircuitResult out = run_circuit(p);
    row.p_d = out.p_d;
    row.p_bc = out.p_bc;
    row.p = out.p;
    row.f = fidelity(out.w_out, sscs_wigner({row.alpha_opt, row.s_prime_opt, Parity::odd}));
    row.mean_n = mean_photon_number(out.w_out);
    row.mqi = mqi(out.w_out);
    row.rel_mqi = row.mean_n > 1e-9 ? row.mqi / row.mean_n : 0.0;
    if (!converged) row.status = "non_converged";
  } catch (const std::exception& e) {
    row.status = "error: " + sanitize_message(e.what());
  }
  return row;
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  struct Point {
    double s, r1sq, eta;
  };
  std::vector<Point> grid;
  for (double r1sq : config.r1sq_list)
    for (double eta : config.eta_grid)
      for (double s : config.s_grid) grid.push_back({s, r1sq, eta});

  std::vector<SweepRow> rows(grid.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++)
      rows[i] = evaluate_point(config, grid[i].s, grid[i].r1sq, grid[i].eta, point_seed(config.optimizer.seed, i));
  };
  const int n_threads = std::min<int>(config.threads, static_cast<int>(grid.size()));
  std::vector<std::thread> pool;
  for (int k = 1; k < n_threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return rows;
}

void write_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepHeader << '\n';
  os << std::setprecision(12);
  for (const auto& r : rows) {
    os << r.s << ',' << r.r1sq << ',' << r.eta << ',' << r.t_opt << ',' << r.s_prime_opt << ',' << r.alpha_opt << ','
       << r.p_d << ',' << r.p_bc << ',' << r.p << ',' << r.f << ',' << r.mean_n << ',' << r.mqi << ',' << r.rel_mqi
       << ',' << r.status << '\n';
  }
}

std::vector<WignerSample> export_wigner_grid(const GaussianMixtured& w, const GridSpec& grid) {
  if (w.modes() != 1) throw DimensionMismatch("export_wigner_grid expects a single-mode mixture");
  if (grid.points < 2 || !(grid.max > grid.min)) throw std::invalid_argument("export_wigner_grid: empty grid");
  const double h = (grid.max - grid.min) / (grid.points - 1);
  std::vector<WignerSample> out;
  out.reserve(static_cast<std::size_t>(grid.points) * grid.points);
  Eigen::Vector2d x;
  for (int j = 0; j < grid.points; ++j) {
    for (int i = 0; i < grid.points; ++i) {
      x << grid.min + i * h, grid.min + j * h;
      const std::complex<double> v = evaluate(w, Eigen::VectorXd(x));
      out.push_back({x(0), x(1), v.real(), v.imag()});
    }
  }
  return out;
}

void write_wigner_csv(std::ostream& os, const std::vector<WignerSample>& samples) {
  os << "beta_r,beta_i,W\n" << std::setprecision(12);
  for (const auto& s : samples) os << s.beta_r << ',' << s.beta_i << ',' << s.w << '\n';
}

}  // namespace catgen
