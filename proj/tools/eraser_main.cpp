// Command-line harness for the double-slit eraser simulator.
//
//   eraser scan    [--config FILE] [--out FILE] [--oracle]
//   eraser preset  <fig2|fig3|fig5> [--out FILE]
//   eraser gamma   [--config FILE] [--out FILE]
//   eraser check
//
// `scan` evaluates the coincidence pattern for every configured
// interferometer imbalance and writes one CSV.  `preset` runs a frozen
// figure-layout configuration and prints the fitted fringe visibilities.
// `gamma` tabulates the decoherence factor and the balanced-input purity.
// `check` runs every oracle cross-validation and exits nonzero on failure.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <vector>

#include "eraser/config.hpp"
#include "eraser/harness.hpp"

namespace {

using namespace eraser;

constexpr double kPi = std::numbers::pi;

RunConfig config_or_default(const std::string& path) {
  if (path.empty()) return RunConfig{};
  return load_config(path);
}

int cmd_scan(const std::string& config_path, const std::string& out_path, bool oracle) {
  RunConfig cfg = config_or_default(config_path);
  if (oracle) cfg.oracle_check = true;
  const auto records = run_scan(cfg);
  emit_csv(records, out_path);
  std::cout << "wrote " << records.size() << " records ("
            << cfg.epsilon_I_list.size() << " imbalance settings) to " << out_path
            << "\n";
  return 0;
}

int cmd_preset(const std::string& name, std::string out_path) {
  const RunConfig cfg = preset_config(name);
  if (out_path.empty()) out_path = "preset_" + name + ".csv";
  const auto records = run_scan(cfg);
  emit_csv(records, out_path);
  std::cout << "wrote " << records.size() << " records to " << out_path << "\n";
  for (const auto& [eps, fit] : fit_groups(records)) {
    std::printf("epsilon_I=%-8.4g visibility=%-8.4f phase=%-8.4f residual=%.2e%s\n",
                eps, fit.visibility, fit.phase, fit.residual,
                fit.degenerate ? " (no fringes)" : "");
  }
  return 0;
}

int cmd_gamma(const std::string& config_path, const std::string& out_path) {
  const RunConfig cfg = config_or_default(config_path);
  const SpectralFilter f = cfg.filter();
  const InputPolarization balanced{Complex{std::sqrt(0.5), 0.0},
                                   Complex{std::sqrt(0.5), 0.0}};
  std::ostream* out = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) {
      std::cerr << "cannot write to " << out_path << "\n";
      return 1;
    }
    out = &file;
  }
  *out << "epsilon_I,gamma_abs,gamma_arg,purity\n";
  for (int i = 0; i <= 50; ++i) {
    const MziSetting m = MziSetting::from_epsilon(static_cast<double>(i), f);
    const Complex g = decoherence_gamma(f, m);
    char line[128];
    std::snprintf(line, sizeof(line), "%d,%.9g,%.9g,%.9g\n", i, std::abs(g),
                  std::arg(g), purity_closed_form(balanced, g));
    *out << line;
  }
  return 0;
}

struct CheckReport {
  int failures = 0;
  void result(bool ok, const std::string& name) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  }
};

int cmd_check() {
  CheckReport report;
  const RunConfig run;
  const SpectralFilter filter(702.2e-9, 10e-9);

  {  // closed-form decoherence factor vs quadrature
    bool ok = true;
    for (double eps : {0.0, 0.25, 1.0, 5.0, 30.0, 50.0}) {
      const MziSetting m = MziSetting::from_epsilon(eps, filter);
      ok = ok && std::abs(decoherence_gamma(filter, m) - gamma_oracle(filter, m)) < 1e-6;
    }
    report.result(ok, "decoherence factor: closed form vs frequency quadrature");
  }

  {  // slit-state orthonormality under momentum quadrature
    const SlitGeometry g = run.geometry();
    const int n = 1 << 16;
    const double q_max = 512.0 / g.a;
    const double dq = 2.0 * q_max / (n - 1);
    double norm = 0.0;
    Complex overlap{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
      const double q = -q_max + i * dq;
      const Complex plus = slit_mode_amplitude(q, Slit::Plus, g);
      const Complex minus = slit_mode_amplitude(q, Slit::Minus, g);
      const double w = (i == 0 || i == n - 1) ? 0.5 : 1.0;
      norm += w * std::norm(plus);
      overlap += w * std::conj(plus) * minus;
    }
    report.result(std::abs(norm * dq - 1.0) < 1e-3 && std::abs(overlap * dq) < 1e-3,
                  "slit modes: unit norm and orthogonality");
  }

  {  // far-field closed form vs direct propagation
    const SlitGeometry g = run.geometry();
    const SlitAmplitudes w{Complex{std::sqrt(0.5), 0.0}, Complex{std::sqrt(0.5), 0.0}};
    const PropagationOracle oracle(w, g, -1.5e-3, 1.5e-3);
    std::vector<double> xs = run.scan_positions();
    const auto pattern = intensity_pattern(xs, w, g);
    double peak_c = 0.0, peak_d = 0.0;
    std::vector<double> direct;
    for (double x : xs) {
      direct.push_back(oracle.intensity(x));
      peak_d = std::max(peak_d, direct.back());
    }
    for (const auto& s : pattern) peak_c = std::max(peak_c, s.coincidence);
    double worst = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      worst = std::max(worst,
                       std::abs(pattern[i].coincidence / peak_c - direct[i] / peak_d));
    }
    report.result(worst < 0.02, "detected amplitude vs direct propagation (2% of peak)");
  }

  {  // special-case closed forms against the general one
    bool ok = true;
    for (int n : {0, 1, 3, 10}) {
      const EraserConfig cfg = run.eraser(n / 2.0);
      double peak = 0.0;
      for (double x : run.scan_positions()) {
        peak = std::max(peak, coincidence_p(x, cfg));
      }
      for (double x : run.scan_positions()) {
        ok = ok && std::abs(coincidence_p(x, cfg) -
                            2.0 * coincidence_p_half_integer(x, n, cfg)) <= 1e-9 * peak;
      }
    }
    for (int n : {0, 5, 20}) {
      const EraserConfig cfg = run.eraser(n + 0.25);
      double num = 0.0, den = 0.0, peak = 0.0;
      std::vector<std::pair<double, double>> vals;
      for (double x : run.scan_positions()) {
        vals.emplace_back(coincidence_p(x, cfg), coincidence_p_quarter(x, n, cfg));
        num += vals.back().first * vals.back().second;
        den += vals.back().second * vals.back().second;
        peak = std::max(peak, vals.back().first);
      }
      const double k = num / den;
      for (const auto& [gen, spc] : vals) ok = ok && std::abs(gen - k * spc) <= 0.01 * peak;
    }
    report.result(ok, "special-case patterns vs the general closed form");
  }

  {  // full-state quadrature vs the density-operator rate
    bool ok = true;
    for (double eps : {0.0, 0.25, 5.0, 30.0}) {
      const EraserConfig cfg = run.eraser(eps);
      double num = 0.0, den = 0.0;
      std::vector<std::pair<double, double>> vals;
      for (double x : {-1.2e-3, -0.45e-3, 0.0, 0.45e-3, 1.2e-3}) {
        vals.emplace_back(coincidence_oracle(x, MeasurementSetting::p(), cfg),
                          coincidence(x, MeasurementSetting::p(), cfg));
        num += vals.back().first * vals.back().second;
        den += vals.back().second * vals.back().second;
      }
      const double k = num / den;
      for (const auto& [o, c] : vals) ok = ok && std::abs(o - k * c) <= 1e-5 * std::abs(o);
    }
    report.result(ok, "full-state quadrature vs density-operator rate");
  }

  {  // which-path analyzer independence of the interferometer
    bool ok = true;
    const EraserConfig base = run.eraser(0.0);
    for (double x : {-1.1e-3, 0.2e-3, 0.9e-3}) {
      const double c0 = coincidence(x, MeasurementSetting::h(), base);
      for (double eps : {0.25, 7.25, 42.0}) {
        ok = ok && std::abs(coincidence(x, MeasurementSetting::h(), run.eraser(eps)) -
                            c0) < 1e-12;
      }
    }
    report.result(ok, "which-path analyzer sees no interferometer dependence");
  }

  if (report.failures > 0) {
    std::cout << report.failures << " check(s) failed\n";
    return 1;
  }
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-slit quantum eraser simulator with a tunable "
               "interferometric decoherence channel"};
  app.require_subcommand(1);

  std::string config_path, scan_out = "scan.csv", preset_out, gamma_out, preset_name;
  bool oracle = false;

  auto* scan = app.add_subcommand("scan", "run a configured scan and write CSV");
  scan->add_option("--config", config_path, "config file (flat key = value)");
  scan->add_option("--out", scan_out, "output CSV path");
  scan->add_flag("--oracle", oracle, "cross-check every 10th point against the "
                                     "full-state quadrature");

  auto* preset = app.add_subcommand("preset", "run a frozen figure-layout preset");
  preset->add_option("name", preset_name, "fig2, fig3, or fig5")->required();
  preset->add_option("--out", preset_out, "output CSV path");

  auto* gamma = app.add_subcommand("gamma", "tabulate the decoherence factor");
  gamma->add_option("--config", config_path, "config file (flat key = value)");
  gamma->add_option("--out", gamma_out, "output path (default stdout)");

  app.add_subcommand("check", "run all oracle cross-validations");

  CLI11_PARSE(app, argc, argv);

  try {
    if (scan->parsed()) return cmd_scan(config_path, scan_out, oracle);
    if (preset->parsed()) return cmd_preset(preset_name, preset_out);
    if (gamma->parsed()) return cmd_gamma(config_path, gamma_out);
    return cmd_check();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
