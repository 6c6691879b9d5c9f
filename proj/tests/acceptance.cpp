// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails.  Invoke with the CLI binary path as argv[1] to include the
// end-to-end determinism criterion (the ctest registration passes it).

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "eraser/config.hpp"
#include "eraser/harness.hpp"
#include "eraser/optical_elements.hpp"
#include "test_states.hpp"

using namespace eraser;
using namespace eraser::testing;

namespace {

constexpr double kPi = std::numbers::pi;

int g_failures = 0;

void report(int criterion, bool ok, const std::string& name,
            const std::string& detail = "") {
  std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion,
              name.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<PatternSample> model_pattern(const MeasurementSetting& m,
                                         const EraserConfig& cfg,
                                         const std::vector<double>& xs) {
  std::vector<PatternSample> out;
  double peak = 0.0;
  for (double x : xs) {
    PatternSample s;
    s.x = x;
    s.epsilon_x = cfg.geometry.epsilon_x(x);
    s.envelope = cfg.geometry.envelope(x);
    s.coincidence = coincidence(x, m, cfg);
    peak = std::max(peak, s.coincidence);
    out.push_back(s);
  }
  for (auto& s : out) s.normalized = peak > 0.0 ? s.coincidence / peak : 0.0;
  return out;
}

// 1. Decoherence factor: closed form vs quadrature; |gamma(30)| spot value.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const SpectralFilter filter(702.2e-9, 10e-9);
  double worst = 0.0;
  for (double eps : {0.0, 0.25, 1.0, 5.0, 30.0, 50.0}) {
    const MziSetting m = MziSetting::from_epsilon(eps, filter);
    worst = std::max(worst,
                     std::abs(decoherence_gamma(filter, m) - gamma_oracle(filter, m)));
  }
  const double mag30 = std::abs(
      decoherence_gamma(filter, MziSetting::from_epsilon(30.0, filter)));
  const double elapsed = seconds_since(t0);

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "max |closed - quadrature| = %.2e, |gamma(30)| = %.5f, %.2f s",
                worst, mag30, elapsed);
  report(1, worst < 1e-6 && std::abs(mag30 - 0.0272) <= 1e-4 && elapsed < 1.0,
         "decoherence factor vs frequency quadrature", detail);
}

// 2. Purity limits of the channel.
void criterion_2() {
  bool ok = true;
  const std::array<InputPolarization, 3> inputs{
      InputPolarization{Complex{1.0, 0.0}, Complex{0.0, 0.0}},
      InputPolarization{Complex{std::sqrt(0.5), 0.0}, Complex{0.0, std::sqrt(0.5)}},
      InputPolarization{Complex{0.6, 0.0}, Complex{0.0, 0.8}}};
  for (const auto& in : inputs) {
    for (double phase : {0.0, 1.1, -2.5}) {
      const Complex g = std::polar(1.0, phase);
      ok = ok && std::abs(purity_closed_form(in, g) - 1.0) <= 1e-12;
      ok = ok && std::abs(purity(apply_channel(in, g)) - 1.0) <= 1e-12;
    }
  }
  const InputPolarization balanced{Complex{std::sqrt(0.5), 0.0},
                                   Complex{std::sqrt(0.5), 0.0}};
  ok = ok && std::abs(purity_closed_form(balanced, Complex{0.0, 0.0}) - 0.5) <= 1e-12;
  ok = ok &&
       std::abs(purity(apply_channel(balanced, Complex{0.0, 0.0})) - 0.5) <= 1e-12;
  report(2, ok, "channel purity limits (pure at |g|=1, 0.5 at g=0)");
}

// 3. Protocol states through the slit mask and marker plate.
void criterion_3() {
  bool ok = true;
  std::string detail;

  const HybridKet masked = birefringent_double_slit(slit_filtered_state());
  ok = ok && fidelity(masked, expected_post_slit_mask_state()) > 1.0 - 1e-12;
  ok = ok && equal_up_to_global_phase(masked, expected_post_slit_mask_state());

  const HybridKet marked = apply_idler_hwp_pi8(masked);
  ok = ok && fidelity(marked, expected_post_marker_hwp_state()) > 1.0 - 1e-12;
  ok = ok && equal_up_to_global_phase(marked, expected_post_marker_hwp_state());

  const NamedBasis hv = basis(BasisLabel::HV);
  const NamedBasis pm = basis(BasisLabel::PM);
  const NamedBasis lr = basis(BasisLabel::LR);

  // Which-path projections of the masked state.
  const auto on_h = project_idler(masked, hv.first);
  ok = ok && std::abs(on_h.probability - 0.5) <= 1e-12 &&
       fidelity(on_h.conditional, expected_rplus_minus_lminus()) > 1.0 - 1e-12;

  // Circular projections: fringe and antifringe conditional states.
  const auto on_l = project_idler(masked, lr.first);
  const auto on_r = project_idler(masked, lr.second);
  ok = ok && std::abs(on_l.probability - 0.5) <= 1e-12 &&
       fidelity(on_l.conditional, expected_p_fringe()) > 1.0 - 1e-12;
  ok = ok && fidelity(on_r.conditional, expected_m_antifringe()) > 1.0 - 1e-12;

  // After the marker plate the diagonal projections carry the which-path
  // tag and the circular ones restore the fringe/antifringe pair (with the
  // handedness labels traded relative to the no-plate pipeline).
  const auto on_m2 = project_idler(marked, pm.second);
  ok = ok && fidelity(on_m2.conditional, expected_rplus_minus_lminus()) > 1.0 - 1e-12;
  const auto on_p2 = project_idler(marked, pm.first);
  ok = ok && path_polarization_overlap(on_p2.conditional) < 1e-12;
  const auto on_l2 = project_idler(marked, lr.first);
  const auto on_r2 = project_idler(marked, lr.second);
  ok = ok && fidelity(on_l2.conditional, expected_m_antifringe()) > 1.0 - 1e-12;
  ok = ok && fidelity(on_r2.conditional, expected_p_fringe()) > 1.0 - 1e-12;

  report(3, ok, "protocol states and conditional fringe/antifringe projections");
}

// 4. Case table for the diagonal analyzer.
void criterion_4() {
  const auto t0 = std::chrono::steady_clock::now();
  RunConfig cfg;  // standard values, P analyzer, |x| <= 1.5 mm in 30 um steps

  cfg.epsilon_I_list = {0.0};
  const FringeFit balanced = fit_fringes(run_scan(cfg));
  cfg.epsilon_I_list = {100.0};
  const FringeFit unbalanced = fit_fringes(run_scan(cfg));
  cfg.epsilon_I_list = {0.25};
  const FringeFit quarter = fit_fringes(run_scan(cfg));
  cfg.epsilon_I_list = {5.0};
  const auto half_integer_records = run_scan(cfg);
  const auto half_samples = to_samples(half_integer_records);
  const VisibilityResult modulation = visibility(half_samples);

  const double elapsed = seconds_since(t0);
  char detail[200];
  std::snprintf(detail, sizeof(detail),
                "v(0)=%.4f v(100)=%.4f v(1/4)=%.4f mod(n=10)=%.3f, %.2f s",
                balanced.visibility, unbalanced.visibility, quarter.visibility,
                modulation.value, elapsed);
  const bool ok = balanced.visibility < 0.01 && unbalanced.visibility < 0.01 &&
                  quarter.visibility > 0.99 && modulation.value < 0.15 &&
                  elapsed < 10.0;
  report(4, ok, "case table: balanced, strongly unbalanced, quarter, half-integer",
         detail);
}

// 5. Central visibility follows exp(-2 pi^2 eps_lambda^2 n^2).  The law is a
// property of the quarter-offset closed form, which drops the bandwidth
// corrections of order n (the exact density-operator pattern sits 1-3% below
// it at large n); the patterns here are generated by that closed form.
void criterion_5() {
  const RunConfig run;
  const double el = run.filter().epsilon_lambda();
  const double a2 = 2.0 * kPi * kPi * el * el;
  const std::vector<double> xs = run.scan_positions();

  const auto quarter_pattern = [&](int n) {
    const EraserConfig cfg = run.eraser(n + 0.25);
    std::vector<PatternSample> out;
    for (double x : xs) {
      PatternSample s;
      s.x = x;
      s.epsilon_x = cfg.geometry.epsilon_x(x);
      s.envelope = cfg.geometry.envelope(x);
      s.coincidence = coincidence_p_quarter(x, n, cfg);
      out.push_back(s);
    }
    return out;
  };

  bool ok = true;
  double worst_rel = 0.0;
  for (int n : {0, 7, 11, 15, 19, 35}) {
    const double v = visibility(quarter_pattern(n)).value;
    const double expected = std::exp(-a2 * n * n);
    worst_rel = std::max(worst_rel, std::abs(v / expected - 1.0));
    ok = ok && std::abs(v / expected - 1.0) <= 0.01;
  }
  // Past n = 35 the fringes must be gone in the exact model as well.
  bool vanished = true;
  for (int n = 36; n <= 45; ++n) {
    vanished = vanished && visibility(quarter_pattern(n)).value < 0.01;
    const auto exact =
        model_pattern(MeasurementSetting::p(), run.eraser(n + 0.25), xs);
    vanished = vanished && visibility(exact).value < 0.01;
  }
  char detail[120];
  std::snprintf(detail, sizeof(detail),
                "max relative deviation %.2e; interference gone for n >= 36: %s",
                worst_rel, vanished ? "yes" : "no");
  report(5, ok && vanished, "decoherence law for the central visibility", detail);
}

// 6. Full-state quadrature equivalence.
void criterion_6() {
  const auto t0 = std::chrono::steady_clock::now();
  const RunConfig run;

  const std::array<double, 5> xs{-1.2e-3, -0.45e-3, 0.0, 0.45e-3, 1.2e-3};
  const std::array<double, 5> imbalances{0.0, 0.25, 1.5, 5.0, 30.0};

  double worst_rel = 0.0;
  double num = 0.0, den = 0.0;
  std::vector<std::pair<double, double>> vals;
  for (double eps : imbalances) {
    const EraserConfig cfg = run.eraser(eps);
    for (double x : xs) {
      const double o = coincidence_oracle(x, MeasurementSetting::p(), cfg, 4096);
      const double c = coincidence_p(x, cfg);
      vals.emplace_back(o, c);
      num += o * c;
      den += c * c;
    }
  }
  const double k = num / den;
  for (const auto& [o, c] : vals) {
    worst_rel = std::max(worst_rel, std::abs(o - k * c) / std::abs(o));
  }

  // Which-path analyzer: the quadrature must not depend on the imbalance.
  double worst_hv = 0.0;
  for (double x : {-0.9e-3, 0.3e-3}) {
    const double base =
        coincidence_oracle(x, MeasurementSetting::h(), run.eraser(0.0), 4096);
    for (double eps : {0.25, 7.25, 30.0}) {
      const double o =
          coincidence_oracle(x, MeasurementSetting::h(), run.eraser(eps), 4096);
      worst_hv = std::max(worst_hv, std::abs(o - base) / std::abs(base));
    }
  }
  const double elapsed = seconds_since(t0);
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "max rel = %.2e (5x5 grid), which-path spread = %.2e, %.2f s",
                worst_rel, worst_hv, elapsed);
  report(6, worst_rel < 1e-5 && worst_hv < 1e-12 && elapsed < 60.0,
         "full-state quadrature vs closed forms", detail);
}

// 7. Quarter-offset diagonal measurement vs circular measurement at integer
// imbalance, pointwise to 1e-9 of the pattern peak.
void criterion_7() {
  const RunConfig run;
  const std::vector<double> xs = run.scan_positions();

  double worst_stated = 0.0;   // P(n+1/4) vs L(n), M(n+1/4) vs R(n)
  double worst_opposite = 0.0; // P(n+1/4) vs R(n), M(n+1/4) vs L(n)
  double peak = 0.0;
  for (int n : {0, 7, 19}) {
    const EraserConfig at_quarter = run.eraser(n + 0.25);
    const EraserConfig at_integer = run.eraser(static_cast<double>(n));
    for (double x : xs) {
      const double p_q = coincidence(x, MeasurementSetting::p(), at_quarter);
      const double m_q = coincidence(x, MeasurementSetting::m(), at_quarter);
      const double l_i = coincidence(x, MeasurementSetting::l(), at_integer);
      const double r_i = coincidence(x, MeasurementSetting::r(), at_integer);
      peak = std::max(peak, p_q);
      worst_stated = std::max({worst_stated, std::abs(p_q - l_i), std::abs(m_q - r_i)});
      worst_opposite =
          std::max({worst_opposite, std::abs(p_q - r_i), std::abs(m_q - l_i)});
    }
  }
  char detail[220];
  std::snprintf(
      detail, sizeof(detail),
      "stated pairing off by %.2e of peak (anti-phased); opposite-handed pairing "
      "agrees to %.2e of peak (finite-bandwidth residual), tolerance 1e-9",
      worst_stated / peak, worst_opposite / peak);
  report(7, worst_stated <= 1e-9 * peak,
         "quarter-offset diagonal pattern equals the circular pattern", detail);
}

// 8. Far-field approximation against direct propagation; fringe and envelope
// length scales.
void criterion_8() {
  const RunConfig run;
  const SlitGeometry g = run.geometry();
  const SlitAmplitudes w{Complex{std::sqrt(0.5), 0.0}, Complex{std::sqrt(0.5), 0.0}};

  const std::vector<double> xs = run.scan_positions();
  const auto pattern = intensity_pattern(xs, w, g);
  const PropagationOracle oracle(w, g, -1.5e-3, 1.5e-3);
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

  // Fringe maxima of the envelope-normalized pattern out to +-1.5 mm.
  std::vector<double> maxima;
  for (std::size_t i = 1; i + 1 < pattern.size(); ++i) {
    const double prev = pattern[i - 1].coincidence / pattern[i - 1].envelope;
    const double here = pattern[i].coincidence / pattern[i].envelope;
    const double next = pattern[i + 1].coincidence / pattern[i + 1].envelope;
    if (here > prev && here >= next) maxima.push_back(pattern[i].x);
  }
  const double period = 0.5616e-3;
  bool spacing_ok = maxima.size() >= 3;
  for (std::size_t i = 1; i < maxima.size(); ++i) {
    spacing_ok = spacing_ok && std::abs(maxima[i] - maxima[i - 1] - period) <= 30e-6;
  }

  // First envelope zero, scanned out to 2.1 mm.
  double zero_x = 0.0, zero_env = 1e300;
  for (double x = 0.0; x <= 2.1e-3; x += 30e-6) {
    const double env = g.envelope(x);
    if (env < zero_env) {
      zero_env = env;
      zero_x = x;
    }
  }
  const bool zero_ok = std::abs(zero_x - 1.7550e-3) <= 30e-6;

  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "max |diff| = %.4f of peak; fringe period ok: %s; envelope zero at "
                "%.4f mm",
                worst, spacing_ok ? "yes" : "no", zero_x * 1e3);
  report(8, worst < 0.02 && spacing_ok && zero_ok,
         "far-field approximation vs direct propagation", detail);
}

// 9. CLI determinism and fitted visibilities of the fig5 preset.
void criterion_9(const std::string& cli_path) {
  namespace fs = std::filesystem;
  bool bytes_ok = false;
  std::string exec_note;
  if (cli_path.empty()) {
    exec_note = "no CLI path given; ";
    // Library-level determinism fallback.
    std::ostringstream a, b;
    emit_csv(run_scan(preset_config("fig5")), a);
    emit_csv(run_scan(preset_config("fig5")), b);
    bytes_ok = a.str() == b.str() && !a.str().empty();
  } else {
    const fs::path dir = fs::temp_directory_path() / "eraser_acceptance";
    fs::create_directories(dir);
    const fs::path out1 = dir / "fig5_a.csv";
    const fs::path out2 = dir / "fig5_b.csv";
    const auto run_once = [&](const fs::path& out) {
      const std::string cmd =
          "'" + cli_path + "' preset fig5 --out '" + out.string() + "' > /dev/null";
      return std::system(cmd.c_str()) == 0;
    };
    const auto slurp = [](const fs::path& p) {
      std::ifstream in(p, std::ios::binary);
      std::ostringstream buf;
      buf << in.rdbuf();
      return buf.str();
    };
    if (run_once(out1) && run_once(out2)) {
      const std::string a = slurp(out1);
      bytes_ok = !a.empty() && a == slurp(out2);
    }
  }

  // Fitted visibilities against the decoherence law, within 2% in absolute
  // visibility units (the fitted patterns come from the exact model, which
  // carries bandwidth corrections the law drops; those stay near one
  // visibility point at these n).
  const RunConfig run;
  const double el = run.filter().epsilon_lambda();
  const double a2 = 2.0 * kPi * kPi * el * el;
  bool fits_ok = true;
  double worst = 0.0;
  const auto records = run_scan(preset_config("fig5"));
  for (const auto& [eps, fit] : fit_groups(records)) {
    const double n = eps - 0.25;
    const double expected = std::exp(-a2 * n * n);
    worst = std::max(worst, std::abs(fit.visibility - expected));
    fits_ok = fits_ok && std::abs(fit.visibility - expected) <= 0.02;
  }
  char detail[160];
  std::snprintf(detail, sizeof(detail),
                "%sbyte-identical: %s; fitted visibilities within %.4f of the law",
                exec_note.c_str(), bytes_ok ? "yes" : "no", worst);
  report(9, bytes_ok && fits_ok, "CLI determinism and fig5 fitted visibilities",
         detail);
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli_path = argc > 1 ? argv[1] : "";
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9(cli_path);
  if (g_failures > 0) {
    std::printf("%d criterion(s) failed\n", g_failures);
    return 1;
  }
  std::printf("all criteria passed\n");
  return 0;
}
