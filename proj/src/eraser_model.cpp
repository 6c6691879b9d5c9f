#include "eraser/eraser_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eraser {

namespace {
constexpr double kPi = std::numbers::pi;
// Envelope values below this are treated as a diffraction zero.
constexpr double kZeroIntensityTol = 1e-24;
// Fraction of the envelope peak delimiting the central lobe for visibility.
constexpr double kLobeCut = 0.2;
}  // namespace

EraserConfig::EraserConfig(SlitGeometry g, SpectralFilter f, MziSetting m)
    : geometry(g), filter(f), mzi(m) {
  if (std::abs(geometry.lambda - filter.center_wavelength) >
      1e-12 * filter.center_wavelength) {
    throw std::invalid_argument("filter and geometry wavelengths differ");
  }
  // Every pattern below rests on the factored far-field form; the small
  // parameters are x-independent, so the whole scan range stands or falls
  // with the geometry.
  if (geometry.fraunhofer_slit_parameter() >= kFraunhoferLimit ||
      geometry.fraunhofer_detector_parameter() >= kFraunhoferLimit) {
    throw std::domain_error("beyond Fraunhofer approximation");
  }
}

EraserConfig EraserConfig::with_epsilon(double epsilon_I) const {
  return {geometry, filter, MziSetting::from_epsilon(epsilon_I, filter)};
}

PolarizationKet MeasurementSetting::ket() const {
  return {Complex{std::cos(theta), 0.0}, std::polar(std::sin(theta), phi)};
}

MeasurementSetting MeasurementSetting::v() { return {kPi / 2.0, 0.0}; }
MeasurementSetting MeasurementSetting::p() { return {kPi / 4.0, 0.0}; }
MeasurementSetting MeasurementSetting::m() { return {kPi / 4.0, kPi}; }
MeasurementSetting MeasurementSetting::l() { return {kPi / 4.0, kPi / 2.0}; }
MeasurementSetting MeasurementSetting::r() { return {kPi / 4.0, -kPi / 2.0}; }

MeasurementSetting MeasurementSetting::from_basis_state(std::string_view name) {
  if (name == "H") return h();
  if (name == "V") return v();
  if (name == "P") return p();
  if (name == "M") return m();
  if (name == "L") return l();
  if (name == "R") return r();
  throw std::invalid_argument("unknown analyzer state: " + std::string(name));
}

MeasurementSetting MeasurementSetting::orthogonal() const {
  return {kPi / 2.0 - theta, phi + kPi};
}

XiPair xi_exponents(double epsilon_x, const EraserConfig& cfg) {
  const double el = cfg.filter.epsilon_lambda();
  const double ei = cfg.mzi.epsilon_I;
  const double decay = 2.0 * kPi * kPi * el * el;
  return {Complex{-decay * (epsilon_x + ei) * (epsilon_x + ei),
                  2.0 * kPi * (epsilon_x - ei)},
          Complex{-decay * (epsilon_x - ei) * (epsilon_x - ei),
                  -2.0 * kPi * (epsilon_x + ei)}};
}

IdlerDensityResult idler_density_at(double x, const EraserConfig& cfg) {
  IdlerDensityResult out;
  const double env = cfg.geometry.envelope(x);
  out.a_minus = 2.0 * env;
  out.a_plus = 2.0 * env;
  const XiPair xi = xi_exponents(cfg.geometry.epsilon_x(x), cfg);
  out.b = env * (std::exp(xi.xi_plus) - std::exp(xi.xi_minus));
  if (env < kZeroIntensityTol) {
    out.zero_intensity = true;
    return out;
  }
  out.density = density_from_matrix(
      {Complex{out.a_minus / 8.0, 0.0}, -out.b / 8.0, -std::conj(out.b) / 8.0,
       Complex{out.a_plus / 8.0, 0.0}});
  return out;
}

double coincidence(double x, const MeasurementSetting& m, const EraserConfig& cfg) {
  const double env = cfg.geometry.envelope(x);
  const XiPair xi = xi_exponents(cfg.geometry.epsilon_x(x), cfg);
  const Complex b = env * (std::exp(xi.xi_plus) - std::exp(xi.xi_minus));
  // <theta| rho_unnormalized |theta>; the diagonal weights are both 2 env,
  // so the analyzer angle only enters through the coherence term.
  const double value =
      (2.0 * env - std::sin(2.0 * m.theta) * std::real(std::polar(1.0, m.phi) * b)) /
      8.0;
  return std::max(value, 0.0);
}

double coincidence_p(double x, const EraserConfig& cfg) {
  const double el = cfg.filter.epsilon_lambda();
  const double ei = cfg.mzi.epsilon_I;
  const double ex = cfg.geometry.epsilon_x(x);
  const double decay = 2.0 * kPi * kPi * el * el;
  const double chi_plus =
      std::exp(-decay * (ex + ei) * (ex + ei)) * std::cos(2.0 * kPi * (ex - ei));
  const double chi_minus =
      std::exp(-decay * (ex - ei) * (ex - ei)) * std::cos(2.0 * kPi * (ex + ei));
  return cfg.geometry.envelope(x) * (2.0 - (chi_plus - chi_minus));
}

double coincidence_p_half_integer(double x, int n, const EraserConfig& cfg) {
  const double el = cfg.filter.epsilon_lambda();
  const double ex = cfg.geometry.epsilon_x(x);
  const double pl2 = kPi * kPi * el * el;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double fringe = sign *
                        std::exp(-2.0 * pl2 * (ex * ex + 0.25 * n * n)) *
                        std::sinh(2.0 * n * pl2 * ex) * std::cos(2.0 * kPi * ex);
  return cfg.geometry.envelope(x) * (1.0 + fringe);
}

double coincidence_p_quarter(double x, int n, const EraserConfig& cfg) {
  const double el = cfg.filter.epsilon_lambda();
  const double ex = cfg.geometry.epsilon_x(x);
  const double decay = 2.0 * kPi * kPi * el * el;
  const double fringe =
      std::exp(-decay * (ex * ex + static_cast<double>(n) * n)) *
      std::sin(2.0 * kPi * ex);
  return cfg.geometry.envelope(x) * (1.0 - fringe);
}

VisibilityResult visibility(std::span<const PatternSample> samples) {
  VisibilityResult out;
  if (samples.empty()) {
    out.no_fringes = true;
    return out;
  }
  double env_peak = 0.0;
  std::size_t peak_idx = 0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].envelope > env_peak) {
      env_peak = samples[i].envelope;
      peak_idx = i;
    }
  }
  if (env_peak <= 0.0) {
    out.no_fringes = true;
    return out;
  }
  // Contiguous central lobe around the envelope maximum.
  std::size_t lo = peak_idx;
  while (lo > 0 && samples[lo - 1].envelope > kLobeCut * env_peak) --lo;
  std::size_t hi = peak_idx;
  while (hi + 1 < samples.size() && samples[hi + 1].envelope > kLobeCut * env_peak) ++hi;

  const double span = std::abs(samples[hi].epsilon_x - samples[lo].epsilon_x);
  if (span < 2.0) {  // fewer than two fringe periods available
    out.no_fringes = true;
    return out;
  }
  double rmin = std::numeric_limits<double>::infinity();
  double rmax = -rmin;
  for (std::size_t i = lo; i <= hi; ++i) {
    const double r = samples[i].coincidence / samples[i].envelope;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  if (rmax + rmin <= 0.0) {
    out.no_fringes = true;
    return out;
  }
  out.value = (rmax - rmin) / (rmax + rmin);
  if (out.value < 1e-6) {  // numerically flat: no fringe is present
    out.value = 0.0;
    out.no_fringes = true;
  }
  return out;
}

double coincidence_oracle(double x, const MeasurementSetting& m,
                          const EraserConfig& cfg, int n_points) {
  if (n_points < 1024) {
    throw std::invalid_argument("coincidence_oracle: n_points must be >= 1024");
  }
  constexpr double kSpan = 10.0;
  const double wc = cfg.filter.center_omega();
  const double wp = 2.0 * wc;
  const double dw = cfg.filter.delta_omega();
  const double delta_x = 2.0 * x * cfg.geometry.d / cfg.geometry.L;
  const double delta_i = cfg.mzi.path_difference;
  const double step = 2.0 * kSpan * dw / (n_points - 1);
  if ((std::abs(delta_x) + std::abs(delta_i)) / kSpeedOfLight * step > kPi / 2.0) {
    throw std::domain_error("undersampled phase");
  }

  const Complex proj_h{std::cos(m.theta), 0.0};
  const Complex proj_v = std::polar(std::sin(m.theta), -m.phi);  // conj(e^{i phi} sin)

  double acc = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double w = wc - kSpan * dw + i * step;
    const double uu = (w - wc) / dw;
    double weight = std::exp(-0.5 * uu * uu);
    if (i == 0 || i == n_points - 1) weight *= 0.5;  // trapezoid ends

    // Post-slit amplitudes at this frequency pair (omega, omega_p - omega):
    //   (|R_s> - u |L_s>)(|H_i> + v |V_i>) - (|L_s> + u |R_s>)(|H_i> - v |V_i>)
    // with u = e^{i omega delta_x / c}, v = e^{i (omega_p - omega) delta_I / c}.
    const Complex u = std::polar(1.0, w * delta_x / kSpeedOfLight);
    const Complex v = std::polar(1.0, (wp - w) * delta_i / kSpeedOfLight);
    const Complex amp_r = (1.0 - u) * proj_h + v * (1.0 + u) * proj_v;
    const Complex amp_l = -(1.0 + u) * proj_h + v * (1.0 - u) * proj_v;
    acc += weight * (std::norm(amp_r) + std::norm(amp_l));
  }
  return cfg.geometry.envelope(x) * acc * step;
}

}  // namespace eraser
