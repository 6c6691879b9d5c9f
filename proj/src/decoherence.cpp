#include "eraser/decoherence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace eraser {

namespace {
constexpr double kPi = std::numbers::pi;
}

SpectralFilter::SpectralFilter(double lambda, double dlambda)
    : center_wavelength(lambda), width(dlambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("filter wavelength must be positive");
  if (!(dlambda > 0.0 && dlambda < lambda)) {
    throw std::invalid_argument("filter width must satisfy 0 < width < wavelength");
  }
}

double SpectralFilter::center_omega() const {
  return 2.0 * kPi * kSpeedOfLight / center_wavelength;
}

double SpectralFilter::delta_omega() const {
  return 2.0 * kPi * kSpeedOfLight * width / (center_wavelength * center_wavelength);
}

double SpectralFilter::coherence_length() const {
  return center_wavelength * center_wavelength / width;
}

MziSetting MziSetting::from_epsilon(double epsilon, const SpectralFilter& f) {
  return {epsilon * f.center_wavelength, epsilon};
}

MziSetting MziSetting::from_path_difference(double delta, const SpectralFilter& f) {
  return {delta, delta / f.center_wavelength};
}

InputPolarization::InputPolarization(Complex h, Complex v) : c_h(h), c_v(v) {
  if (std::abs(std::norm(h) + std::norm(v) - 1.0) > kNormTol) {
    throw std::invalid_argument("input polarization is not normalized");
  }
}

Complex decoherence_gamma(const SpectralFilter& f, const MziSetting& mzi) {
  const double el = f.epsilon_lambda();
  const double ei = mzi.epsilon_I;
  const double mag = std::exp(-2.0 * kPi * kPi * el * el * ei * ei);
  return std::polar(mag, -2.0 * kPi * ei);
}

Complex gamma_oracle(const SpectralFilter& f, const MziSetting& mzi, int n_points,
                     double span) {
  if (n_points < 64) throw std::invalid_argument("gamma_oracle: n_points must be >= 64");
  if (span < 6.0) throw std::invalid_argument("gamma_oracle: span must be >= 6");

  const double wc = f.center_omega();
  const double dw = f.delta_omega();
  const double tau = mzi.path_difference / kSpeedOfLight;
  const double step = 2.0 * span * dw / (n_points - 1);
  if (std::abs(tau) * step > kPi / 2.0) {
    throw std::domain_error("undersampled phase");
  }

  Complex num{0.0, 0.0};
  double den = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double w = wc - span * dw + i * step;
    const double u = (w - wc) / dw;
    double weight = std::exp(-0.5 * u * u);
    if (i == 0 || i == n_points - 1) weight *= 0.5;  // trapezoid ends
    num += weight * std::polar(1.0, -w * tau);
    den += weight;
  }
  return num / den;
}

PolarizationDensity apply_channel(const InputPolarization& in, Complex g) {
  if (std::abs(g) > 1.0 + kNormTol) throw std::invalid_argument("unphysical coherence");
  const Complex hv = -g * in.c_h * std::conj(in.c_v);
  return density_from_matrix({Complex{std::norm(in.c_h), 0.0}, hv, std::conj(hv),
                              Complex{std::norm(in.c_v), 0.0}});
}

PolarizationDensity apply_channel(const PolarizationDensity& rho, Complex g) {
  if (std::abs(g) > 1.0 + kNormTol) throw std::invalid_argument("unphysical coherence");
  return density_from_matrix({rho.m[0], -g * rho.m[1], -std::conj(g) * rho.m[2], rho.m[3]});
}

double purity_closed_form(const InputPolarization& in, Complex g) {
  const double w = std::abs(in.c_h) * std::abs(in.c_v);
  return 1.0 - 2.0 * w * w * (1.0 - std::norm(g));
}

}  // namespace eraser
