#pragma once
// The unbalanced Mach-Zehnder interferometer as a polarization decoherence
// channel: the closed-form complex coherence factor, its frequency-domain
// quadrature oracle (the ground truth the closed form is checked against),
// the channel action on a polarization state, and the closed-form purity.
//
// Spectral weight convention, used identically by every frequency trace in
// this library: the filter's spectral density (the weight multiplying
// squared amplitudes) is exp(-(w - wc)^2 / (2 dw^2)) with wc = 2 pi c/lambda
// and dw = 2 pi c dlambda / lambda^2.  Equivalently the single-photon
// amplitude profile is the fourth root of a Gaussian of variance dw^2.  This
// is the convention under which the closed forms below hold exactly.
//
// Pure functions; callers may evaluate many settings concurrently.

#include "eraser/quantum_core.hpp"

namespace eraser {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// Gaussian bandpass filter.  `width` is the Gaussian width parameter that
// enters epsilon_lambda = width / lambda directly; a measured FWHM must be
// converted by the caller (see RunConfig::filter_width_is_fwhm).
struct SpectralFilter {
  double center_wavelength;  // lambda, meters
  double width;              // delta lambda, meters

  SpectralFilter(double lambda, double dlambda);  // validates 0 < dlambda < lambda

  double epsilon_lambda() const { return width / center_wavelength; }
  double center_omega() const;      // 2 pi c / lambda
  double delta_omega() const;       // 2 pi c width / lambda^2
  double coherence_length() const;  // 2 pi c / delta_omega = lambda^2 / width
};

// Optical path difference between the interferometer arms.
struct MziSetting {
  double path_difference;  // delta_I, meters
  double epsilon_I;        // delta_I / lambda

  static MziSetting from_epsilon(double epsilon, const SpectralFilter& f);
  static MziSetting from_path_difference(double delta, const SpectralFilter& f);
};

// Normalized polarization amplitudes entering the interferometer.
struct InputPolarization {
  Complex c_h;
  Complex c_v;
  InputPolarization(Complex h, Complex v);  // validates |h|^2 + |v|^2 = 1
};

// exp(-2 pi^2 eps_lambda^2 eps_I^2 - 2 i pi eps_I); |gamma| in (0, 1].
Complex decoherence_gamma(const SpectralFilter& f, const MziSetting& mzi);

// Trapezoid quadrature of the coherence integral
//   int dw  density(w) e^{-i w delta_I / c}  /  int dw density(w)
// on a uniform grid over [wc - span dw, wc + span dw].  The phase sign is
// the one the channel trace produces (the delayed arm advances by
// e^{+i w delta_I/c} inside the ket, conjugated in the H-V coherence).
// Throws std::invalid_argument on n_points < 64 or span < 6 and
// std::domain_error("undersampled phase") when the oscillation period would
// span fewer than 4 grid steps.
Complex gamma_oracle(const SpectralFilter& f, const MziSetting& mzi,
                     int n_points = 4096, double span = 10.0);

// rho = |c_h|^2 |H><H| + |c_v|^2 |V><V| - (g c_h c_v* |H><V| + h.c.).
// The minus sign on the coherence is the post-selected output port of the
// interferometer.  Throws std::invalid_argument("unphysical coherence") when
// |g| > 1.
PolarizationDensity apply_channel(const InputPolarization& in, Complex g);
// Same channel acting on an already-mixed state (linear extension).
PolarizationDensity apply_channel(const PolarizationDensity& rho, Complex g);

// 1 - 2 (|c_h||c_v|)^2 (1 - |g|^2); equals purity(apply_channel(in, g)).
double purity_closed_form(const InputPolarization& in, Complex g);

}  // namespace eraser
