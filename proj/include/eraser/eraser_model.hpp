#pragma once
// The assembled model: signal photon through the birefringent double slit to
// the detector slit at x, idler photon through the marker half-wave plate
// and the unbalanced interferometer to a polarization analyzer.  Provides
// the reduced idler density operator at each x, coincidence rates for an
// arbitrary analyzer setting, the closed-form diagonal-basis patterns and
// their special cases, visibility extraction, and a full-state frequency
// quadrature that cross-checks every closed form.
//
// Pure functions; scans may fan out over (x, epsilon_I, analyzer) freely.

#include <span>
#include <vector>

#include "eraser/decoherence.hpp"
#include "eraser/pattern.hpp"
#include "eraser/slit_propagation.hpp"

namespace eraser {

struct EraserConfig {
  SlitGeometry geometry;
  SpectralFilter filter;
  MziSetting mzi;

  // Validates that filter and geometry agree on the wavelength.
  EraserConfig(SlitGeometry g, SpectralFilter f, MziSetting m);
  EraserConfig with_epsilon(double epsilon_I) const;
};

// Analyzer state |theta> = cos(theta)|H> + e^{i phi} sin(theta)|V>.
struct MeasurementSetting {
  double theta = 0.0;
  double phi = 0.0;

  PolarizationKet ket() const;
  static MeasurementSetting h() { return {0.0, 0.0}; }
  static MeasurementSetting v();
  static MeasurementSetting p();        // (H+V)/sqrt2
  static MeasurementSetting m();        // (H-V)/sqrt2
  static MeasurementSetting l();        // (H+iV)/sqrt2
  static MeasurementSetting r();        // (H-iV)/sqrt2
  static MeasurementSetting from_basis_state(std::string_view name);  // "H".."R"
  MeasurementSetting orthogonal() const;
};

// Decay-and-phase exponents of the two coherence pathways,
//   xi(+-) = -2 pi^2 eps_lambda^2 (eps_x +- eps_I)^2 +- 2 i pi (eps_x -+ eps_I).
// Re(xi) <= 0 always.
struct XiPair {
  Complex xi_plus;
  Complex xi_minus;
};
XiPair xi_exponents(double epsilon_x, const EraserConfig& cfg);

struct IdlerDensityResult {
  double a_minus = 0.0;        // |H><H| weight, 2 sinc^2(x a / 2 alpha)
  double a_plus = 0.0;         // |V><V| weight, equal by symmetry
  Complex b{0.0, 0.0};         // coherence weight, sinc^2 (e^{xi+} - e^{xi-})
  PolarizationDensity density; // trace-normalized; undefined if zero_intensity
  bool zero_intensity = false; // x sits on a diffraction zero
};

// Reduced idler polarization operator at detector position x:
//   rho = (1/8) [A- |H><H| + A+ |V><V| - (B |H><V| + B* |V><H|)].
IdlerDensityResult idler_density_at(double x, const EraserConfig& cfg);

// Tr(rho_unnormalized |theta><theta|) with rho from idler_density_at; the
// coincidence rate up to one setup-wide constant.  Nonnegative.
double coincidence(double x, const MeasurementSetting& m, const EraserConfig& cfg);

// Closed-form |P>-analyzer pattern,
//   sinc^2(x a / 2 alpha) (2 - (chi+ - chi-)),
//   chi(+-) = e^{-2 pi^2 eps_l^2 (eps_x +- eps_I)^2} cos(2 pi (eps_x -+ eps_I)).
// Equals 8 * coincidence(x, P, cfg) identically.
double coincidence_p(double x, const EraserConfig& cfg);

// |P>-analyzer pattern at half-integer imbalance eps_I = n/2:
//   sinc^2 (1 + (-1)^n e^{-2 pi^2 eps_l^2 (eps_x^2 + n^2/4)}
//               sinh(2 n pi^2 eps_l^2 eps_x) cos(2 pi eps_x)).
// The config's interferometer setting is superseded by n.
double coincidence_p_half_integer(double x, int n, const EraserConfig& cfg);

// |P>-analyzer pattern at quarter-offset imbalance eps_I = n + 1/4, with the
// near-unity cosh factor dropped:
//   sinc^2 (1 - e^{-2 pi^2 eps_l^2 (eps_x^2 + n^2)} sin(2 pi eps_x)).
// The config's interferometer setting is superseded by n.
double coincidence_p_quarter(double x, int n, const EraserConfig& cfg);

struct VisibilityResult {
  double value = 0.0;
  bool no_fringes = false;  // flat ratio or fewer than 2 fringe periods
};

// Envelope-normalizes the samples over the central diffraction lobe (where
// envelope > 0.2 of its maximum) and returns (max - min)/(max + min) of the
// ratio.  Needs the qualifying samples to span at least 2 fringe periods
// (epsilon_x span >= 2), else flags no_fringes and returns 0.
VisibilityResult visibility(std::span<const PatternSample> samples);

// Full-state frequency quadrature: builds the post-slit two-photon amplitude
// on a uniform omega grid (spectral density weight as in decoherence.hpp,
// omega_s = omega, omega_i = omega_p - omega), applies the analyzer
// projector, and sums |amplitude|^2 over signal polarization and omega.
// Proportional to coincidence() with one constant per configuration.
// Throws std::invalid_argument for n_points < 1024 and
// std::domain_error("undersampled phase") if the grid cannot resolve the
// oscillation.
double coincidence_oracle(double x, const MeasurementSetting& m,
                          const EraserConfig& cfg, int n_points = 4096);

}  // namespace eraser
