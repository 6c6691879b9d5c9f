#pragma once
// Scalar far-field propagation of the signal photon from the double slit to
// the detection plane: slit-mode amplitudes, the momentum-space field, the
// detected-amplitude approximation with its sinc^2 envelope, and a
// brute-force direct-propagation route used to validate the approximation.
//
// Pure functions; pattern evaluation preserves the input ordering.

#include <span>
#include <vector>

#include "eraser/pattern.hpp"
#include "eraser/quantum_core.hpp"

namespace eraser {

// sin(u)/u with sinc(0) = 1; series for |u| < 1e-8.
double sinc(double u);

// Ceiling on the far-field small parameters a d / 2 alpha and b d / 2 alpha.
// The standard geometry sits near 0.22 / 0.14 and the direct-propagation
// check holds the closed form to about 1% of peak there; past ~0.5 the
// factored envelope is no longer trustworthy.
inline constexpr double kFraunhoferLimit = 0.5;

// Slit half-width a, slit half-separation d (slits centered at +-d),
// detector-slit half-width b, propagation distance L, wavelength lambda.
// All meters.  The CLI accepts full widths and center-to-center separation
// and halves them before constructing this.
struct SlitGeometry {
  double a;
  double d;
  double b;
  double L;
  double lambda;

  SlitGeometry(double a, double d, double b, double L, double lambda);

  double wavenumber() const;  // 2 pi / lambda
  double alpha() const;       // L / (2 k) = L lambda / (4 pi)
  double epsilon_x(double x) const;   // 2 x d / (L lambda)
  double envelope(double x) const;    // sinc^2(x a / (2 alpha))
  double envelope_arg(double x) const;  // x a / (2 alpha)
  // Small parameters of the far-field reduction; both must stay below
  // kFraunhoferLimit for the factored envelope-times-fringe form to hold.
  double fraunhofer_slit_parameter() const;      // a d / 2 alpha
  double fraunhofer_detector_parameter() const;  // b d / 2 alpha
};

// Amplitudes on the upper/lower slit modes, |W+|^2 + |W-|^2 = 1.
struct SlitAmplitudes {
  Complex w_plus;
  Complex w_minus;
  SlitAmplitudes(Complex plus, Complex minus);  // validates unit norm
};

// Momentum-space amplitude of one slit mode,
//   <q|+-> = sqrt(a/pi) e^{-+ i d q} sinc(q a),
// normalized so that int dq |<q|+->|^2 = 1.
Complex slit_mode_amplitude(double q, Slit which, const SlitGeometry& g);

// Field after free propagation to the detection plane, momentum space:
//   F(q) = e^{-i q^2 alpha} sinc(q a) (W+ e^{-i q d} + W- e^{+i q d}).
Complex far_field_amplitude(double q, const SlitAmplitudes& w, const SlitGeometry& g);

struct DetectedAmplitude {
  Complex amplitude;   // (W+ e^{-i pi eps_x} + W- e^{+i pi eps_x}) sinc(x a / 2 alpha)
  double envelope;     // sinc^2(x a / 2 alpha)
  double epsilon_x;    // 2 x d / (L lambda)
};

// Far-field (stationary-phase) approximation of the amplitude transmitted
// through the detector slit at x.  Requires the small-parameter regime
// a d / 2 alpha < 0.5 and b d / 2 alpha < 0.5; throws
// std::domain_error("beyond Fraunhofer approximation") otherwise.
DetectedAmplitude detected_amplitude(double x, const SlitAmplitudes& w,
                                     const SlitGeometry& g);

// |detected amplitude|^2 at each x, same order as the input; `normalized`
// is filled against the maximum over the list.
std::vector<PatternSample> intensity_pattern(std::span<const double> xs,
                                             const SlitAmplitudes& w,
                                             const SlitGeometry& g);

// Direct-propagation route used to validate detected_amplitude: builds the
// momentum-space field on a uniform grid |q| <= q_span_over_a / a with
// n_q points, Fourier-transforms it to the detection plane once over
// [x_min - b, x_max + b], and integrates |psi|^2 over the detector-slit
// window for each requested x.  Independent of the closed form above.
class PropagationOracle {
 public:
  PropagationOracle(const SlitAmplitudes& w, const SlitGeometry& g, double x_min,
                    double x_max, int n_q = 1 << 14, double q_span_over_a = 8.0 * 3.14159265358979323846);

  // Transmitted intensity through the slit window centered at x (arbitrary
  // overall scale).  x must lie within [x_min, x_max] given at construction.
  double intensity(double x) const;

 private:
  SlitGeometry geometry_;
  double grid_x0_;
  double grid_step_;
  std::vector<double> intensity_grid_;  // |psi(xi)|^2 on the fine plane grid
};

}  // namespace eraser
