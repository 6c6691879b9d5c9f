#include "eraser/slit_propagation.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace eraser {

namespace {
constexpr double kPi = std::numbers::pi;
}  // namespace

double sinc(double u) {
  if (std::abs(u) < 1e-8) return 1.0 - u * u / 6.0;
  return std::sin(u) / u;
}

SlitGeometry::SlitGeometry(double a_, double d_, double b_, double L_, double lambda_)
    : a(a_), d(d_), b(b_), L(L_), lambda(lambda_) {
  if (!(a > 0.0 && d > 0.0 && b > 0.0 && L > 0.0 && lambda > 0.0)) {
    throw std::invalid_argument("slit geometry lengths must be positive");
  }
  if (!(d > a)) throw std::invalid_argument("slits overlap: need d > a");
}

double SlitGeometry::wavenumber() const { return 2.0 * kPi / lambda; }

double SlitGeometry::alpha() const { return L * lambda / (4.0 * kPi); }

// Written as x * slope so linearity in x holds to the last bit.
double SlitGeometry::epsilon_x(double x) const { return x * (2.0 * d / (L * lambda)); }

double SlitGeometry::envelope_arg(double x) const { return x * a / (2.0 * alpha()); }

double SlitGeometry::envelope(double x) const {
  const double s = sinc(envelope_arg(x));
  return s * s;
}

double SlitGeometry::fraunhofer_slit_parameter() const { return a * d / (2.0 * alpha()); }

double SlitGeometry::fraunhofer_detector_parameter() const {
  return b * d / (2.0 * alpha());
}

SlitAmplitudes::SlitAmplitudes(Complex plus, Complex minus)
    : w_plus(plus), w_minus(minus) {
  if (std::abs(std::norm(plus) + std::norm(minus) - 1.0) > kNormTol) {
    throw std::invalid_argument("slit amplitudes are not normalized");
  }
}

Complex slit_mode_amplitude(double q, Slit which, const SlitGeometry& g) {
  const double phase = (which == Slit::Plus) ? -g.d * q : g.d * q;
  return std::sqrt(g.a / kPi) * std::polar(1.0, phase) * sinc(q * g.a);
}

Complex far_field_amplitude(double q, const SlitAmplitudes& w, const SlitGeometry& g) {
  const Complex prop = std::polar(1.0, -q * q * g.alpha());
  const Complex slits =
      w.w_plus * std::polar(1.0, -q * g.d) + w.w_minus * std::polar(1.0, q * g.d);
  return prop * sinc(q * g.a) * slits;
}

DetectedAmplitude detected_amplitude(double x, const SlitAmplitudes& w,
                                     const SlitGeometry& g) {
  if (g.fraunhofer_slit_parameter() >= kFraunhoferLimit ||
      g.fraunhofer_detector_parameter() >= kFraunhoferLimit) {
    throw std::domain_error("beyond Fraunhofer approximation");
  }
  DetectedAmplitude out;
  out.epsilon_x = g.epsilon_x(x);
  const double s = sinc(g.envelope_arg(x));
  out.envelope = s * s;
  const double half_phase = kPi * out.epsilon_x;  // omega delta_x / 2c at center
  out.amplitude = s * (w.w_plus * std::polar(1.0, -half_phase) +
                       w.w_minus * std::polar(1.0, half_phase));
  return out;
}

std::vector<PatternSample> intensity_pattern(std::span<const double> xs,
                                             const SlitAmplitudes& w,
                                             const SlitGeometry& g) {
  std::vector<PatternSample> out;
  out.reserve(xs.size());
  double peak = 0.0;
  for (double x : xs) {
    const DetectedAmplitude da = detected_amplitude(x, w, g);
    PatternSample s;
    s.x = x;
    s.epsilon_x = da.epsilon_x;
    s.envelope = da.envelope;
    s.coincidence = std::norm(da.amplitude);
    out.push_back(s);
    peak = std::max(peak, s.coincidence);
  }
  if (peak > 0.0) {
    for (auto& s : out) s.normalized = s.coincidence / peak;
  }
  return out;
}

PropagationOracle::PropagationOracle(const SlitAmplitudes& w, const SlitGeometry& g,
                                     double x_min, double x_max, int n_q,
                                     double q_span_over_a)
    : geometry_(g) {
  if (n_q < 1024) throw std::invalid_argument("propagation oracle: n_q too small");
  if (!(x_max > x_min)) throw std::invalid_argument("propagation oracle: empty x range");

  const double q_max = q_span_over_a / g.a;
  const double dq = 2.0 * q_max / (n_q - 1);

  std::vector<Complex> field(n_q);
  std::vector<double> qs(n_q);
  for (int i = 0; i < n_q; ++i) {
    qs[i] = -q_max + i * dq;
    field[i] = far_field_amplitude(qs[i], w, g);
    if (i == 0 || i == n_q - 1) field[i] *= 0.5;  // trapezoid ends
  }

  // Fine plane grid; step chosen so slit edges x +- b land on grid nodes for
  // the window integration (b is a multiple of typical scan steps anyway).
  grid_step_ = std::min(g.b / 10.0, 2.5e-6);
  grid_x0_ = x_min - g.b - grid_step_;
  const double x1 = x_max + g.b + grid_step_;
  const int n_x = static_cast<int>(std::ceil((x1 - grid_x0_) / grid_step_)) + 1;

  intensity_grid_.resize(n_x);
  for (int ix = 0; ix < n_x; ++ix) {
    const double xi = grid_x0_ + ix * grid_step_;
    Complex psi{0.0, 0.0};
    for (int i = 0; i < n_q; ++i) {
      psi += field[i] * std::polar(1.0, qs[i] * xi);
    }
    intensity_grid_[ix] = std::norm(psi * dq);
  }
}

double PropagationOracle::intensity(double x) const {
  const double lo = x - geometry_.b;
  const double hi = x + geometry_.b;
  const auto interpolate = [&](double xi) {
    const double t = (xi - grid_x0_) / grid_step_;
    const int i = static_cast<int>(std::floor(t));
    if (i < 0 || i + 1 >= static_cast<int>(intensity_grid_.size())) {
      throw std::out_of_range("propagation oracle: x outside prepared range");
    }
    const double f = t - i;
    return (1.0 - f) * intensity_grid_[i] + f * intensity_grid_[i + 1];
  };
  // Trapezoid over the slit window on a fixed subdivision; the linear
  // interpolation keeps the result smooth in x regardless of grid alignment.
  constexpr int kWindowSteps = 64;
  const double h = (hi - lo) / kWindowSteps;
  double acc = 0.5 * (interpolate(lo) + interpolate(hi));
  for (int i = 1; i < kWindowSteps; ++i) acc += interpolate(lo + i * h);
  return acc * h;
}

}  // namespace eraser
