#pragma once
// Complex-amplitude state algebra on the small tensor-product spaces of the
// eraser setup: two-photon kets over idler-polarization x signal-polarization
// x slit-path, single-qubit polarization kets and density operators,
// projections and purity.
//
// Tensor index order is fixed once for the whole library: idler-major, then
// signal polarization, then slit path.  amp[(i << 2) | (s << 1) | p] with
// H = 0, V = 1, upper slit (+) = 0, lower slit (-) = 1.
//
// All types are immutable values after construction and every operation is a
// pure function; everything here is safe to share across threads.

#include <array>
#include <complex>
#include <cstddef>

namespace eraser {

using Complex = std::complex<double>;

// Unit-norm tolerance: ~100x double epsilon accumulated over an 8-dim state.
inline constexpr double kNormTol = 1e-12;
// Below this projection probability a conditional state is numerically
// meaningless and is flagged instead of renormalized.
inline constexpr double kOrthogonalTol = 1e-15;
// Eigenvalue floor for density-operator positivity checks.
inline constexpr double kPsdFloor = -1e-12;

enum class Pol : int { H = 0, V = 1 };
enum class Slit : int { Plus = 0, Minus = 1 };

struct PolarizationKet {
  Complex h{0.0, 0.0};
  Complex v{0.0, 0.0};
};

double norm_sq(const PolarizationKet& k);
bool is_normalized(const PolarizationKet& k, double tol = kNormTol);
PolarizationKet normalize(const PolarizationKet& k);
Complex inner(const PolarizationKet& a, const PolarizationKet& b);  // <a|b>

// Pure two-photon state: 8 complex amplitudes in the fixed index order above.
struct HybridKet {
  std::array<Complex, 8> amp{};
  bool normalized = false;

  static constexpr std::size_t index(Pol idler, Pol signal, Slit path) {
    return (static_cast<std::size_t>(idler) << 2) |
           (static_cast<std::size_t>(signal) << 1) |
           static_cast<std::size_t>(path);
  }
  Complex& at(Pol i, Pol s, Slit p) { return amp[index(i, s, p)]; }
  const Complex& at(Pol i, Pol s, Slit p) const { return amp[index(i, s, p)]; }
};

double norm_sq(const HybridKet& k);
bool is_normalized(const HybridKet& k, double tol = kNormTol);
// Throws std::invalid_argument("null state") on zero-norm input.
HybridKet normalize(const HybridKet& k);
Complex inner(const HybridKet& a, const HybridKet& b);
// |<a|b>| for unit vectors; 1 means equal up to a global phase.
double fidelity(const HybridKet& a, const HybridKet& b);

// Conditional signal state (signal polarization x slit path) left after an
// idler projection.
struct SignalKet {
  std::array<Complex, 4> amp{};
  bool normalized = false;

  static constexpr std::size_t index(Pol signal, Slit path) {
    return (static_cast<std::size_t>(signal) << 1) |
           static_cast<std::size_t>(path);
  }
  Complex& at(Pol s, Slit p) { return amp[index(s, p)]; }
  const Complex& at(Pol s, Slit p) const { return amp[index(s, p)]; }
};

double norm_sq(const SignalKet& k);
SignalKet normalize(const SignalKet& k);
Complex inner(const SignalKet& a, const SignalKet& b);
double fidelity(const SignalKet& a, const SignalKet& b);

struct IdlerProjection {
  SignalKet conditional;     // renormalized; undefined when `orthogonal`
  double probability = 0.0;  // in [0, 1]
  bool orthogonal = false;   // probability fell below kOrthogonalTol
};

// Projects the idler qubit of `k` onto `onto` and returns the renormalized
// conditional signal state with the projection probability.  Both inputs
// must be normalized.
IdlerProjection project_idler(const HybridKet& k, const PolarizationKet& onto);

// 2x2 Hermitian, trace-1, positive-semidefinite operator in the {H, V} basis.
struct PolarizationDensity {
  std::array<Complex, 4> m{};  // row-major

  Complex at(Pol row, Pol col) const {
    return m[2 * static_cast<std::size_t>(row) + static_cast<std::size_t>(col)];
  }
};

// Validates Hermiticity (1e-12) and positivity (eigenvalues >= -1e-12),
// normalizes the trace to 1.  Throws std::invalid_argument on violations.
PolarizationDensity density_from_matrix(const std::array<Complex, 4>& m);
// |k><k| for a normalized ket; throws on unnormalized input.
PolarizationDensity density_from_ket(const PolarizationKet& k);
// Tr(rho^2), in [0.5, 1] for a qubit.
double purity(const PolarizationDensity& rho);

}  // namespace eraser
