#pragma once
// Jones-calculus optical elements (wave plates, polarizer), the named
// polarization bases, and the protocol elements acting on two-photon kets:
// the birefringent double slit and the which-path-marker half-wave plate.
//
// Wave-plate conventions used throughout this library:
//   hwp(t) = R(t) diag(1, -1) R(-t)   a real involution, det = -1
//   qwp(t) = R(t) diag(1,  i) R(-t)   the axis at t + 90 deg gains +pi/2
// with R(t) the counterclockwise rotation by t and angles measured from the
// horizontal axis.  hwp(t) maps a linear polarization at angle b to 2t - b,
// so hwp(pi/8) maps H to P.  Physical orientations of the concrete optics in
// this setup are pinned by the states they must produce (see the notes on
// birefringent_double_slit and apply_idler_hwp_pi8).
//
// Pure functions on immutable values; thread-safe.

#include <string_view>

#include "eraser/quantum_core.hpp"

namespace eraser {

struct JonesMatrix {
  std::array<Complex, 4> m{};  // row-major in {H, V}

  static JonesMatrix identity() { return {{Complex{1.0, 0.0}, {}, {}, Complex{1.0, 0.0}}}; }
  JonesMatrix adjoint() const;
  JonesMatrix operator*(const JonesMatrix& rhs) const;
  PolarizationKet apply(const PolarizationKet& k) const;
};

// True when m m^dagger = 1 within tol (entrywise).
bool is_unitary(const JonesMatrix& m, double tol = kNormTol);

JonesMatrix hwp(double angle);
JonesMatrix qwp(double angle);
// Ideal linear polarizer: rank-1 projector onto the polarization at `angle`.
JonesMatrix polarizer(double angle);

enum class BasisLabel { HV, PM, LR };

struct NamedBasis {
  BasisLabel label;
  PolarizationKet first;   // H, P, or L
  PolarizationKet second;  // V, M, or R
};

// P = (H+V)/sqrt2, M = (H-V)/sqrt2, L = (H+iV)/sqrt2, R = (H-iV)/sqrt2.
NamedBasis basis(BasisLabel label);
// Accepts "HV", "PM", "LR"; throws std::invalid_argument on anything else.
NamedBasis basis(std::string_view name);

HybridKet apply_idler(const JonesMatrix& j, const HybridKet& k);
HybridKet apply_signal(const JonesMatrix& j, const HybridKet& k);
// Applies `on_plus` to the signal polarization on the upper path and
// `on_minus` on the lower path.
HybridKet apply_signal_path_conditional(const JonesMatrix& on_plus,
                                        const JonesMatrix& on_minus,
                                        const HybridKet& k);
// u rho u^dagger.
PolarizationDensity conjugate(const JonesMatrix& u, const PolarizationDensity& rho);

// The polarization-entangled pair (|H_i V_s> + i |V_i H_s>)/sqrt2 with the
// signal photon in the balanced slit superposition (|+> + |->)/sqrt2, i.e.
// the source state after the double slit's momentum filtering.  The i is the
// birefringent walk-off phase of the source crystals; the preparation wave
// plates leave it in place and the slit mask phase convention absorbs it.
HybridKet slit_filtered_state();

// The quarter-wave pair glued behind the slits, fast axes orthogonal between
// the two slits (-45 deg on the upper, +45 deg on the lower in the frame of
// the incoming polarizations).  Tags the slit path with circular
// polarization: a CNOT between signal polarization and path.  On
// slit_filtered_state() the output is, up to one global phase,
//   |H_i>[|R,+> - |L,->] + |V_i>[|L,+> + |R,->]   (normalized).
HybridKet birefringent_double_slit(const HybridKet& k);
HybridKet birefringent_double_slit_adjoint(const HybridKet& k);

// The marker half-wave plate in front of the interferometer, nominally at
// 22.5 deg.  Its orientation in this library's angle convention is -pi/8
// (H -> M, V -> -P): that sign is the one consistent with the slit-mask
// output above, under which the marker bases swap roles,
//   |H_i>[..] + |V_i>[..]  ->  |M_i>[|R,+> - |L,->] - |P_i>[|L,+> + |R,->].
HybridKet apply_idler_hwp_pi8(const HybridKet& k);

}  // namespace eraser
