#include "eraser/optical_elements.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace eraser {

namespace {
constexpr Complex kI{0.0, 1.0};
constexpr double kInvSqrt2 = 0.70710678118654752440;
}  // namespace

JonesMatrix JonesMatrix::adjoint() const {
  return {{std::conj(m[0]), std::conj(m[2]), std::conj(m[1]), std::conj(m[3])}};
}

JonesMatrix JonesMatrix::operator*(const JonesMatrix& rhs) const {
  return {{m[0] * rhs.m[0] + m[1] * rhs.m[2], m[0] * rhs.m[1] + m[1] * rhs.m[3],
           m[2] * rhs.m[0] + m[3] * rhs.m[2], m[2] * rhs.m[1] + m[3] * rhs.m[3]}};
}

PolarizationKet JonesMatrix::apply(const PolarizationKet& k) const {
  return {m[0] * k.h + m[1] * k.v, m[2] * k.h + m[3] * k.v};
}

bool is_unitary(const JonesMatrix& m, double tol) {
  const JonesMatrix p = m * m.adjoint();
  return std::abs(p.m[0] - 1.0) <= tol && std::abs(p.m[3] - 1.0) <= tol &&
         std::abs(p.m[1]) <= tol && std::abs(p.m[2]) <= tol;
}

JonesMatrix hwp(double angle) {
  const double c = std::cos(2.0 * angle);
  const double s = std::sin(2.0 * angle);
  return {{Complex{c, 0.0}, Complex{s, 0.0}, Complex{s, 0.0}, Complex{-c, 0.0}}};
}

JonesMatrix qwp(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  // R(t) diag(1, i) R(-t)
  return {{c * c + kI * s * s, (1.0 - kI) * s * c,
           (1.0 - kI) * s * c, s * s + kI * c * c}};
}

JonesMatrix polarizer(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {{Complex{c * c, 0.0}, Complex{c * s, 0.0}, Complex{c * s, 0.0},
           Complex{s * s, 0.0}}};
}

NamedBasis basis(BasisLabel label) {
  switch (label) {
    case BasisLabel::HV:
      return {label, {Complex{1.0, 0.0}, {}}, {{}, Complex{1.0, 0.0}}};
    case BasisLabel::PM:
      return {label,
              {Complex{kInvSqrt2, 0.0}, Complex{kInvSqrt2, 0.0}},
              {Complex{kInvSqrt2, 0.0}, Complex{-kInvSqrt2, 0.0}}};
    case BasisLabel::LR:
      return {label,
              {Complex{kInvSqrt2, 0.0}, Complex{0.0, kInvSqrt2}},
              {Complex{kInvSqrt2, 0.0}, Complex{0.0, -kInvSqrt2}}};
  }
  throw std::invalid_argument("unknown basis label");
}

NamedBasis basis(std::string_view name) {
  if (name == "HV") return basis(BasisLabel::HV);
  if (name == "PM") return basis(BasisLabel::PM);
  if (name == "LR") return basis(BasisLabel::LR);
  throw std::invalid_argument("unknown basis label: " + std::string(name));
}

HybridKet apply_idler(const JonesMatrix& j, const HybridKet& k) {
  HybridKet out;
  out.normalized = k.normalized && is_unitary(j);
  for (Pol s : {Pol::H, Pol::V}) {
    for (Slit p : {Slit::Plus, Slit::Minus}) {
      const Complex h = k.at(Pol::H, s, p);
      const Complex v = k.at(Pol::V, s, p);
      out.at(Pol::H, s, p) = j.m[0] * h + j.m[1] * v;
      out.at(Pol::V, s, p) = j.m[2] * h + j.m[3] * v;
    }
  }
  return out;
}

HybridKet apply_signal(const JonesMatrix& j, const HybridKet& k) {
  return apply_signal_path_conditional(j, j, k);
}

HybridKet apply_signal_path_conditional(const JonesMatrix& on_plus,
                                        const JonesMatrix& on_minus,
                                        const HybridKet& k) {
  HybridKet out;
  out.normalized = k.normalized && is_unitary(on_plus) && is_unitary(on_minus);
  for (Pol i : {Pol::H, Pol::V}) {
    for (Slit p : {Slit::Plus, Slit::Minus}) {
      const JonesMatrix& j = (p == Slit::Plus) ? on_plus : on_minus;
      const Complex h = k.at(i, Pol::H, p);
      const Complex v = k.at(i, Pol::V, p);
      out.at(i, Pol::H, p) = j.m[0] * h + j.m[1] * v;
      out.at(i, Pol::V, p) = j.m[2] * h + j.m[3] * v;
    }
  }
  return out;
}

PolarizationDensity conjugate(const JonesMatrix& u, const PolarizationDensity& rho) {
  const JonesMatrix ud = u.adjoint();
  // u rho
  const JonesMatrix ur = u * JonesMatrix{rho.m};
  const JonesMatrix res = ur * ud;
  return density_from_matrix(res.m);
}

HybridKet slit_filtered_state() {
  HybridKet k;
  k.at(Pol::H, Pol::V, Slit::Plus) = Complex{0.5, 0.0};
  k.at(Pol::H, Pol::V, Slit::Minus) = Complex{0.5, 0.0};
  k.at(Pol::V, Pol::H, Slit::Plus) = Complex{0.0, 0.5};
  k.at(Pol::V, Pol::H, Slit::Minus) = Complex{0.0, 0.5};
  k.normalized = true;
  return k;
}

namespace {

// Slit quarter-wave matrices in the axially symmetric form
// (1/sqrt2) [[1, +-i], [+-i, 1]]; equal to qwp(-+45 deg) up to e^{-i pi/4}.
const JonesMatrix kSlitQwpPlus{{Complex{kInvSqrt2, 0.0}, Complex{0.0, kInvSqrt2},
                                Complex{0.0, kInvSqrt2}, Complex{kInvSqrt2, 0.0}}};
const JonesMatrix kSlitQwpMinus{{Complex{kInvSqrt2, 0.0}, Complex{0.0, -kInvSqrt2},
                                 Complex{0.0, -kInvSqrt2}, Complex{kInvSqrt2, 0.0}}};

}  // namespace

HybridKet birefringent_double_slit(const HybridKet& k) {
  return apply_signal_path_conditional(kSlitQwpPlus, kSlitQwpMinus, k);
}

HybridKet birefringent_double_slit_adjoint(const HybridKet& k) {
  return apply_signal_path_conditional(kSlitQwpPlus.adjoint(), kSlitQwpMinus.adjoint(), k);
}

HybridKet apply_idler_hwp_pi8(const HybridKet& k) {
  constexpr double kPi = 3.14159265358979323846;
  return apply_idler(hwp(-kPi / 8.0), k);
}

}  // namespace eraser
