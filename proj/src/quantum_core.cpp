#include "eraser/quantum_core.hpp"

#include <cmath>
#include <stdexcept>

namespace eraser {

namespace {

void ensure_finite(const Complex& c) {
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw std::invalid_argument("non-finite amplitude");
  }
}

template <typename Ket>
void ensure_finite_ket(const Ket& k) {
  for (const auto& c : k.amp) ensure_finite(c);
}

}  // namespace

double norm_sq(const PolarizationKet& k) {
  return std::norm(k.h) + std::norm(k.v);
}

bool is_normalized(const PolarizationKet& k, double tol) {
  return std::abs(norm_sq(k) - 1.0) <= tol;
}

PolarizationKet normalize(const PolarizationKet& k) {
  ensure_finite(k.h);
  ensure_finite(k.v);
  const double n2 = norm_sq(k);
  if (n2 <= 0.0) throw std::invalid_argument("null state");
  const double inv = 1.0 / std::sqrt(n2);
  return {k.h * inv, k.v * inv};
}

Complex inner(const PolarizationKet& a, const PolarizationKet& b) {
  return std::conj(a.h) * b.h + std::conj(a.v) * b.v;
}

double norm_sq(const HybridKet& k) {
  double n = 0.0;
  for (const auto& c : k.amp) n += std::norm(c);
  return n;
}

bool is_normalized(const HybridKet& k, double tol) {
  return std::abs(norm_sq(k) - 1.0) <= tol;
}

HybridKet normalize(const HybridKet& k) {
  ensure_finite_ket(k);
  const double n2 = norm_sq(k);
  if (n2 <= 0.0) throw std::invalid_argument("null state");
  HybridKet out = k;
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : out.amp) c *= inv;
  out.normalized = true;
  return out;
}

Complex inner(const HybridKet& a, const HybridKet& b) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

double fidelity(const HybridKet& a, const HybridKet& b) {
  return std::abs(inner(a, b));
}

double norm_sq(const SignalKet& k) {
  double n = 0.0;
  for (const auto& c : k.amp) n += std::norm(c);
  return n;
}

SignalKet normalize(const SignalKet& k) {
  ensure_finite_ket(k);
  const double n2 = norm_sq(k);
  if (n2 <= 0.0) throw std::invalid_argument("null state");
  SignalKet out = k;
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : out.amp) c *= inv;
  out.normalized = true;
  return out;
}

Complex inner(const SignalKet& a, const SignalKet& b) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.amp.size(); ++i) s += std::conj(a.amp[i]) * b.amp[i];
  return s;
}

double fidelity(const SignalKet& a, const SignalKet& b) {
  return std::abs(inner(a, b));
}

IdlerProjection project_idler(const HybridKet& k, const PolarizationKet& onto) {
  if (!is_normalized(k)) throw std::invalid_argument("project_idler: unnormalized ket");
  if (!is_normalized(onto)) throw std::invalid_argument("project_idler: unnormalized projector");

  IdlerProjection result;
  const Complex wh = std::conj(onto.h);
  const Complex wv = std::conj(onto.v);
  for (Pol s : {Pol::H, Pol::V}) {
    for (Slit p : {Slit::Plus, Slit::Minus}) {
      result.conditional.at(s, p) = wh * k.at(Pol::H, s, p) + wv * k.at(Pol::V, s, p);
    }
  }
  result.probability = norm_sq(result.conditional);
  if (result.probability < kOrthogonalTol) {
    result.orthogonal = true;
    result.conditional = SignalKet{};
    return result;
  }
  result.conditional = normalize(result.conditional);
  return result;
}

PolarizationDensity density_from_matrix(const std::array<Complex, 4>& m) {
  for (const auto& c : m) ensure_finite(c);
  if (std::abs(m[0].imag()) > kNormTol || std::abs(m[3].imag()) > kNormTol ||
      std::abs(m[1] - std::conj(m[2])) > kNormTol) {
    throw std::invalid_argument("density matrix is not Hermitian");
  }
  const double tr = m[0].real() + m[3].real();
  if (tr <= 0.0) throw std::invalid_argument("density matrix has non-positive trace");

  PolarizationDensity rho;
  for (std::size_t i = 0; i < 4; ++i) rho.m[i] = m[i] / tr;
  // Hermitize exactly so downstream arithmetic sees conjugate off-diagonals.
  rho.m[0] = Complex{rho.m[0].real(), 0.0};
  rho.m[3] = Complex{rho.m[3].real(), 0.0};
  rho.m[2] = std::conj(rho.m[1]);

  // Eigenvalues of a trace-1 Hermitian 2x2: (1 +- sqrt(1 - 4 det)) / 2.
  const double det = rho.m[0].real() * rho.m[3].real() - std::norm(rho.m[1]);
  const double disc = std::sqrt(std::max(0.0, 1.0 - 4.0 * det));
  const double lambda_min = 0.5 * (1.0 - disc);
  if (lambda_min < kPsdFloor) {
    throw std::invalid_argument("density matrix is not positive semidefinite");
  }
  return rho;
}

PolarizationDensity density_from_ket(const PolarizationKet& k) {
  if (!is_normalized(k)) throw std::invalid_argument("density_from_ket: unnormalized ket");
  return density_from_matrix({k.h * std::conj(k.h), k.h * std::conj(k.v),
                              k.v * std::conj(k.h), k.v * std::conj(k.v)});
}

double purity(const PolarizationDensity& rho) {
  // Tr(rho^2) = p^2 + q^2 + 2|r|^2 for Hermitian [[p, r], [r*, q]].
  return rho.m[0].real() * rho.m[0].real() + rho.m[3].real() * rho.m[3].real() +
         2.0 * std::norm(rho.m[1]);
}

}  // namespace eraser
