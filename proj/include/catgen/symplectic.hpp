#pragma once

// Quadrature maps for the Gaussian unitaries of the scheme, written as the
// Heisenberg action on (re b, im b) per mode.

#include <cmath>
#include <vector>

#include "catgen/phase_space.hpp"

namespace catgen {

/// diag(e^{-s}, e^{s}): s > 0 squeezes along the real axis.
template <typename Real = double>
AffineMap<Real> single_mode_squeezer(Real s) {
  RealMatrix<Real> m = RealMatrix<Real>::Zero(2, 2);
  m(0, 0) = std::exp(-s);
  m(1, 1) = std::exp(s);
  return AffineMap<Real>(m);
}

/// cosh(s) I(x)I + sinh(s) X(x)Z on two modes, i.e. b_1 -> b_1 cosh s + b_2^* sinh s.
template <typename Real = double>
AffineMap<Real> two_mode_squeezer(Real s) {
  RealMatrix<Real> m = std::cosh(s) * RealMatrix<Real>::Identity(4, 4);
  const Real sh = std::sinh(s);
  m(0, 2) = sh;
  m(1, 3) = -sh;
  m(2, 0) = sh;
  m(3, 1) = -sh;
  return AffineMap<Real>(m);
}

/// [[t, -r], [r, t]] (x) I with r = sqrt(1 - t^2).
template <typename Real = double>
AffineMap<Real> beam_splitter(Real t) {
  if (!(t >= Real(-1) && t <= Real(1))) throw std::invalid_argument("beam splitter transmissivity out of range");
  const Real r = std::sqrt(Real(1) - t * t);
  RealMatrix<Real> m = RealMatrix<Real>::Zero(4, 4);
  m(0, 0) = m(1, 1) = t;
  m(2, 2) = m(3, 3) = t;
  m(0, 2) = m(1, 3) = -r;
  m(2, 0) = m(3, 1) = r;
  return AffineMap<Real>(m);
}

/// Rotation of the phase-space plane of one mode by theta.
template <typename Real = double>
AffineMap<Real> phase_rotation(Real theta) {
  RealMatrix<Real> m(2, 2);
  m << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return AffineMap<Real>(m);
}

/// Lifts a map on the listed modes to `total` modes, identity elsewhere.
template <typename Real>
AffineMap<Real> embed(const AffineMap<Real>& local, int total, const std::vector<int>& modes) {
  if (static_cast<int>(modes.size()) != local.modes()) throw DimensionMismatch("embed: mode list length");
  detail::check_mode_list(total, modes, "embed");
  const auto idx = detail::quadrature_indices(modes);
  RealMatrix<Real> m = RealMatrix<Real>::Identity(2 * total, 2 * total);
  RealVector<Real> shift = RealVector<Real>::Zero(2 * total);
  m(idx, idx) = local.matrix;
  shift(idx) = local.shift;
  return AffineMap<Real>(m, shift);
}

}  // namespace catgen
