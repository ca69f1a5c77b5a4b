#pragma once

// Complex-weighted Gaussian mixtures over M bosonic modes.
//
// Phase-space vectors are ordered (re b_0, im b_0, re b_1, im b_1, ...). The
// vacuum covariance is I/4 and every Gaussian is normalized,
//
//   W_V(x) = exp(-x^T V^{-1} x / 2) / sqrt(det(2 pi V)),
//
// so the integral of a term is its weight. Centers may be complex: the
// interference fringe of a cat state, cos(k x), is a conjugate pair of
// Gaussians displaced along the imaginary direction. All closed forms below
// are analytic in the center and stay valid for such terms.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "catgen/errors.hpp"

namespace catgen {

template <typename Real>
using RealVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
template <typename Real>
using RealMatrix = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using ComplexVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

/// Covariances with min eigenvalue below this fraction of the max are rejected.
inline constexpr double kCovarianceFloor = 1e-12;

namespace detail {

inline std::vector<Eigen::Index> quadrature_indices(const std::vector<int>& modes) {
  std::vector<Eigen::Index> idx;
  idx.reserve(2 * modes.size());
  for (int m : modes) {
    idx.push_back(2 * m);
    idx.push_back(2 * m + 1);
  }
  return idx;
}

inline std::vector<int> complement(int total, const std::vector<int>& modes) {
  std::vector<int> rest;
  for (int m = 0; m < total; ++m)
    if (std::find(modes.begin(), modes.end(), m) == modes.end()) rest.push_back(m);
  return rest;
}

inline void check_mode_list(int total, const std::vector<int>& modes, const char* what) {
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (modes[i] < 0 || modes[i] >= total)
      throw DimensionMismatch(std::string(what) + ": mode index out of range");
    for (std::size_t j = 0; j < i; ++j)
      if (modes[i] == modes[j]) throw DimensionMismatch(std::string(what) + ": repeated mode");
  }
}

}  // namespace detail

/// Cholesky factor of a validated covariance together with 1/sqrt(det(2 pi V)).
template <typename Real = double>
class CovarianceFactor {
 public:
  using Complex = std::complex<Real>;

  explicit CovarianceFactor(const RealMatrix<Real>& cov) {
    const Eigen::Index n = cov.rows();
    if (cov.cols() != n) throw DimensionMismatch("covariance must be square");
    if (n == 0) {
      norm_ = Real(1);
      return;
    }
    const Real scale = std::max(Real(1), cov.cwiseAbs().maxCoeff());
    if ((cov - cov.transpose()).cwiseAbs().maxCoeff() > Real(1e-12) * scale)
      throw DegenerateCovariance("covariance is not symmetric");
    Eigen::SelfAdjointEigenSolver<RealMatrix<Real>> eig(cov, Eigen::EigenvaluesOnly);
    const Real lo = eig.eigenvalues().minCoeff();
    const Real hi = eig.eigenvalues().maxCoeff();
    if (!(lo > Real(0)) || lo < Real(kCovarianceFloor) * hi)
      throw DegenerateCovariance("covariance is not positive definite");
    llt_.compute(cov);
    const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
    Real log_det = Real(0);
    for (Eigen::Index i = 0; i < n; ++i) log_det += std::log(two_pi * eig.eigenvalues()(i));
    norm_ = std::exp(Real(-0.5) * log_det);
  }

  Eigen::Index dim() const { return llt_.rows(); }
  Real normalization() const { return norm_; }

  RealMatrix<Real> solve(const RealMatrix<Real>& rhs) const {
    if (rhs.rows() == 0) return rhs;
    return llt_.solve(rhs);
  }

  ComplexVector<Real> solve(const ComplexVector<Real>& rhs) const {
    if (rhs.size() == 0) return rhs;
    RealVector<Real> re = llt_.solve(rhs.real().eval());
    RealVector<Real> im = llt_.solve(rhs.imag().eval());
    ComplexVector<Real> out(rhs.size());
    for (Eigen::Index i = 0; i < rhs.size(); ++i) out(i) = Complex(re(i), im(i));
    return out;
  }

  /// W_V(offset), analytically continued to complex offsets.
  Complex density(const ComplexVector<Real>& offset) const {
    if (offset.size() != dim()) throw DimensionMismatch("offset length does not match covariance");
    if (offset.size() == 0) return Complex(norm_);
    const Complex quad = offset.transpose() * solve(offset);
    return norm_ * std::exp(Real(-0.5) * quad);
  }

 private:
  Eigen::LLT<RealMatrix<Real>> llt_;
  Real norm_ = Real(1);
};

template <typename Real = double>
struct GaussianTerm {
  using Complex = std::complex<Real>;

  Complex weight{1};
  ComplexVector<Real> center;
  RealMatrix<Real> cov;

  int modes() const { return static_cast<int>(center.size() / 2); }
};

/// Finite complex-weighted sum of Gaussians sharing one mode count.
/// Immutable once built; every operation returns a new mixture.
template <typename Real = double>
class GaussianMixture {
 public:
  using Term = GaussianTerm<Real>;
  using Complex = std::complex<Real>;

  explicit GaussianMixture(int modes = 1) : modes_(modes) {
    if (modes < 0) throw DimensionMismatch("negative mode count");
  }

  GaussianMixture(int modes, std::vector<Term> terms) : modes_(modes), terms_(std::move(terms)) {
    if (modes < 0) throw DimensionMismatch("negative mode count");
    for (const Term& t : terms_) {
      if (t.center.size() != 2 * modes || t.cov.rows() != 2 * modes || t.cov.cols() != 2 * modes)
        throw DimensionMismatch("term dimension does not match mode count");
      CovarianceFactor<Real> check(t.cov);
    }
  }

  int modes() const { return modes_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& operator[](std::size_t i) const { return terms_[i]; }

 private:
  int modes_;
  std::vector<Term> terms_;
};

using GaussianTermd = GaussianTerm<double>;
using GaussianMixtured = GaussianMixture<double>;

/// Linear phase-space map x -> A x + shift.
template <typename Real = double>
struct AffineMap {
  RealMatrix<Real> matrix;
  RealVector<Real> shift;

  AffineMap() = default;
  explicit AffineMap(RealMatrix<Real> a)
      : AffineMap(std::move(a), RealVector<Real>()) {}
  AffineMap(RealMatrix<Real> a, RealVector<Real> b) : matrix(std::move(a)), shift(std::move(b)) {
    if (matrix.rows() != matrix.cols() || matrix.rows() % 2 != 0)
      throw DimensionMismatch("affine map must be square on phase space");
    if (shift.size() == 0) shift = RealVector<Real>::Zero(matrix.rows());
    if (shift.size() != matrix.rows()) throw DimensionMismatch("affine shift length");
    if (std::abs(matrix.determinant()) <= Real(1e-12))
      throw std::invalid_argument("affine map is not invertible");
  }

  int modes() const { return static_cast<int>(matrix.rows() / 2); }
};

/// Operator given by its Wigner function identity/pi^K + gaussian over K modes.
/// The identity part is kept symbolic so that tracing against it is an exact
/// marginalization rather than a Gaussian of infinite width.
template <typename Real = double>
struct OperatorKernel {
  std::complex<Real> identity{0};
  GaussianMixture<Real> gaussian{1};

  int modes() const { return gaussian.modes(); }
};

// ---------------------------------------------------------------------------
// Evaluation

template <typename Real>
std::complex<Real> gaussian_eval(const GaussianTerm<Real>& term,
                                 const std::type_identity_t<ComplexVector<Real>>& point) {
  if (point.size() != term.center.size())
    throw DimensionMismatch("evaluation point has wrong length");
  return term.weight * CovarianceFactor<Real>(term.cov).density(point - term.center);
}

template <typename Real>
std::complex<Real> evaluate(const GaussianMixture<Real>& mix, const std::type_identity_t<ComplexVector<Real>>& point) {
  std::complex<Real> acc{0};
  for (const auto& t : mix.terms()) acc += gaussian_eval(t, point);
  return acc;
}

// real points, any fixed or dynamic size
template <typename Real, typename Derived>
  requires(!Eigen::NumTraits<typename Derived::Scalar>::IsComplex)
std::complex<Real> evaluate(const GaussianMixture<Real>& mix, const Eigen::MatrixBase<Derived>& point) {
  return evaluate(mix, ComplexVector<Real>(point.template cast<std::complex<Real>>()));
}

/// Integral over all of phase space. Each Gaussian is normalized and the
/// integral of a shifted Gaussian does not depend on the (complex) shift.
template <typename Real>
std::complex<Real> total_integral(const GaussianMixture<Real>& mix) {
  std::complex<Real> acc{0};
  for (const auto& t : mix.terms()) acc += t.weight;
  return acc;
}

// ---------------------------------------------------------------------------
// Algebra

template <typename Real>
GaussianMixture<Real> scaled(const GaussianMixture<Real>& mix, std::complex<Real> factor) {
  auto terms = mix.terms();
  for (auto& t : terms) t.weight *= factor;
  return GaussianMixture<Real>(mix.modes(), std::move(terms));
}

template <typename Real>
GaussianMixture<Real> sum(const GaussianMixture<Real>& a, const GaussianMixture<Real>& b) {
  if (a.modes() != b.modes()) throw DimensionMismatch("sum of mixtures over different modes");
  auto terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return GaussianMixture<Real>(a.modes(), std::move(terms));
}

/// Divides by the total integral; the result integrates to one.
template <typename Real>
GaussianMixture<Real> normalized(const GaussianMixture<Real>& mix) {
  const auto total = total_integral(mix);
  if (std::abs(total) == Real(0)) throw Underflow("cannot normalize a mixture with zero integral");
  return scaled(mix, std::complex<Real>(1) / total);
}

template <typename Real>
GaussianMixture<Real> conjugated(const GaussianMixture<Real>& mix) {
  auto terms = mix.terms();
  for (auto& t : terms) {
    t.weight = std::conj(t.weight);
    t.center = t.center.conjugate();
  }
  return GaussianMixture<Real>(mix.modes(), std::move(terms));
}

/// Merges terms that share center and covariance (within tol) and drops
/// terms whose weight vanishes.
template <typename Real>
GaussianMixture<Real> merged(const GaussianMixture<Real>& mix, Real tol = Real(1e-14)) {
  std::vector<GaussianTerm<Real>> out;
  for (const auto& t : mix.terms()) {
    bool found = false;
    for (auto& o : out) {
      if ((o.center - t.center).cwiseAbs().maxCoeff() <= tol &&
          (o.cov - t.cov).cwiseAbs().maxCoeff() <= tol) {
        o.weight += t.weight;
        found = true;
        break;
      }
    }
    if (!found) out.push_back(t);
  }
  std::erase_if(out, [tol](const auto& t) { return std::abs(t.weight) <= tol; });
  return GaussianMixture<Real>(mix.modes(), std::move(out));
}

/// True when the mixture equals its own complex conjugate term by term, which
/// makes it real on real arguments.
template <typename Real>
bool is_conjugation_closed(const GaussianMixture<Real>& mix, Real tol = Real(1e-10)) {
  const auto& terms = mix.terms();
  std::vector<bool> used(terms.size(), false);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (used[i]) continue;
    const Real scale = std::max(Real(1), std::abs(terms[i].weight));
    bool matched = false;
    for (std::size_t j = i; j < terms.size(); ++j) {
      if (used[j] && j != i) continue;
      if (std::abs(terms[j].weight - std::conj(terms[i].weight)) > tol * scale) continue;
      if ((terms[j].center - terms[i].center.conjugate()).cwiseAbs().maxCoeff() > tol) continue;
      if ((terms[j].cov - terms[i].cov).cwiseAbs().maxCoeff() > tol) continue;
      used[i] = used[j] = true;
      matched = true;
      break;
    }
    if (!matched) return false;
  }
  return true;
}

/// Product state a (x) b; modes of b follow the modes of a.
template <typename Real>
GaussianMixture<Real> tensor(const GaussianMixture<Real>& a, const GaussianMixture<Real>& b) {
  const Eigen::Index na = 2 * a.modes();
  const Eigen::Index nb = 2 * b.modes();
  std::vector<GaussianTerm<Real>> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) {
      GaussianTerm<Real> t;
      t.weight = ta.weight * tb.weight;
      t.center.resize(na + nb);
      t.center << ta.center, tb.center;
      t.cov = RealMatrix<Real>::Zero(na + nb, na + nb);
      t.cov.topLeftCorner(na, na) = ta.cov;
      t.cov.bottomRightCorner(nb, nb) = tb.cov;
      out.push_back(std::move(t));
    }
  }
  return GaussianMixture<Real>(a.modes() + b.modes(), std::move(out));
}

/// Covariance -> A V A^T, center -> A mu + shift, weights unchanged. This is
/// the state transformed by the unitary whose Heisenberg action on the
/// quadratures is A, i.e. W'(x) = W(A^{-1}(x - shift)).
template <typename Real>
GaussianMixture<Real> apply_affine(const GaussianMixture<Real>& mix, const AffineMap<Real>& map) {
  if (map.modes() != mix.modes()) throw DimensionMismatch("affine map acts on a different mode count");
  const auto a = map.matrix.template cast<std::complex<Real>>();
  const auto shift = map.shift.template cast<std::complex<Real>>();
  auto terms = mix.terms();
  for (auto& t : terms) {
    t.center = a * t.center + shift;
    t.cov = map.matrix * t.cov * map.matrix.transpose();
    t.cov = Real(0.5) * (t.cov + t.cov.transpose()).eval();
  }
  return GaussianMixture<Real>(mix.modes(), std::move(terms));
}

/// Reorders modes: mode i of the result is mode order[i] of the input.
template <typename Real>
GaussianMixture<Real> permute_modes(const GaussianMixture<Real>& mix, const std::vector<int>& order) {
  if (static_cast<int>(order.size()) != mix.modes()) throw DimensionMismatch("permutation length");
  detail::check_mode_list(mix.modes(), order, "permute_modes");
  const auto idx = detail::quadrature_indices(order);
  auto terms = mix.terms();
  for (auto& t : terms) {
    t.center = t.center(idx).eval();
    t.cov = t.cov(idx, idx).eval();
  }
  return GaussianMixture<Real>(mix.modes(), std::move(terms));
}

/// Integrates out every mode not listed in keep. The result's modes follow
/// the order of keep.
template <typename Real>
GaussianMixture<Real> marginalize(const GaussianMixture<Real>& mix, const std::vector<int>& keep) {
  if (keep.empty()) throw std::invalid_argument("marginalize: keep set is empty");
  detail::check_mode_list(mix.modes(), keep, "marginalize");
  const auto idx = detail::quadrature_indices(keep);
  auto terms = mix.terms();
  for (auto& t : terms) {
    t.center = t.center(idx).eval();
    t.cov = t.cov(idx, idx).eval();
  }
  return GaussianMixture<Real>(static_cast<int>(keep.size()), std::move(terms));
}

/// Integral of a (over K and J) times b (over J) with respect to the modes J
/// of a; b's mode i is matched with a's mode over[i]. Returns a mixture over
/// the remaining modes K in their original order (zero modes when J is
/// everything, in which case the single weight is the full overlap).
///
/// Per term pair, with U = V_a + (0_K (+) V_b) and d = mu_b - mu_{a,J}:
///   weight = w_a w_b W_{U_JJ}(d)
///   center = mu_{a,K} + U_KJ U_JJ^{-1} d
///   cov    = U_KK - U_KJ U_JJ^{-1} U_JK   (Schur complement of U_JJ)
template <typename Real>
GaussianMixture<Real> integrate_product(const GaussianMixture<Real>& a,
                                        const GaussianMixture<Real>& b,
                                        const std::vector<int>& over) {
  if (static_cast<int>(over.size()) != b.modes())
    throw DimensionMismatch("integrate_product: second mixture must span the integrated modes");
  detail::check_mode_list(a.modes(), over, "integrate_product");
  const auto keep = detail::complement(a.modes(), over);
  const auto jdx = detail::quadrature_indices(over);
  const auto kdx = detail::quadrature_indices(keep);
  using Complex = std::complex<Real>;

  std::vector<GaussianTerm<Real>> out;
  out.reserve(a.size() * b.size());
  for (const auto& ta : a.terms()) {
    const RealMatrix<Real> a_jj = ta.cov(jdx, jdx);
    const RealMatrix<Real> a_kj = ta.cov(kdx, jdx);
    const RealMatrix<Real> a_kk = ta.cov(kdx, kdx);
    const ComplexVector<Real> mu_j = ta.center(jdx);
    const ComplexVector<Real> mu_k = ta.center(kdx);
    for (const auto& tb : b.terms()) {
      const CovarianceFactor<Real> u_jj(RealMatrix<Real>(a_jj + tb.cov));
      const ComplexVector<Real> d = tb.center - mu_j;
      GaussianTerm<Real> t;
      t.weight = ta.weight * tb.weight * u_jj.density(d);
      if (!keep.empty()) {
        const RealMatrix<Real> gain = u_jj.solve(RealMatrix<Real>(a_kj.transpose())).transpose();
        t.center = mu_k + gain.template cast<Complex>() * d;
        t.cov = a_kk - gain * a_kj.transpose();
        t.cov = Real(0.5) * (t.cov + t.cov.transpose()).eval();
      } else {
        t.center.resize(0);
        t.cov.resize(0, 0);
      }
      out.push_back(std::move(t));
    }
  }
  return GaussianMixture<Real>(static_cast<int>(keep.size()), std::move(out));
}

/// Integral of a * b over all of phase space.
template <typename Real>
std::complex<Real> overlap(const GaussianMixture<Real>& a, const GaussianMixture<Real>& b) {
  if (a.modes() != b.modes()) throw DimensionMismatch("overlap of mixtures over different modes");
  // integrate_product over every mode, without materializing the 0-mode terms
  using Complex = std::complex<Real>;
  Complex acc{0};
  if (a.modes() == 1) {
    // single mode: closed-form 2x2 inverse, this sits inside the optimizer loops
    const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
    for (const auto& ta : a.terms())
      for (const auto& tb : b.terms()) {
        const Eigen::Matrix<Real, 2, 2> u = ta.cov + tb.cov;
        const Real det = u(0, 0) * u(1, 1) - u(0, 1) * u(1, 0);
        if (!(det > Real(0)) || !(u(0, 0) > Real(0))) throw DegenerateCovariance("covariance is not positive definite");
        const Complex d0 = tb.center(0) - ta.center(0), d1 = tb.center(1) - ta.center(1);
        const Complex q = (u(1, 1) * d0 * d0 - (u(0, 1) + u(1, 0)) * d0 * d1 + u(0, 0) * d1 * d1) / det;
        acc += ta.weight * tb.weight * std::exp(Real(-0.5) * q) / (two_pi * std::sqrt(det));
      }
    return acc;
  }
  for (const auto& ta : a.terms())
    for (const auto& tb : b.terms())
      acc += ta.weight * tb.weight * CovarianceFactor<Real>(RealMatrix<Real>(ta.cov + tb.cov)).density(tb.center - ta.center);
  return acc;
}

/// Wigner function of Tr_J[(1_K (x) Pi_J) rho] for an operator Pi_J given by
/// its kernel:  identity * marginal + pi^|J| * integral(W_rho W_Pi, J).
template <typename Real>
GaussianMixture<Real> partial_trace_with(const GaussianMixture<Real>& mix,
                                         const OperatorKernel<Real>& kernel,
                                         const std::vector<int>& over) {
  if (static_cast<int>(over.size()) != kernel.modes())
    throw DimensionMismatch("kernel acts on a different number of modes");
  detail::check_mode_list(mix.modes(), over, "partial_trace_with");
  const auto keep = detail::complement(mix.modes(), over);
  const Real pi_factor = std::pow(std::numbers::pi_v<Real>, static_cast<Real>(over.size()));

  std::vector<GaussianTerm<Real>> terms;
  if (kernel.identity != std::complex<Real>(0)) {
    if (keep.empty()) {
      GaussianTerm<Real> t;
      t.weight = kernel.identity * total_integral(mix);
      t.center.resize(0);
      t.cov.resize(0, 0);
      terms.push_back(std::move(t));
    } else {
      const auto marginal = marginalize(mix, keep);
      for (auto t : marginal.terms()) {
        t.weight *= kernel.identity;
        terms.push_back(std::move(t));
      }
    }
  }
  if (!kernel.gaussian.empty()) {
    const auto conditioned = integrate_product(mix, kernel.gaussian, over);
    for (auto t : conditioned.terms()) {
      t.weight *= pi_factor;
      terms.push_back(std::move(t));
    }
  }
  return GaussianMixture<Real>(static_cast<int>(keep.size()), std::move(terms));
}

}  // namespace catgen
