#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "catgen/phase_space.hpp"
#include "catgen/states.hpp"
#include "catgen/symplectic.hpp"
#include "quadrature.hpp"
#include "random_mixture.hpp"

using namespace catgen;
using catgen::testing::random_hermitian_mixture;
using catgen::testing::random_real_term;
using catgen::testing::simpson_2d;
using Complex = std::complex<double>;

namespace {

const double kPi = std::numbers::pi;

GaussianMixtured tmsv_wigner(double s) {
  return apply_affine(tensor(vacuum_wigner(), vacuum_wigner()), two_mode_squeezer(s));
}

double max_term_diff(const GaussianMixtured& a, const GaussianMixtured& b) {
  REQUIRE(a.size() == b.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    d = std::max(d, std::abs(a[i].weight - b[i].weight));
    d = std::max(d, (a[i].center - b[i].center).cwiseAbs().maxCoeff());
    d = std::max(d, (a[i].cov - b[i].cov).cwiseAbs().maxCoeff());
  }
  return d;
}

}  // namespace

TEST_CASE("vacuum term evaluates to 2/pi at the origin") {
  const auto vac = vacuum_wigner();
  const auto& t = vac[0];
  CHECK(gaussian_eval(t, Eigen::VectorXcd::Zero(2)).real() == doctest::Approx(2.0 / kPi).epsilon(1e-14));
  Eigen::VectorXcd x(2);
  x << 1.0, 0.0;
  CHECK(gaussian_eval(t, x).real() == doctest::Approx(2.0 / kPi * std::exp(-2.0)).epsilon(1e-14));
}

TEST_CASE("vacuum term continues analytically to imaginary arguments") {
  const double y = 1.7 * std::exp(-0.33);
  Eigen::VectorXcd x(2);
  x << 0.0, Complex(0.0, y);
  const Complex v = gaussian_eval(vacuum_wigner()[0], x);
  CHECK(v.real() == doctest::Approx(2.0 / kPi * std::exp(2.0 * y * y)).epsilon(1e-13));
  CHECK(std::abs(v.imag()) < 1e-12);
}

TEST_CASE("affine maps act on covariances") {
  const double s = 0.4;
  const auto sq = apply_affine(vacuum_wigner(), single_mode_squeezer(s));
  CHECK(sq[0].cov(0, 0) == doctest::Approx(std::exp(-2 * s) / 4));
  CHECK(sq[0].cov(1, 1) == doctest::Approx(std::exp(2 * s) / 4));

  const auto two = tensor(vacuum_wigner(), vacuum_wigner());
  for (double t : {0.0, 0.3, 0.8, 1.0}) {
    const auto out = apply_affine(two, beam_splitter(t));
    CHECK((out[0].cov - 0.25 * Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-15);
  }

  const auto tm = tmsv_wigner(s);
  Eigen::MatrixXd expect = Eigen::MatrixXd::Identity(4, 4) * std::cosh(2 * s) / 4;
  expect(0, 2) = expect(2, 0) = std::sinh(2 * s) / 4;
  expect(1, 3) = expect(3, 1) = -std::sinh(2 * s) / 4;
  CHECK((tm[0].cov - expect).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("marginals") {
  const double s = 0.3;
  const auto m = marginalize(tmsv_wigner(s), {1});
  CHECK((m[0].cov - Eigen::MatrixXd::Identity(2, 2) * std::cosh(2 * s) / 4).cwiseAbs().maxCoeff() < 1e-15);

  const auto prod = tensor(coherent_wigner({0.5, -0.2}), squeezed_vacuum_wigner(0.3));
  CHECK(max_term_diff(marginalize(prod, {1}), squeezed_vacuum_wigner(0.3)) < 1e-15);
  CHECK(max_term_diff(marginalize(prod, {0, 1}), prod) == 0.0);
  CHECK_THROWS_AS(marginalize(prod, {}), std::invalid_argument);
}

TEST_CASE("product integrals") {
  // constant 1 is the zero-mode identity: integrating against the empty set
  CHECK(total_integral(vacuum_wigner()).real() == doctest::Approx(1.0));
  CHECK((kPi * overlap(vacuum_wigner(), vacuum_wigner())).real() == doctest::Approx(1.0).epsilon(1e-14));

  const double s = 0.2;
  const auto subtracted = integrate_product(tmsv_wigner(s), vacuum_wigner(), {1});
  CHECK((kPi * total_integral(subtracted)).real() == doctest::Approx(1.0 / std::pow(std::cosh(s), 2)).epsilon(1e-13));
}

TEST_CASE("total integral of a signed mixture") {
  const double s = 0.1;
  GaussianTermd a = vacuum_wigner()[0];
  GaussianTermd b = a;
  b.weight = -1.0 / std::pow(std::cosh(s), 2);
  const GaussianMixtured mix(1, {a, b});
  CHECK(total_integral(mix).real() == doctest::Approx(std::pow(std::tanh(s), 2)).epsilon(1e-13));
  CHECK(total_integral(mix).real() == doctest::Approx(0.009967).epsilon(1e-4));
}

TEST_CASE("cat fringe integrates to one with the lobes") {
  const auto cat = scs_wigner({1.1, 0.0, Parity::odd});
  CHECK(std::abs(total_integral(cat) - 1.0) < 1e-12);
  const double q = simpson_2d([&](double x, double y) { return evaluate(cat, Eigen::Vector2d(x, y)).real(); }, 6.0, 601);
  CHECK(q == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("degenerate covariances are rejected") {
  GaussianTermd t = vacuum_wigner()[0];
  t.cov(1, 1) = 0.0;
  CHECK_THROWS_AS(GaussianMixtured(1, {t}), DegenerateCovariance);
  t.cov(1, 1) = 0.25;
  t.cov(0, 1) = 0.1;
  CHECK_THROWS_AS(GaussianMixtured(1, {t}), DegenerateCovariance);
  CHECK_THROWS_AS(AffineMap<double>(Eigen::MatrixXd::Zero(2, 2)), std::invalid_argument);
}

TEST_CASE("mode bookkeeping") {
  const auto a = coherent_wigner({1.0, 0.0});
  const auto b = coherent_wigner({0.0, 2.0});
  const auto ab = tensor(a, b);
  const auto ba = permute_modes(ab, {1, 0});
  CHECK(ba[0].center(0).real() == 0.0);
  CHECK(ba[0].center(1).real() == 2.0);
  CHECK(ba[0].center(2).real() == 1.0);
  CHECK_THROWS_AS(permute_modes(ab, {0, 0}), DimensionMismatch);
  CHECK_THROWS_AS(overlap(a, ab), DimensionMismatch);
  CHECK_THROWS_AS(integrate_product(ab, ab, {0}), DimensionMismatch);
}

TEST_CASE("property: Fubini for integrate_product") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const int m = 2 + trial % 2;
    const auto a = random_hermitian_mixture(rng, m, 2);
    const auto b = random_hermitian_mixture(rng, 1, 1);
    const int j = trial % m;
    const Complex direct = total_integral(integrate_product(a, b, {j}));
    const Complex swapped = overlap(marginalize(a, {j}), b);
    CHECK(std::abs(direct - swapped) <= 1e-10 * std::max(1.0, std::abs(direct)));
  }
}

TEST_CASE("property: marginalize commutes with block-diagonal maps") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mix = random_hermitian_mixture(rng, 2, 2);
    const AffineMap<double> local(catgen::testing::random_covariance(rng, 2));
    const auto lhs = marginalize(apply_affine(mix, embed(local, 2, {0})), {0});
    const auto rhs = apply_affine(marginalize(mix, {0}), local);
    CHECK(max_term_diff(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("property: closed-form overlap matches quadrature") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 6; ++trial) {
    const auto a = random_real_term(rng, 1);
    const auto b = random_real_term(rng, 1);
    const double exact = overlap(a, b).real();
    const auto& ta = a[0];
    const double half = 8.0 * std::sqrt(ta.cov.eigenvalues().real().maxCoeff());
    const double quad = simpson_2d(
        [&](double x, double y) {
          const Eigen::Vector2d p(x, y);
          return (evaluate(a, p) * evaluate(b, p)).real();
        },
        half, 401, ta.center(0).real(), ta.center(1).real());
    CHECK(quad == doctest::Approx(exact).epsilon(1e-7));
  }
}

TEST_CASE("property: conditional Gaussian matches quadrature over the traced mode") {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 4; ++trial) {
    const auto a = random_real_term(rng, 2);
    const auto b = random_real_term(rng, 1);
    const auto cond = integrate_product(a, b, {1});
    const Eigen::Vector2d xk(0.2 * trial - 0.3, 0.1);
    const auto& tb = b[0];
    const double half = 8.0 * std::sqrt(tb.cov.eigenvalues().real().maxCoeff());
    const double quad = simpson_2d(
        [&](double x, double y) {
          Eigen::Vector4d full(xk(0), xk(1), x, y);
          return (evaluate(a, Eigen::VectorXd(full)) * evaluate(b, Eigen::Vector2d(x, y))).real();
        },
        half, 401, tb.center(0).real(), tb.center(1).real());
    CHECK(quad == doctest::Approx(evaluate(cond, Eigen::VectorXd(xk)).real()).epsilon(1e-7));
  }
}

TEST_CASE("property: conjugation closure survives every operation") {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    const auto mix = random_hermitian_mixture(rng, 3, 2);
    CHECK(is_conjugation_closed(mix));
    const auto moved = apply_affine(mix, embed(beam_splitter(0.6), 3, {0, 2}));
    CHECK(is_conjugation_closed(moved));
    const auto cond = partial_trace_with(moved, click_povm(0.7).kernel, {1});
    CHECK(is_conjugation_closed(cond));
    const Eigen::Vector4d x(0.1, -0.4, 0.3, 0.2);
    const Complex v = evaluate(cond, Eigen::VectorXd(x));
    CHECK(std::abs(v.imag()) <= 1e-10 * std::max(1.0, std::abs(v)));
  }
}
