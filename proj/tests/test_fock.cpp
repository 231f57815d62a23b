#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "homsim/fock.hpp"
#include "oracles.hpp"

using namespace homsim;

namespace {

constexpr double kPi = std::numbers::pi;

// Exchange overlap sum_ij w_i w_j psi_ij conj(psi_ji), evaluated naively.
std::complex<double> exchange_overlap(const TwoPhotonState& state) {
  std::complex<double> s = 0.0;
  const Eigen::Index n = state.grid.points.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      s += state.grid.weights[i] * state.grid.weights[j] *
           state.amplitude(i, j) * std::conj(state.amplitude(j, i));
    }
  }
  return s;
}

}  // namespace

TEST_CASE("beam splitter matrix is the pi/2-reflection unitary") {
  const Eigen::Matrix2cd bs = beam_splitter_matrix();
  const Eigen::Matrix2cd identity = Eigen::Matrix2cd::Identity();
  CHECK((bs * bs.adjoint() - identity).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(bs(0, 0).real() == doctest::Approx(1.0 / std::numbers::sqrt2).epsilon(1e-15));
  // reflection leads transmission by pi/2
  CHECK(std::arg(bs(0, 1) / bs(0, 0)) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
  CHECK(std::arg(bs(1, 0) / bs(1, 1)) == doctest::Approx(kPi / 2.0).epsilon(1e-15));
}

TEST_CASE("uniform grid carries trapezoid weights") {
  const FrequencyGrid grid = uniform_grid(6.0, 129);
  CHECK(grid.points.size() == 129);
  CHECK(grid.points[0] == -6.0);
  CHECK(grid.points[128] == 6.0);
  CHECK(grid.weights.sum() == doctest::Approx(12.0).epsilon(1e-12));
  for (Eigen::Index i = 1; i < grid.points.size(); ++i) {
    CHECK(grid.points[i] > grid.points[i - 1]);
  }
  CHECK_THROWS_AS(uniform_grid(6.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(uniform_grid(-1.0, 65), std::invalid_argument);
}

TEST_CASE("product state is normalized and exchange-bounded") {
  const FrequencyGrid grid = uniform_grid(6.0, 129);
  const TwoPhotonState state = make_product_state(grid, 1.0, 0.0);
  CHECK(norm_error(state) < 1e-10);

  const std::complex<double> overlap = exchange_overlap(state);
  CHECK(std::abs(overlap.imag()) < 1e-12);
  CHECK(overlap.real() <= 1.0 + 1e-12);
  // degenerate case: psi is exchange-symmetric, overlap saturates
  CHECK(overlap.real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("split product state keeps a real sub-unit overlap") {
  const FrequencyGrid grid = uniform_grid(9.0, 193);
  const TwoPhotonState state = make_product_state(grid, 1.0, 3.0);
  CHECK(norm_error(state) < 1e-10);
  const std::complex<double> overlap = exchange_overlap(state);
  CHECK(std::abs(overlap.imag()) < 1e-12);
  CHECK(overlap.real() < 1.0);
  CHECK(overlap.real() == doctest::Approx(std::exp(-9.0)).epsilon(1e-8));
}

TEST_CASE("too narrow a grid is rejected") {
  CHECK_THROWS_AS(make_product_state(uniform_grid(2.0, 65), 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_product_state(uniform_grid(5.0, 129), 1.0, 3.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_anticorrelated_state(uniform_grid(2.0, 65), 0.5, 2.0),
                  std::invalid_argument);
}

TEST_CASE("entangled state construction") {
  const FrequencyGrid grid = uniform_grid(6.0, 129);

  // psi_rel = 0 at zero split collapses onto the product state
  const TwoPhotonState product = make_product_state(grid, 1.0, 0.0);
  const TwoPhotonState entangled = make_entangled_state(grid, 1.0, 0.0, 0.0);
  CHECK((entangled.amplitude - product.amplitude).cwiseAbs().maxCoeff() == 0.0);

  const FrequencyGrid wide = uniform_grid(9.0, 193);
  const TwoPhotonState split = make_entangled_state(wide, 1.0, 3.0, 0.0);
  CHECK(norm_error(split) < 1e-10);

  // antisymmetrizing an exchange-symmetric state gives the zero vector
  CHECK_THROWS_AS(make_entangled_state(grid, 1.0, 0.0, kPi), std::invalid_argument);
}

TEST_CASE("zero-delay dip and distinguishable plateau") {
  const FrequencyGrid grid = uniform_grid(6.0, 129);
  const TwoPhotonState state = make_product_state(grid, 1.0, 0.0);
  CHECK(coincidence_probability(state, 0.0) <= 1e-10);
  CHECK(std::abs(coincidence_probability(state, 10.0) - 0.5) < 1e-6);
  CHECK(std::abs(coincidence_probability(state, 14.0) - 0.5) < 1e-6);
}

TEST_CASE("coincidence is even in the delay for real symmetric spectra") {
  const FrequencyGrid grid = uniform_grid(6.0, 129);
  const TwoPhotonState state = make_anticorrelated_state(grid, 0.5, 2.0);
  for (double tau : {0.3, 0.9, 1.7, 3.1}) {
    CHECK(std::abs(coincidence_probability(state, tau) -
                   coincidence_probability(state, -tau)) < 1e-12);
  }
}

TEST_CASE("probabilities stay in the unit interval") {
  const FrequencyGrid grid = uniform_grid(6.0, 129);
  const TwoPhotonState symmetric = make_product_state(grid, 1.0, 0.0);
  const TwoPhotonState anti = make_entangled_state(uniform_grid(9.0, 193), 1.0, 2.0, kPi);
  for (int i = 0; i <= 40; ++i) {
    const double tau = 0.3 * i;
    for (const TwoPhotonState* state : {&symmetric, &anti}) {
      const double p = coincidence_probability(*state, tau);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
}

TEST_CASE("partial relative phase gives a partial dip") {
  // J(0) = (S + cos psi)/(1 + S cos psi) with S the exchange overlap;
  // at psi = pi/2 the dip bottoms out at (1 - S)/2.
  const double split = 2.0;
  const TwoPhotonState state =
      make_entangled_state(uniform_grid(8.0, 193), 1.0, split, kPi / 2.0);
  CHECK(norm_error(state) < 1e-10);
  const double expected = 0.5 * (1.0 - std::exp(-split * split));
  CHECK(coincidence_probability(state, 0.0) ==
        doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("exchange-antisymmetric states antibunch") {
  // swap eigenvalue -1 flips the interference term: P(0) = 1
  const TwoPhotonState anti = make_entangled_state(uniform_grid(9.0, 193), 1.0, 2.0, kPi);
  CHECK(norm_error(anti) < 1e-10);
  CHECK(coincidence_probability(anti, 0.0) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("unnormalized states violate the contract") {
  const FrequencyGrid grid = uniform_grid(6.0, 129);
  TwoPhotonState state = make_product_state(grid, 1.0, 0.0);
  state.amplitude *= 1.1;
  CHECK_THROWS_AS(coincidence_probability(state, 0.5), std::invalid_argument);
}

TEST_CASE("amplitude-level oracle agrees with the exchange-overlap form") {
  // Library path: closed exchange-overlap contraction on its own grid.
  // Oracle path: explicit beam-splitter output amplitudes on an
  // independent grid at 4x resolution.
  const FrequencyGrid grid = uniform_grid(6.0, 97);
  const TwoPhotonState state = make_product_state(grid, 1.0, 0.0);

  const FrequencyGrid fine = uniform_grid(6.0, 385);
  const Eigen::MatrixXcd psi_oracle =
      oracle::product_psi_brute(fine.points, fine.weights, 1.0, 0.0);

  for (double tau : {0.0, 0.5, 1.0, 2.0, 4.0}) {
    const double lib = coincidence_probability(state, tau);
    const double brute =
        oracle::coincidence_brute(fine.points, fine.weights, psi_oracle, tau);
    CHECK(std::abs(lib - brute) < 1e-6);
  }
}

TEST_CASE("anticorrelated curve follows the exchange-width Gaussian") {
  // For |psi|^2 Gaussian in the difference frequency with std sigma_v the
  // curve is 1/2 (1 - exp(-sigma_v^2 tau^2 / 2)), for any sum width.
  const double sum_sigma = 0.5;
  const double diff_sigma = 2.0;
  const FrequencyGrid grid = uniform_grid(6.2, 129);
  const TwoPhotonState state = make_anticorrelated_state(grid, sum_sigma, diff_sigma);
  CHECK(norm_error(state) < 1e-10);

  // oracle runs at 4x the library resolution
  const FrequencyGrid fine = uniform_grid(6.2, 513);
  const Eigen::MatrixXcd psi_oracle = oracle::anticorrelated_psi_brute(
      fine.points, fine.weights, sum_sigma, diff_sigma);

  for (int i = 0; i <= 16; ++i) {
    const double tau = 0.25 * i;
    const double lib = coincidence_probability(state, tau);
    const double closed =
        0.5 * (1.0 - std::exp(-0.5 * diff_sigma * diff_sigma * tau * tau));
    const double brute =
        oracle::coincidence_brute(fine.points, fine.weights, psi_oracle, tau);
    CHECK(std::abs(lib - closed) < 1e-6);
    CHECK(std::abs(lib - brute) < 1e-6);
  }
}

TEST_CASE("grid refinement leaves the curve in place") {
  const FrequencyGrid coarse = uniform_grid(6.2, 129);
  const FrequencyGrid fine = uniform_grid(6.2, 257);
  const TwoPhotonState a = make_anticorrelated_state(coarse, 0.5, 2.0);
  const TwoPhotonState b = make_anticorrelated_state(fine, 0.5, 2.0);
  double worst = 0.0;
  for (int i = 0; i <= 32; ++i) {
    const double tau = 0.125 * i;
    worst = std::max(worst, std::abs(coincidence_probability(a, tau) -
                                     coincidence_probability(b, tau)));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("witness: identical inputs at zero split") {
  const FrequencyGrid grid = uniform_grid(6.0, 129);
  const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(33, 0.0, 10.0);
  const WitnessResult result = witness_compare(grid, 1.0, 0.0, 0.0, tau);
  CHECK(result.max_curve_gap < 1e-9);
  CHECK(result.dip_depth_product == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(result.dip_depth_entangled == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(std::abs(result.product_curve[32] - 0.5) < 1e-6);
  CHECK(std::abs(result.entangled_curve[32] - 0.5) < 1e-6);
}

TEST_CASE("witness: split inputs separate product from entangled") {
  const FrequencyGrid grid = uniform_grid(9.0, 193);
  const Eigen::ArrayXd tau = Eigen::ArrayXd::LinSpaced(33, 0.0, 10.0);
  const WitnessResult result = witness_compare(grid, 1.0, 3.0, 0.0, tau);
  // the separable input barely dips: depth equals the exchange overlap
  CHECK(result.dip_depth_product < 1.0);
  CHECK(result.dip_depth_product == doctest::Approx(std::exp(-9.0)).epsilon(1e-4));
  // the symmetrized input always reaches the full dip
  CHECK(result.dip_depth_entangled == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(result.max_curve_gap > 0.4);
}
