#include "homsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace homsim {
namespace {

using Complex = std::complex<double>;

double quad_norm_sq(const FrequencyGrid& grid, const Eigen::MatrixXcd& amplitude) {
  const Eigen::ArrayXXd density = amplitude.array().abs2();
  return (grid.weights.matrix() * grid.weights.matrix().transpose())
      .array()
      .cwiseProduct(density)
      .sum();
}

// Two-sided Gaussian tail mass outside [-half_span, half_span] for a
// marginal N(center, sigma^2).
double tail_mass(double half_span, double center, double sigma) {
  const double sqrt2 = std::numbers::sqrt2;
  return 0.5 * std::erfc((half_span - center) / (sigma * sqrt2)) +
         0.5 * std::erfc((half_span + center) / (sigma * sqrt2));
}

void require_covered(const FrequencyGrid& grid, double center, double sigma,
                     const char* what) {
  const double half_span = std::max(std::abs(grid.points[0]),
                                    std::abs(grid.points[grid.points.size() - 1]));
  const double mass = tail_mass(half_span, center, sigma);
  if (mass > 1e-6) {
    throw std::invalid_argument(std::string("grid too narrow for ") + what +
                                ": tail mass " + std::to_string(mass) +
                                " exceeds 1e-6");
  }
}

void validate_grid(const FrequencyGrid& grid) {
  const Eigen::Index n = grid.points.size();
  if (n < 3) throw std::invalid_argument("frequency grid needs >= 3 points");
  if (grid.weights.size() != n) {
    throw std::invalid_argument("frequency grid: points/weights size mismatch");
  }
  for (Eigen::Index i = 1; i < n; ++i) {
    if (!(grid.points[i] > grid.points[i - 1])) {
      throw std::invalid_argument("frequency grid must be strictly increasing");
    }
  }
}

TwoPhotonState normalized_state(const FrequencyGrid& grid, Eigen::MatrixXcd amplitude,
                                StateKind kind, double psi_rel) {
  const double nsq = quad_norm_sq(grid, amplitude);
  if (!(nsq > 1e-12)) {
    throw std::invalid_argument(
        "degenerate state: superposition norm vanishes (norm^2 = " +
        std::to_string(nsq) + ")");
  }
  amplitude /= std::sqrt(nsq);
  return TwoPhotonState{grid, std::move(amplitude), kind, psi_rel};
}

}  // namespace

FrequencyGrid uniform_grid(double half_span, Eigen::Index n_points) {
  if (!(half_span > 0.0)) throw std::invalid_argument("uniform_grid: half_span must be > 0");
  if (n_points < 3) throw std::invalid_argument("uniform_grid: need >= 3 points");
  FrequencyGrid grid;
  grid.points = Eigen::ArrayXd::LinSpaced(n_points, -half_span, half_span);
  const double h = 2.0 * half_span / static_cast<double>(n_points - 1);
  grid.weights = Eigen::ArrayXd::Constant(n_points, h);
  grid.weights[0] = 0.5 * h;
  grid.weights[n_points - 1] = 0.5 * h;
  return grid;
}

Eigen::Matrix2cd beam_splitter_matrix() {
  const double r = 1.0 / std::numbers::sqrt2;
  Eigen::Matrix2cd bs;
  bs << Complex(r, 0.0), Complex(0.0, r), Complex(0.0, r), Complex(r, 0.0);
  return bs;
}

double norm_error(const TwoPhotonState& state) {
  return std::abs(quad_norm_sq(state.grid, state.amplitude) - 1.0);
}

TwoPhotonState make_product_state(const FrequencyGrid& grid, double sigma,
                                  double center_split) {
  validate_grid(grid);
  if (!(sigma > 0.0)) throw std::invalid_argument("make_product_state: sigma must be > 0");
  require_covered(grid, center_split, sigma, "signal photon");
  require_covered(grid, -center_split, sigma, "idler photon");

  const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
  const Eigen::ArrayXd f_sig =
      norm * (-((grid.points - center_split) / (2.0 * sigma)).square()).exp();
  const Eigen::ArrayXd f_idl =
      norm * (-((grid.points + center_split) / (2.0 * sigma)).square()).exp();

  Eigen::MatrixXcd amplitude =
      (f_sig.matrix() * f_idl.matrix().transpose()).cast<Complex>();
  return normalized_state(grid, std::move(amplitude), StateKind::Product, 0.0);
}

TwoPhotonState make_anticorrelated_state(const FrequencyGrid& grid,
                                         double sum_sigma, double diff_sigma) {
  validate_grid(grid);
  if (!(sum_sigma > 0.0) || !(diff_sigma > 0.0)) {
    throw std::invalid_argument("make_anticorrelated_state: widths must be > 0");
  }
  // Marginal std of each photon is sqrt(sum^2 + diff^2)/2.
  const double marginal =
      0.5 * std::sqrt(sum_sigma * sum_sigma + diff_sigma * diff_sigma);
  require_covered(grid, 0.0, marginal, "anticorrelated pair");

  const Eigen::Index n = grid.points.size();
  Eigen::MatrixXcd amplitude(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const double u = grid.points[i] + grid.points[j];
      const double v = grid.points[i] - grid.points[j];
      amplitude(i, j) = std::exp(-u * u / (4.0 * sum_sigma * sum_sigma) -
                                 v * v / (4.0 * diff_sigma * diff_sigma));
    }
  }
  return normalized_state(grid, std::move(amplitude), StateKind::Product, 0.0);
}

TwoPhotonState make_entangled_state(const FrequencyGrid& grid, double sigma,
                                    double center_split, double psi_rel) {
  validate_grid(grid);
  if (!(sigma > 0.0)) throw std::invalid_argument("make_entangled_state: sigma must be > 0");
  require_covered(grid, center_split, sigma, "signal photon");
  require_covered(grid, -center_split, sigma, "idler photon");

  const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
  const Eigen::ArrayXd f_sig =
      norm * (-((grid.points - center_split) / (2.0 * sigma)).square()).exp();
  const Eigen::ArrayXd f_idl =
      norm * (-((grid.points + center_split) / (2.0 * sigma)).square()).exp();

  const Eigen::MatrixXd term_si = f_sig.matrix() * f_idl.matrix().transpose();
  const Eigen::MatrixXd term_is = f_idl.matrix() * f_sig.matrix().transpose();
  const Complex phase = std::polar(1.0, psi_rel);
  Eigen::MatrixXcd amplitude = term_si.cast<Complex>() + phase * term_is.cast<Complex>();
  return normalized_state(grid, std::move(amplitude), StateKind::Entangled, psi_rel);
}

double coincidence_probability(const TwoPhotonState& state, double tau) {
  validate_grid(state.grid);
  if (norm_error(state) > 1e-8) {
    throw std::invalid_argument("coincidence_probability: state is not normalized");
  }
  const Complex i_unit(0.0, 1.0);
  const Eigen::ArrayXcd phase =
      (i_unit * tau * state.grid.points.cast<Complex>()).exp();
  const Eigen::ArrayXcd wp = state.grid.weights.cast<Complex>() * phase;

  // Exchange overlap J = sum_ij w_i w_j psi_ij conj(psi_ji) e^{i(wi-wj) tau}.
  const Eigen::MatrixXcd left = wp.matrix().asDiagonal() * state.amplitude;
  const Eigen::MatrixXcd right =
      state.amplitude.adjoint() * wp.conjugate().matrix().asDiagonal();
  const Complex overlap = (left.array() * right.array()).sum();

  const double p = 0.5 * (1.0 - overlap.real());
  return std::clamp(p, 0.0, 1.0);
}

WitnessResult witness_compare(const FrequencyGrid& grid, double sigma,
                              double center_split, double psi_rel,
                              const Eigen::ArrayXd& tau_grid) {
  if (tau_grid.size() < 2) {
    throw std::invalid_argument("witness_compare: need >= 2 tau points");
  }
  const TwoPhotonState product = make_product_state(grid, sigma, center_split);
  const TwoPhotonState entangled =
      make_entangled_state(grid, sigma, center_split, psi_rel);

  WitnessResult result;
  result.tau = tau_grid;
  const Eigen::Index m = tau_grid.size();
  result.product_curve = Eigen::ArrayXd::Zero(m);
  result.entangled_curve = Eigen::ArrayXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    result.product_curve[i] = coincidence_probability(product, tau_grid[i]);
    result.entangled_curve[i] = coincidence_probability(entangled, tau_grid[i]);
  }
  result.max_curve_gap =
      (result.product_curve - result.entangled_curve).abs().maxCoeff();

  // Dip depth is defined relative to the large-delay plateau.
  const double plateau_p = result.product_curve[m - 1];
  const double plateau_e = result.entangled_curve[m - 1];
  if (!(plateau_p > 0.0) || !(plateau_e > 0.0)) {
    throw std::invalid_argument(
        "witness_compare: plateau delay too small to normalize the dip depth");
  }
  result.dip_depth_product = 1.0 - result.product_curve[0] / plateau_p;
  result.dip_depth_entangled = 1.0 - result.entangled_curve[0] / plateau_e;
  return result;
}

}  // namespace homsim
