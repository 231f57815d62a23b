#pragma once

#include <Eigen/Core>
#include <complex>

namespace homsim {

/// Uniform quadrature grid over detunings from degeneracy. Trapezoid
/// weights; their sum equals the covered interval length.
struct FrequencyGrid {
  Eigen::ArrayXd points;   // strictly increasing, >= 3 entries
  Eigen::ArrayXd weights;  // rad/s
};

FrequencyGrid uniform_grid(double half_span, Eigen::Index n_points);

enum class StateKind { Product, Entangled };

/// Discretized two-photon joint spectral amplitude psi(w1, w2); the row
/// index is the port-1 frequency, the column index port-2. Normalized so
/// sum_ij w_i w_j |psi_ij|^2 = 1.
struct TwoPhotonState {
  FrequencyGrid grid;
  Eigen::MatrixXcd amplitude;
  StateKind kind = StateKind::Product;
  double psi_rel = 0.0;  // relative phase, Entangled only
};

/// 50/50 lossless beam splitter, reflection pi/2 ahead of transmission:
/// (1/sqrt 2) [[1, i], [i, 1]].
Eigen::Matrix2cd beam_splitter_matrix();

/// |quadrature norm^2 - 1| of a state.
double norm_error(const TwoPhotonState& state);

/// Separable pair: Gaussians of std sigma centered at +/- center_split.
/// Throws if more than 1e-6 of either marginal lies outside the grid.
TwoPhotonState make_product_state(const FrequencyGrid& grid, double sigma,
                                  double center_split);

/// Frequency-anticorrelated pair (single correlated term, no path
/// superposition): |psi|^2 is Gaussian with std sum_sigma in w1 + w2 and
/// std diff_sigma in w1 - w2.
TwoPhotonState make_anticorrelated_state(const FrequencyGrid& grid,
                                         double sum_sigma, double diff_sigma);

/// Path-entangled superposition (signal, idler) + e^{i psi_rel} (idler,
/// signal), normalized. Throws on zero-norm superpositions (psi_rel = pi
/// with exchange-symmetric terms).
TwoPhotonState make_entangled_state(const FrequencyGrid& grid, double sigma,
                                    double center_split, double psi_rel);

/// HOM coincidence probability after the beam splitter with delay tau on
/// port 1:
///   P(tau) = 1/2 [1 - Re sum_ij w_i w_j psi(wi,wj) conj(psi(wj,wi))
///                         e^{i (wi - wj) tau}].
/// Requires a normalized state (norm_error <= 1e-8).
double coincidence_probability(const TwoPhotonState& state, double tau);

struct WitnessResult {
  double dip_depth_product = 0.0;
  double dip_depth_entangled = 0.0;
  double max_curve_gap = 0.0;
  Eigen::ArrayXd tau;
  Eigen::ArrayXd product_curve;
  Eigen::ArrayXd entangled_curve;
};

/// Runs the coincidence scan for product and entangled inputs on one grid.
/// Dip depth is 1 - P(0)/P(tau_max), i.e. relative to the large-delay
/// plateau.
WitnessResult witness_compare(const FrequencyGrid& grid, double sigma,
                              double center_split, double psi_rel,
                              const Eigen::ArrayXd& tau_grid);

}  // namespace homsim
