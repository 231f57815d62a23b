#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

#include "homsim/spectra.hpp"

namespace homsim {

/// Beam-splitter output intensities in units of the single-photon
/// intensity I0. Always satisfies i_a + i_b = 2.
struct IntensityPair {
  double i_a = 1.0;
  double i_b = 1.0;
};

enum class ModelTag {
  CoherenceShifted,
  CoherenceUnshifted,
  CoherenceAnalytic,
  Fock,
};

std::string_view tag_name(ModelTag tag);

/// Normalized coincidence versus delay. std_error is zero for analytic
/// curves. tau is strictly increasing, values lie in [0, 1].
struct CoincidenceCurve {
  Eigen::ArrayXd tau;
  Eigen::ArrayXd value;
  Eigen::ArrayXd std_error;
  ModelTag tag = ModelTag::CoherenceShifted;
  double bandwidth_ratio = 1.0;
  std::string label;  // optional; emitters fall back to tag_name(tag)
};

/// Pair phase difference delta_f * tau, plus shift_sign * pi/2 when shifted.
double delta_phi(const PhotonPair& pair, double tau, bool shifted);

/// i_a = 1 - sin(delta_phi), i_b = 1 + sin(delta_phi), unshifted phase.
/// Independent of the pair's global phase.
IntensityPair output_intensities(const PhotonPair& pair, double tau);

/// Normalized coincidence of one pair: cos^2(delta_f tau) unshifted,
/// sin^2(delta_f tau) shifted. Exactly even in delta_f.
double pair_coincidence(const PhotonPair& pair, double tau, bool shifted);

struct EnsembleStat {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Mean pair coincidence over a fixed ensemble; standard error of the mean.
/// Accumulates in index order (compensated), so results are schedule-free.
EnsembleStat ensemble_coincidence(std::span<const PhotonPair> pairs, double tau,
                                  bool shifted);

/// Convenience overload sampling its own antithetic ensemble.
EnsembleStat ensemble_coincidence(const SpectralModel& model, double tau,
                                  std::size_t n, std::uint64_t seed, bool shifted);

/// Closed-form Gaussian expectation of the shifted coincidence:
///   1/2 (1 - exp(-2 sigma_eff^2 tau^2) cos(2 mu tau)).
/// The unshifted expectation is 1 minus this value.
double analytic_coincidence(const SpectralModel& model, double tau);

struct ScanOptions {
  std::size_t n_pairs = 100000;  // even
  std::uint64_t seed = 7;
  bool shifted = true;
  bool analytic = false;
};

/// Coincidence curve over tau_grid. Monte Carlo mode reuses one ensemble
/// across the whole grid (detunings fixed, phase grows with tau).
CoincidenceCurve scan(const SpectralModel& model, const Eigen::ArrayXd& tau_grid,
                      const ScanOptions& options);

}  // namespace homsim
