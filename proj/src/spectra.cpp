#include "homsim/spectra.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "homsim/rng.hpp"

namespace homsim {

void validate(const SpectralModel& model) {
  if (!(model.sigma > 0.0) || !std::isfinite(model.sigma)) {
    throw std::invalid_argument("spectral model: sigma must be finite and > 0, got " +
                                std::to_string(model.sigma));
  }
  if (!(model.bandwidth_ratio > 0.0) || !(model.bandwidth_ratio <= 1.0)) {
    throw std::invalid_argument("spectral model: bandwidth ratio must lie in (0, 1], got " +
                                std::to_string(model.bandwidth_ratio));
  }
  if (!std::isfinite(model.mean_offset)) {
    throw std::invalid_argument("spectral model: mean offset must be finite");
  }
}

double pdf(const SpectralModel& model, double delta_f) {
  validate(model);
  const double se = model.effective_sigma();
  const double t = (delta_f - model.mean_offset) / se;
  return std::exp(-0.5 * t * t) / (se * std::sqrt(2.0 * std::numbers::pi));
}

SpectralModel apply_filter(const SpectralModel& model, double ratio) {
  validate(model);
  if (!(ratio > 0.0) || !(ratio <= 1.0)) {
    throw std::invalid_argument("apply_filter: ratio must lie in (0, 1], got " +
                                std::to_string(ratio));
  }
  SpectralModel filtered = model;
  filtered.bandwidth_ratio *= ratio;
  return filtered;
}

// Substream dims per couple: 0,1 feed Box-Muller, 2 and 3 are the two
// global phases.
std::vector<PhotonPair> sample_pairs(const SpectralModel& model, std::size_t n,
                                     std::uint64_t seed) {
  validate(model);
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("sample_pairs: n must be even and >= 2, got " +
                                std::to_string(n));
  }
  constexpr double two_pi = 2.0 * std::numbers::pi;
  const double se = model.effective_sigma();

  std::vector<PhotonPair> pairs(n);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double df = model.mean_offset + se * rng::standard_normal(seed, k, 0);
    pairs[2 * k] = PhotonPair{df, two_pi * rng::uniform01(seed, k, 2), +1};
    pairs[2 * k + 1] = PhotonPair{-df, two_pi * rng::uniform01(seed, k, 3), -1};
  }
  return pairs;
}

}  // namespace homsim
