#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace homsim {

/// Gaussian detuning distribution of an SPDC pair source. A spectral filter
/// is modelled by bandwidth_ratio: the effective width is bandwidth_ratio
/// times sigma.
struct SpectralModel {
  double sigma = 1.0;            // rad/s, > 0
  double mean_offset = 0.0;      // rad/s
  double bandwidth_ratio = 1.0;  // in (0, 1]

  double effective_sigma() const noexcept { return bandwidth_ratio * sigma; }
};

/// One sampled pair, reduced to what the beam-splitter model consumes:
/// the detuning delta_f, a global phase (physically irrelevant; carried so
/// tests can prove it), and the sign of the pi/2 shift convention.
struct PhotonPair {
  double delta_f = 0.0;       // rad/s
  double global_phase = 0.0;  // [0, 2*pi)
  int shift_sign = +1;        // +1 or -1
};

/// Throws std::invalid_argument unless sigma > 0 and bandwidth_ratio in (0, 1].
void validate(const SpectralModel& model);

/// Gaussian density with mean mean_offset and std effective_sigma.
double pdf(const SpectralModel& model, double delta_f);

/// Returns a copy with bandwidth_ratio multiplied by ratio; ratio in (0, 1].
SpectralModel apply_filter(const SpectralModel& model, double ratio);

/// Draws n pairs (n even, >= 2). Detunings are emitted in antithetic
/// (+df, -df) couples so odd-function ensemble averages cancel exactly at
/// finite n; global phases are uniform on [0, 2*pi). Bit-deterministic in
/// (model, n, seed).
std::vector<PhotonPair> sample_pairs(const SpectralModel& model, std::size_t n,
                                     std::uint64_t seed);

}  // namespace homsim
