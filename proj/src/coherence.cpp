#include "homsim/coherence.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace homsim {
namespace {

// Compensated (Kahan) accumulator; fixed summation order keeps ensemble
// reductions bit-deterministic.
class KahanSum {
 public:
  void add(double x) noexcept {
    const double y = x - comp_;
    const double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
  }
  double value() const noexcept { return sum_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

std::string_view tag_name(ModelTag tag) {
  switch (tag) {
    case ModelTag::CoherenceShifted:
      return "coherence-shifted";
    case ModelTag::CoherenceUnshifted:
      return "coherence-unshifted";
    case ModelTag::CoherenceAnalytic:
      return "coherence-analytic";
    case ModelTag::Fock:
      return "fock";
  }
  return "unknown";
}

double delta_phi(const PhotonPair& pair, double tau, bool shifted) {
  const double base = pair.delta_f * tau;
  if (!shifted) return base;
  return base + pair.shift_sign * (std::numbers::pi / 2.0);
}

IntensityPair output_intensities(const PhotonPair& pair, double tau) {
  const double s = std::sin(pair.delta_f * tau);
  return IntensityPair{1.0 - s, 1.0 + s};
}

double pair_coincidence(const PhotonPair& pair, double tau, bool shifted) {
  // |.| forces exact symmetry under delta_f -> -delta_f; the shift sign
  // drops because sin^2 is even.
  const double phi = std::abs(pair.delta_f * tau);
  const double c = shifted ? std::sin(phi) : std::cos(phi);
  return c * c;
}

EnsembleStat ensemble_coincidence(std::span<const PhotonPair> pairs, double tau,
                                  bool shifted) {
  const std::size_t n = pairs.size();
  if (n < 2) {
    throw std::invalid_argument("ensemble_coincidence: need at least 2 pairs");
  }
  KahanSum sum;
  for (const PhotonPair& pair : pairs) {
    sum.add(pair_coincidence(pair, tau, shifted));
  }
  const double mean = sum.value() / static_cast<double>(n);

  KahanSum sq;
  for (const PhotonPair& pair : pairs) {
    const double d = pair_coincidence(pair, tau, shifted) - mean;
    sq.add(d * d);
  }
  const double var = sq.value() / static_cast<double>(n - 1);
  return EnsembleStat{mean, std::sqrt(var / static_cast<double>(n))};
}

EnsembleStat ensemble_coincidence(const SpectralModel& model, double tau,
                                  std::size_t n, std::uint64_t seed, bool shifted) {
  const std::vector<PhotonPair> pairs = sample_pairs(model, n, seed);
  return ensemble_coincidence(pairs, tau, shifted);
}

double analytic_coincidence(const SpectralModel& model, double tau) {
  validate(model);
  const double se = model.effective_sigma();
  const double envelope = std::exp(-2.0 * se * se * tau * tau);
  return 0.5 * (1.0 - envelope * std::cos(2.0 * model.mean_offset * tau));
}

CoincidenceCurve scan(const SpectralModel& model, const Eigen::ArrayXd& tau_grid,
                      const ScanOptions& options) {
  validate(model);
  const Eigen::Index m = tau_grid.size();
  if (m < 1) throw std::invalid_argument("scan: empty tau grid");
  for (Eigen::Index i = 1; i < m; ++i) {
    if (!(tau_grid[i] > tau_grid[i - 1])) {
      throw std::invalid_argument("scan: tau grid must be strictly increasing");
    }
  }

  CoincidenceCurve curve;
  curve.tau = tau_grid;
  curve.value = Eigen::ArrayXd::Zero(m);
  curve.std_error = Eigen::ArrayXd::Zero(m);
  curve.bandwidth_ratio = model.bandwidth_ratio;

  if (options.analytic) {
    for (Eigen::Index i = 0; i < m; ++i) {
      const double shifted_value = analytic_coincidence(model, tau_grid[i]);
      curve.value[i] = options.shifted ? shifted_value : 1.0 - shifted_value;
    }
    curve.tag = options.shifted ? ModelTag::CoherenceAnalytic : ModelTag::CoherenceUnshifted;
    return curve;
  }

  const std::vector<PhotonPair> pairs = sample_pairs(model, options.n_pairs, options.seed);
  for (Eigen::Index i = 0; i < m; ++i) {
    const EnsembleStat stat = ensemble_coincidence(pairs, tau_grid[i], options.shifted);
    curve.value[i] = stat.mean;
    curve.std_error[i] = stat.std_error;
  }
  curve.tag = options.shifted ? ModelTag::CoherenceShifted : ModelTag::CoherenceUnshifted;
  return curve;
}

}  // namespace homsim
