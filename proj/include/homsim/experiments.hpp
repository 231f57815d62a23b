#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

#include "homsim/coherence.hpp"
#include "homsim/config.hpp"

namespace homsim {

/// One named check: the pass flag is authoritative; measured and tolerance
/// record what was compared. Informational checks never fail a report.
struct Check {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  bool informational = false;
};

/// Pre-average coincidence family: values(i, j) = sin^2(delta_f_i * tau_j).
struct DetuningTable {
  Eigen::ArrayXd delta_f;
  Eigen::ArrayXd tau;
  Eigen::MatrixXd values;
};

struct ExperimentReport {
  std::string name;
  std::vector<CoincidenceCurve> curves;
  std::vector<Check> checks;
  RunConfig config;
  std::optional<DetuningTable> table;

  bool all_passed() const;
};

/// One curve for the configured model choice; no checks. The fock model
/// scans the frequency-anticorrelated two-photon state under the
/// documented width mapping and requires mean_offset = 0.
ExperimentReport run_scan(const RunConfig& config);

/// Shifted-model dip curves for each bandwidth ratio in config.ratios, with
/// zero-delay, saturation, ordering and scaling-law checks. Requires
/// mean_offset = 0. Also emits the pre-average detuning family table.
ExperimentReport run_bandwidth_sweep(const RunConfig& config);

/// Antithetic ensembles give both mean port intensities equal to 1; an
/// i.i.d. control ensemble is run alongside and reported without assertion.
ExperimentReport run_born_rule_check(const RunConfig& config);

/// Unshifted (cos^2) versus shifted (sin^2) coincidence on a shared
/// ensemble: the unshifted curve starts at 1 and never dips below the
/// classical plateau; the shifted curve starts at 0.
ExperimentReport run_shift_contrast(const RunConfig& config);

/// Nonzero mean offset: the coincidence develops a modulation fringe with
/// extrema near tau = k pi / (2 mu) and values above 1/2 at odd k.
/// Requires mean_offset > 0.
ExperimentReport run_fringe(const RunConfig& config);

/// Product versus path-entangled two-photon input through the Fock-state
/// reference; both produce the full dip at zero center split.
ExperimentReport run_witness(const RunConfig& config);

/// Fock-state curve for a frequency-anticorrelated pair against the
/// coherence-model closed form under the documented width mapping
/// (difference-frequency std = 2 x detuning std, so the fitted exponent is
/// k = 2 sigma_eff^2). Requires mean_offset = 0. Throws a model-mismatch
/// error if the Gaussian fit residual exceeds 1e-4.
ExperimentReport run_model_comparison(const RunConfig& config);

}  // namespace homsim
