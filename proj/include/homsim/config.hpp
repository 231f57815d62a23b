#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

namespace homsim {

enum class ModelChoice { Coherence, CoherenceUnshifted, Fock };
enum class OutputFormat { Csv, Json };

std::string_view model_choice_name(ModelChoice model);
std::string_view output_format_name(OutputFormat format);
ModelChoice parse_model_choice(std::string_view name);
OutputFormat parse_output_format(std::string_view name);

/// Scenario parameters shared by the CLI and the experiment runners.
/// Defaults are sized for sigma = 1 rad/s.
struct RunConfig {
  ModelChoice model = ModelChoice::Coherence;
  double sigma = 1.0;
  double mean_offset = 0.0;
  double bandwidth_ratio = 1.0;
  double tau_max = 4.0;
  int tau_steps = 65;
  std::int64_t n_pairs = 100000;  // even
  std::int64_t seed = 7;
  bool analytic = false;
  OutputFormat output_format = OutputFormat::Csv;
  std::string output_path = "-";

  // Scenario extras.
  std::vector<double> ratios = {1.0, 0.75, 0.5, 0.25};
  double center_split = 0.0;
  double psi_rel = 0.0;
  int grid_points = 257;
  double grid_span = 6.0;  // half-span in units of the spectral scale

  void validate() const;  // throws std::invalid_argument
  Eigen::ArrayXd tau_grid() const;
  std::uint64_t seed_word() const { return static_cast<std::uint64_t>(seed); }
};

}  // namespace homsim
