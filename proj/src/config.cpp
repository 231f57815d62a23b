#include "homsim/config.hpp"

#include <stdexcept>

namespace homsim {

std::string_view model_choice_name(ModelChoice model) {
  switch (model) {
    case ModelChoice::Coherence:
      return "coherence";
    case ModelChoice::CoherenceUnshifted:
      return "coherence-unshifted";
    case ModelChoice::Fock:
      return "fock";
  }
  return "unknown";
}

std::string_view output_format_name(OutputFormat format) {
  return format == OutputFormat::Csv ? "csv" : "json";
}

ModelChoice parse_model_choice(std::string_view name) {
  if (name == "coherence") return ModelChoice::Coherence;
  if (name == "coherence-unshifted") return ModelChoice::CoherenceUnshifted;
  if (name == "fock") return ModelChoice::Fock;
  throw std::invalid_argument("unknown model: " + std::string(name));
}

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw std::invalid_argument("unknown output format: " + std::string(name));
}

void RunConfig::validate() const {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be > 0");
  if (!(bandwidth_ratio > 0.0) || !(bandwidth_ratio <= 1.0)) {
    throw std::invalid_argument("bandwidth-ratio must lie in (0, 1]");
  }
  if (!(tau_max > 0.0)) throw std::invalid_argument("tau-max must be > 0");
  if (tau_steps < 2) throw std::invalid_argument("tau-steps must be >= 2");
  if (n_pairs < 2) throw std::invalid_argument("n-pairs must be >= 2");
  if (n_pairs % 2 != 0) throw std::invalid_argument("n-pairs must be even");
  if (grid_points < 3) throw std::invalid_argument("grid-points must be >= 3");
  if (!(grid_span > 0.0)) throw std::invalid_argument("grid-span must be > 0");
  if (ratios.empty()) throw std::invalid_argument("ratios must not be empty");
  for (double r : ratios) {
    if (!(r > 0.0) || !(r <= 1.0)) {
      throw std::invalid_argument("every ratio must lie in (0, 1]");
    }
  }
  if (center_split < 0.0) throw std::invalid_argument("center-split must be >= 0");
}

Eigen::ArrayXd RunConfig::tau_grid() const {
  return Eigen::ArrayXd::LinSpaced(tau_steps, 0.0, tau_max);
}

}  // namespace homsim
