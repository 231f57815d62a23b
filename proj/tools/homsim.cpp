// homsim: Hong-Ou-Mandel coincidence statistics on a lossless 50/50 beam
// splitter. Subcommands emit CSV or JSON; identical flags and seed give
// byte-identical output.

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>

#include "homsim/experiments.hpp"
#include "homsim/report_io.hpp"

namespace {

using homsim::ExperimentReport;
using homsim::RunConfig;

int emit(const ExperimentReport& report, const RunConfig& config) {
  const std::string payload = config.output_format == homsim::OutputFormat::Csv
                                  ? homsim::curves_to_csv(report.curves)
                                  : homsim::report_to_json_string(report);
  if (config.output_path == "-") {
    std::cout << payload;
  } else {
    std::ofstream out(config.output_path, std::ios::binary);
    if (!out) {
      std::cerr << "homsim: error: cannot open output file " << config.output_path
                << "\n";
      return 1;
    }
    out << payload;
  }
  return report.all_passed() ? 0 : 1;
}

void add_output_options(CLI::App* sub, RunConfig& config, std::string& format) {
  sub->add_option("--format", format, "Output format: csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--output", config.output_path,
                  "Output path, or - for standard output (default -)")
      ->envname("HOMSIM_OUTPUT");
}

void add_spectral_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--sigma", config.sigma,
                  "Spectral standard deviation, rad/s (default 1)");
  sub->add_option("--mean-offset", config.mean_offset,
                  "Detuning mean offset mu, rad/s (default 0)");
  sub->add_option("--bandwidth-ratio", config.bandwidth_ratio,
                  "Spectral filter ratio in (0, 1] (default 1)");
}

void add_tau_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--tau-max", config.tau_max, "Largest delay, s (default 4)");
  sub->add_option("--tau-steps", config.tau_steps,
                  "Number of delay grid points (default 65)");
}

void add_ensemble_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--n-pairs", config.n_pairs,
                  "Ensemble size; must be even (default 100000)");
  sub->add_option("--seed", config.seed, "RNG seed (default 7)");
  sub->add_flag("--analytic", config.analytic,
                "Evaluate the closed form instead of Monte Carlo");
}

void add_grid_options(CLI::App* sub, RunConfig& config) {
  sub->add_option("--grid-points", config.grid_points,
                  "Frequency quadrature points (default 257)");
  sub->add_option("--grid-span", config.grid_span,
                  "Grid half-span in units of the spectral scale (default 6)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hong-Ou-Mandel coincidence simulator"};
  app.require_subcommand(1);

  RunConfig config;
  std::string format = "csv";
  std::string model = "coherence";
  std::function<ExperimentReport(const RunConfig&)> runner;

  CLI::App* scan = app.add_subcommand("scan", "One coincidence curve over a delay grid");
  add_spectral_options(scan, config);
  add_tau_options(scan, config);
  add_ensemble_options(scan, config);
  add_grid_options(scan, config);
  add_output_options(scan, config, format);
  scan->add_option("--model", model,
                   "coherence, coherence-unshifted or fock (default coherence)")
      ->check(CLI::IsMember({"coherence", "coherence-unshifted", "fock"}));
  scan->callback([&] { runner = homsim::run_scan; });

  CLI::App* sweep =
      app.add_subcommand("sweep-bandwidth", "Dip curves for a family of filter ratios");
  add_spectral_options(sweep, config);
  add_tau_options(sweep, config);
  add_ensemble_options(sweep, config);
  add_output_options(sweep, config, format);
  sweep->add_option("--ratios", config.ratios,
                    "Comma-separated filter ratios (default 1,0.75,0.5,0.25)")
      ->delimiter(',');
  sweep->callback([&] { runner = homsim::run_bandwidth_sweep; });

  CLI::App* contrast = app.add_subcommand(
      "contrast", "Unshifted (cos^2) versus shifted (sin^2) coincidence");
  add_spectral_options(contrast, config);
  add_tau_options(contrast, config);
  add_ensemble_options(contrast, config);
  add_output_options(contrast, config, format);
  contrast->callback([&] { runner = homsim::run_shift_contrast; });

  CLI::App* fringe = app.add_subcommand(
      "fringe", "Coincidence fringe for a nonzero detuning mean offset");
  add_spectral_options(fringe, config);
  add_tau_options(fringe, config);
  add_ensemble_options(fringe, config);
  add_output_options(fringe, config, format);
  auto* fringe_mu = fringe->get_option("--mean-offset");
  fringe_mu->description("Detuning mean offset mu, rad/s; must be > 0 (default 3)");
  fringe->callback([&] {
    if (fringe_mu->count() == 0) config.mean_offset = 3.0;
    runner = homsim::run_fringe;
  });

  CLI::App* witness = app.add_subcommand(
      "witness", "Fock-state product versus path-entangled input");
  witness->add_option("--sigma", config.sigma,
                      "Single-photon spectral std, rad/s (default 1)");
  witness->add_option("--center-split", config.center_split,
                      "Signal/idler center offset from degeneracy, rad/s (default 0)");
  witness->add_option("--psi-rel", config.psi_rel,
                      "Relative phase of the entangled superposition (default 0)");
  add_grid_options(witness, config);
  auto* witness_tau = witness->add_option(
      "--tau-max", config.tau_max, "Largest delay, s (default 10)");
  witness->add_option("--tau-steps", config.tau_steps,
                      "Number of delay grid points (default 65)");
  add_output_options(witness, config, format);
  witness->callback([&] {
    if (witness_tau->count() == 0) config.tau_max = 10.0;
    runner = homsim::run_witness;
  });

  CLI::App* compare = app.add_subcommand(
      "compare", "Coherence closed form against the Fock-state curve");
  compare->add_option("--sigma", config.sigma,
                      "Spectral standard deviation, rad/s (default 1)");
  compare->add_option("--bandwidth-ratio", config.bandwidth_ratio,
                      "Spectral filter ratio in (0, 1] (default 1)");
  add_grid_options(compare, config);
  compare->add_option("--tau-max", config.tau_max, "Largest delay, s (default 4)");
  auto* compare_steps = compare->add_option(
      "--tau-steps", config.tau_steps, "Number of delay grid points (default 33)");
  add_output_options(compare, config, format);
  compare->callback([&] {
    if (compare_steps->count() == 0) config.tau_steps = 33;
    runner = homsim::run_model_comparison;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "homsim: error: " << e.what() << "\n";
    return 2;
  }

  try {
    config.output_format = homsim::parse_output_format(format);
    config.model = homsim::parse_model_choice(model);
    config.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "homsim: error: " << e.what() << "\n";
    return 2;
  }

  try {
    const ExperimentReport report = runner(config);
    return emit(report, config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "homsim: error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "homsim: error: " << e.what() << "\n";
    return 1;
  }
}
