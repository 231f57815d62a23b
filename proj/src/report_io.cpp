#include "homsim/report_io.hpp"

#include <charconv>
#include <stdexcept>

namespace homsim {
namespace {

using nlohmann::ordered_json;

ordered_json array_to_json(const Eigen::ArrayXd& values) {
  ordered_json out = ordered_json::array();
  for (Eigen::Index i = 0; i < values.size(); ++i) out.push_back(values[i]);
  return out;
}

Eigen::ArrayXd array_from_json(const ordered_json& j) {
  Eigen::ArrayXd out(j.size());
  Eigen::Index i = 0;
  for (const auto& v : j) out[i++] = v.get<double>();
  return out;
}

ModelTag tag_from_name(std::string_view name) {
  if (name == "coherence-shifted") return ModelTag::CoherenceShifted;
  if (name == "coherence-unshifted") return ModelTag::CoherenceUnshifted;
  if (name == "coherence-analytic") return ModelTag::CoherenceAnalytic;
  if (name == "fock") return ModelTag::Fock;
  throw std::invalid_argument("unknown model tag: " + std::string(name));
}

ordered_json config_to_json(const RunConfig& config) {
  ordered_json j;
  j["model"] = std::string(model_choice_name(config.model));
  j["sigma"] = config.sigma;
  j["mean_offset"] = config.mean_offset;
  j["bandwidth_ratio"] = config.bandwidth_ratio;
  j["tau_max"] = config.tau_max;
  j["tau_steps"] = config.tau_steps;
  j["n_pairs"] = config.n_pairs;
  j["seed"] = config.seed;
  j["analytic"] = config.analytic;
  j["output_format"] = std::string(output_format_name(config.output_format));
  j["output_path"] = config.output_path;
  j["ratios"] = config.ratios;
  j["center_split"] = config.center_split;
  j["psi_rel"] = config.psi_rel;
  j["grid_points"] = config.grid_points;
  j["grid_span"] = config.grid_span;
  return j;
}

RunConfig config_from_json(const ordered_json& j) {
  RunConfig config;
  config.model = parse_model_choice(j.at("model").get<std::string>());
  config.sigma = j.at("sigma").get<double>();
  config.mean_offset = j.at("mean_offset").get<double>();
  config.bandwidth_ratio = j.at("bandwidth_ratio").get<double>();
  config.tau_max = j.at("tau_max").get<double>();
  config.tau_steps = j.at("tau_steps").get<int>();
  config.n_pairs = j.at("n_pairs").get<std::int64_t>();
  config.seed = j.at("seed").get<std::int64_t>();
  config.analytic = j.at("analytic").get<bool>();
  config.output_format = parse_output_format(j.at("output_format").get<std::string>());
  config.output_path = j.at("output_path").get<std::string>();
  config.ratios = j.at("ratios").get<std::vector<double>>();
  config.center_split = j.at("center_split").get<double>();
  config.psi_rel = j.at("psi_rel").get<double>();
  config.grid_points = j.at("grid_points").get<int>();
  config.grid_span = j.at("grid_span").get<double>();
  return config;
}

}  // namespace

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                    std::chars_format::general, 17);
  return std::string(buffer, result.ptr);
}

std::string curves_to_csv(std::span<const CoincidenceCurve> curves) {
  std::string out = "tau,coincidence,std_error,model,bandwidth_ratio\n";
  for (const CoincidenceCurve& curve : curves) {
    const std::string model =
        curve.label.empty() ? std::string(tag_name(curve.tag)) : curve.label;
    const std::string ratio = format_double(curve.bandwidth_ratio);
    for (Eigen::Index i = 0; i < curve.tau.size(); ++i) {
      out += format_double(curve.tau[i]);
      out += ',';
      out += format_double(curve.value[i]);
      out += ',';
      out += format_double(curve.std_error[i]);
      out += ',';
      out += model;
      out += ',';
      out += ratio;
      out += '\n';
    }
  }
  return out;
}

nlohmann::ordered_json report_to_json(const ExperimentReport& report) {
  ordered_json j;
  j["name"] = report.name;
  j["config"] = config_to_json(report.config);

  ordered_json curves = ordered_json::array();
  for (const CoincidenceCurve& curve : report.curves) {
    ordered_json c;
    c["model"] = std::string(tag_name(curve.tag));
    c["label"] = curve.label;
    c["bandwidth_ratio"] = curve.bandwidth_ratio;
    c["tau"] = array_to_json(curve.tau);
    c["coincidence"] = array_to_json(curve.value);
    c["std_error"] = array_to_json(curve.std_error);
    curves.push_back(std::move(c));
  }
  j["curves"] = std::move(curves);

  ordered_json checks = ordered_json::array();
  for (const Check& check : report.checks) {
    ordered_json c;
    c["name"] = check.name;
    c["passed"] = check.passed;
    c["measured"] = check.measured;
    c["tolerance"] = check.tolerance;
    c["informational"] = check.informational;
    checks.push_back(std::move(c));
  }
  j["checks"] = std::move(checks);

  if (report.table.has_value()) {
    ordered_json t;
    t["delta_f"] = array_to_json(report.table->delta_f);
    t["tau"] = array_to_json(report.table->tau);
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < report.table->values.rows(); ++i) {
      ordered_json row = ordered_json::array();
      for (Eigen::Index jcol = 0; jcol < report.table->values.cols(); ++jcol) {
        row.push_back(report.table->values(i, jcol));
      }
      rows.push_back(std::move(row));
    }
    t["values"] = std::move(rows);
    j["detuning_table"] = std::move(t);
  }
  return j;
}

ExperimentReport report_from_json(const nlohmann::ordered_json& j) {
  ExperimentReport report;
  report.name = j.at("name").get<std::string>();
  report.config = config_from_json(j.at("config"));

  for (const auto& c : j.at("curves")) {
    CoincidenceCurve curve;
    curve.tag = tag_from_name(c.at("model").get<std::string>());
    curve.label = c.at("label").get<std::string>();
    curve.bandwidth_ratio = c.at("bandwidth_ratio").get<double>();
    curve.tau = array_from_json(c.at("tau"));
    curve.value = array_from_json(c.at("coincidence"));
    curve.std_error = array_from_json(c.at("std_error"));
    report.curves.push_back(std::move(curve));
  }
  for (const auto& c : j.at("checks")) {
    Check check;
    check.name = c.at("name").get<std::string>();
    check.passed = c.at("passed").get<bool>();
    check.measured = c.at("measured").get<double>();
    check.tolerance = c.at("tolerance").get<double>();
    check.informational = c.at("informational").get<bool>();
    report.checks.push_back(std::move(check));
  }
  if (j.contains("detuning_table")) {
    const auto& t = j.at("detuning_table");
    DetuningTable table;
    table.delta_f = array_from_json(t.at("delta_f"));
    table.tau = array_from_json(t.at("tau"));
    const auto& rows = t.at("values");
    table.values.resize(table.delta_f.size(), table.tau.size());
    Eigen::Index i = 0;
    for (const auto& row : rows) {
      Eigen::Index jcol = 0;
      for (const auto& v : row) table.values(i, jcol++) = v.get<double>();
      ++i;
    }
    report.table = std::move(table);
  }
  return report;
}

std::string report_to_json_string(const ExperimentReport& report) {
  return report_to_json(report).dump(2) + "\n";
}

}  // namespace homsim
