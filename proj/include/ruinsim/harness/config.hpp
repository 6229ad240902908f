#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ruinsim/estimators.hpp"
#include "ruinsim/model/model.hpp"

namespace ruinsim {

/// Model section: exponential light claims with rate mu mixed with a
/// shifted Pareto(a, b) (or, for testing, an exponential heavy part).
struct ModelSpec {
  double mu = 3.0;
  double a = 2.0;
  double b = 1.0;
  double epsilon = 0.1;
  std::optional<double> rho;
  std::optional<double> lambda;
  std::string heavy = "pareto";  // or "exponential"
  double heavy_rate = 1.0;
};

struct SimSpec {
  int n = 100;
  std::int64_t reps = 10000;
  std::uint64_t seed = 1;
  std::vector<double> u_grid;
};

struct ExperimentConfig {
  std::string name;
  ModelSpec model;
  SimSpec sim;
  std::vector<EstimatorKind> estimators;
  std::string out_path;  // empty: standard output
  std::string format = "csv";
};

ModelParams to_model_params(const ModelSpec& spec);

/// Parses and validates an INI file with sections [model], [sim], [run]
/// and [output]. Errors are ConfigError naming the offending key.
ExperimentConfig load_config(const std::string& path);
ExperimentConfig parse_config(std::istream& in, const std::string& origin = "<stream>");

/// Throws ConfigError on the first invalid key.
void validate(const ExperimentConfig& config);

/// "0, 5, 10", "linspace(lo, hi, count)" or "logspace(lo_exp, hi_exp, count)".
std::vector<double> parse_u_grid(const std::string& text);
std::string format_u_grid(const std::vector<double>& grid);

/// Built-in experiment designs: fig1 (two panels), fig2, fig3, fig4.
std::vector<ExperimentConfig> builtin_preset(const std::string& name);
const std::vector<std::string>& preset_names();

/// Worker count: RUINSIM_WORKERS if set and valid, else the requested value.
int resolve_workers(int requested);

}  // namespace ruinsim
