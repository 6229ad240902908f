#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ruinsim/errors.hpp"
#include "ruinsim/harness/config.hpp"
#include "ruinsim/harness/experiment.hpp"

namespace {

using ruinsim::ExperimentConfig;

struct Common {
  std::string preset;
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<long long> reps;
  std::string out;
  int workers = 1;
  bool record_timing = false;
};

void add_common(CLI::App* cmd, Common& c, bool with_sim_flags) {
  auto* preset = cmd->add_option("--preset", c.preset, "Built-in design: fig1, fig2, fig3, fig4")
                     ->check(CLI::IsMember(ruinsim::preset_names()));
  auto* config = cmd->add_option("--config", c.config_path, "INI config file");
  preset->excludes(config);
  cmd->add_option("--out", c.out, "Output CSV path (default: config/preset path, or stdout)");
  if (with_sim_flags) {
    cmd->add_option("--seed", c.seed, "Master seed");
    cmd->add_option("--reps", c.reps, "Replications per estimate")->check(CLI::Range(2LL, 1LL << 40));
    cmd->add_option("--workers", c.workers, "Worker threads (RUINSIM_WORKERS overrides)")
        ->check(CLI::PositiveNumber);
    cmd->add_flag("--record-timing", c.record_timing,
                  "Fill wall_ms (output is then no longer reproducible)");
  }
}

std::vector<ExperimentConfig> resolve_configs(const Common& c, const std::string& fallback) {
  std::vector<ExperimentConfig> configs;
  if (!c.config_path.empty()) {
    configs.push_back(ruinsim::load_config(c.config_path));
  } else {
    configs = ruinsim::builtin_preset(c.preset.empty() ? fallback : c.preset);
  }
  for (auto& cfg : configs) {
    if (c.seed) cfg.sim.seed = *c.seed;
    if (c.reps) cfg.sim.reps = *c.reps;
    ruinsim::validate(cfg);
  }
  return configs;
}

// fig1 has two panels; with --out the panel name becomes a suffix.
std::string output_path(const Common& c, const ExperimentConfig& cfg, std::size_t panels) {
  if (c.out.empty()) return cfg.out_path;
  if (panels == 1) return c.out;
  const std::filesystem::path out(c.out);
  const auto underscore = cfg.name.rfind('_');
  const std::string suffix =
      underscore == std::string::npos ? cfg.name : cfg.name.substr(underscore + 1);
  std::filesystem::path p = out.parent_path() / (out.stem().string() + "_" + suffix);
  p += out.has_extension() ? out.extension() : std::filesystem::path(".csv");
  return p.string();
}

void emit(const std::string& path, const std::vector<ruinsim::ResultRow>& rows) {
  if (path.empty() || path == "-") {
    ruinsim::write_csv(std::cout, rows);
  } else {
    ruinsim::write_csv_file(path, rows);
    std::cerr << "wrote " << rows.size() << " rows to " << path << "\n";
  }
}

std::vector<int> parse_n_list(const std::vector<std::string>& items) {
  std::vector<int> out;
  for (const auto& item : items) {
    std::stringstream ss(item);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      std::size_t used = 0;
      const int n = std::stoi(tok, &used);
      if (used != tok.size() || n < 1) throw ruinsim::ConfigError("n", "bad order '" + tok + "'");
      out.push_back(n);
    }
  }
  if (out.empty()) throw ruinsim::ConfigError("n", "no truncation orders given");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ruin probability estimation for heavy/light claim mixtures"};
  app.require_subcommand(1);

  Common est;
  double u = 0.0;
  std::string estimator;
  std::optional<int> n_override;
  auto* estimate = app.add_subcommand("estimate", "One estimator at one initial capital u");
  add_common(estimate, est, true);
  estimate->add_option("--u", u, "Initial capital")->required()->check(CLI::NonNegativeNumber);
  estimate->add_option("--estimator", estimator, "e.g. new.cv_max, pk.ak_cv")->required();
  estimate->add_option("--n", n_override, "Truncation order")->check(CLI::Range(2, 1000000));

  Common exp;
  auto* experiment = app.add_subcommand("experiment", "Run a preset or config over its u grid");
  add_common(experiment, exp, true);
  experiment->callback([&] {
    if (exp.preset.empty() && exp.config_path.empty()) {
      throw CLI::ValidationError("experiment", "one of --preset or --config is required");
    }
  });

  Common cst;
  std::vector<std::string> n_items;
  auto* constants = app.add_subcommand("constants", "Asymptotic variance constants per n");
  add_common(constants, cst, false);
  constants->add_option("--n", n_items, "Truncation orders, e.g. 2,10,100")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*estimate) {
      auto configs = resolve_configs(est, "fig2");
      ExperimentConfig cfg = configs.front();
      if (n_override) cfg.sim.n = *n_override;
      const ruinsim::EstimatorKind kind = ruinsim::parse_kind(estimator);
      ruinsim::validate(cfg);
      const ruinsim::RuinModel model(ruinsim::to_model_params(cfg.model));
      const ruinsim::RunSettings settings{ruinsim::resolve_workers(est.workers),
                                          est.record_timing};
      const auto row = ruinsim::run_single(cfg, model, u, kind, settings);
      emit(est.out, {row});
      return std::isfinite(row.estimate) ? 0 : 3;
    }
    if (*experiment) {
      const auto configs = resolve_configs(exp, "fig2");
      const ruinsim::RunSettings settings{ruinsim::resolve_workers(exp.workers),
                                          exp.record_timing};
      for (const auto& cfg : configs) {
        emit(output_path(exp, cfg, configs.size()), ruinsim::run_experiment(cfg, settings));
      }
      return 0;
    }
    if (*constants) {
      const auto configs = resolve_configs(cst, "fig2");
      const auto rows = ruinsim::constants_report(configs.front(), parse_n_list(n_items));
      if (cst.out.empty() || cst.out == "-") {
        ruinsim::write_constants_csv(std::cout, rows);
      } else {
        std::ofstream out(cst.out, std::ios::binary);
        if (!out) throw ruinsim::Error("cannot write " + cst.out);
        ruinsim::write_constants_csv(out, rows);
      }
      return 0;
    }
  } catch (const ruinsim::ConfigError& e) {
    std::cerr << "ruinsim: invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "ruinsim: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
