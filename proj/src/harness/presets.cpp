#include <string>
#include <vector>

#include "ruinsim/errors.hpp"
#include "ruinsim/harness/config.hpp"

namespace ruinsim {
namespace {

constexpr std::uint64_t kPresetSeed = 20240601;

ExperimentConfig heavy_traffic(const std::string& name, std::vector<std::string> kinds) {
  ExperimentConfig c;
  c.name = name;
  c.model.mu = 3.0;
  c.model.a = 2.0;
  c.model.b = 1.0;
  c.model.epsilon = 0.1;
  c.model.rho = 0.99;
  c.sim.n = 100;
  c.sim.reps = 10000;
  c.sim.seed = kPresetSeed;
  c.sim.u_grid = parse_u_grid("logspace(0, 5, 20)");
  for (const auto& k : kinds) c.estimators.push_back(parse_kind(k));
  c.out_path = name + ".csv";
  return c;
}

ExperimentConfig error_bounds_panel(const std::string& name, double epsilon, double rho) {
  ExperimentConfig c;
  c.name = name;
  c.model.mu = 3.0;
  c.model.a = 3.0;
  c.model.b = 1.0;
  c.model.epsilon = epsilon;
  c.model.rho = rho;
  c.sim.n = 100;
  c.sim.reps = 10000;
  c.sim.seed = kPresetSeed;
  c.sim.u_grid = parse_u_grid("linspace(0, 95, 20)");
  c.estimators = {parse_kind("new.crude")};
  c.out_path = name + ".csv";
  return c;
}

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {"fig1", "fig2", "fig3", "fig4"};
  return names;
}

std::vector<ExperimentConfig> builtin_preset(const std::string& name) {
  std::vector<ExperimentConfig> out;
  if (name == "fig1") {
    out.push_back(error_bounds_panel("fig1_left", 0.7, 0.9));
    out.push_back(error_bounds_panel("fig1_right", 0.1, 0.7));
  } else if (name == "fig2") {
    out.push_back(heavy_traffic("fig2", {"new.crude", "new.cv_max", "pk.crude", "pk.cv_max"}));
  } else if (name == "fig3") {
    out.push_back(heavy_traffic("fig3", {"new.ak", "new.ak_cv", "pk.ak", "pk.ak_cv"}));
  } else if (name == "fig4") {
    out.push_back(heavy_traffic("fig4", {"new.cv_max", "new.ak_cv", "pk.cv_max", "pk.ak_cv"}));
  } else {
    throw ConfigError("preset", "unknown preset '" + name + "' (fig1, fig2, fig3, fig4)");
  }
  for (const auto& c : out) validate(c);
  return out;
}

}  // namespace ruinsim
