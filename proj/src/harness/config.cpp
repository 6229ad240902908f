#include "ruinsim/harness/config.hpp"

#include <algorithm>
#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "ruinsim/errors.hpp"

namespace ruinsim {
namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(trim(item));
  return out;
}

double to_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || !std::isfinite(v)) {
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  }
  return v;
}

long long to_integer(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v) || std::fabs(v) > 9.0e15) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return static_cast<long long>(v);
}

std::uint64_t to_seed(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 20) {
    throw ConfigError(key, "expected a nonnegative 64-bit integer, got '" + text + "'");
  }
  errno = 0;
  const unsigned long long v = std::strtoull(t.c_str(), nullptr, 10);
  if (errno == ERANGE) throw ConfigError(key, "seed out of 64-bit range");
  return v;
}

class Section {
 public:
  Section(const pt::ptree& root, std::string name) : name_(std::move(name)) {
    if (auto child = root.get_child_optional(name_)) tree_ = *child;
  }

  std::optional<std::string> get(const std::string& key) {
    seen_.insert(key);
    if (auto v = tree_.get_optional<std::string>(key)) return trim(*v);
    return std::nullopt;
  }

  std::string require(const std::string& key) {
    auto v = get(key);
    if (!v) throw ConfigError(qualified(key), "missing key");
    return *v;
  }

  std::string qualified(const std::string& key) const { return name_ + "." + key; }

  void reject_unknown() const {
    for (const auto& [key, value] : tree_) {
      if (!seen_.count(key)) throw ConfigError(qualified(key), "unknown key");
    }
  }

 private:
  std::string name_;
  pt::ptree tree_;
  std::set<std::string> seen_;
};

}  // namespace

std::vector<double> parse_u_grid(const std::string& text) {
  const std::string t = trim(text);
  const auto open = t.find('(');
  if (open != std::string::npos) {
    const std::string fn = trim(t.substr(0, open));
    if (t.back() != ')') throw ConfigError("sim.u_grid", "unbalanced parenthesis");
    const auto args = split(t.substr(open + 1, t.size() - open - 2), ',');
    if (args.size() != 3) throw ConfigError("sim.u_grid", fn + " takes (lo, hi, count)");
    const double lo = to_double("sim.u_grid", args[0]);
    const double hi = to_double("sim.u_grid", args[1]);
    const long long count = to_integer("sim.u_grid", args[2]);
    if (count < 1) throw ConfigError("sim.u_grid", "count must be >= 1");
    std::vector<double> grid(static_cast<std::size_t>(count));
    for (long long i = 0; i < count; ++i) {
      const double w = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      const double x = lo + (hi - lo) * w;
      if (fn == "linspace") {
        grid[static_cast<std::size_t>(i)] = x;
      } else if (fn == "logspace") {
        grid[static_cast<std::size_t>(i)] = std::pow(10.0, x);
      } else {
        throw ConfigError("sim.u_grid", "unknown grid function '" + fn + "'");
      }
    }
    if (count > 1) {
      grid.front() = fn == "linspace" ? lo : std::pow(10.0, lo);
      grid.back() = fn == "linspace" ? hi : std::pow(10.0, hi);
    }
    return grid;
  }
  std::vector<double> grid;
  for (const auto& item : split(t, ',')) grid.push_back(to_double("sim.u_grid", item));
  return grid;
}

std::string format_u_grid(const std::vector<double>& grid) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", grid[i]);
    if (i) out += ", ";
    out += buf;
  }
  return out;
}

ModelParams to_model_params(const ModelSpec& spec) {
  ModelParams p;
  p.lambda = spec.lambda;
  p.rho = spec.rho;
  p.epsilon = spec.epsilon;
  p.light = PhaseType::exponential(spec.mu);
  if (spec.heavy == "pareto") {
    p.heavy = ShiftedPareto(spec.a, spec.b);
  } else if (spec.heavy == "exponential") {
    p.heavy = PhaseType::exponential(spec.heavy_rate);
  } else {
    throw ConfigError("model.heavy", "expected 'pareto' or 'exponential'");
  }
  return p;
}

void validate(const ExperimentConfig& c) {
  const ModelSpec& m = c.model;
  if (!(m.mu > 0.0)) throw ConfigError("model.mu", "light claim rate must be positive");
  if (m.heavy == "pareto") {
    if (!(m.a > 1.0)) throw ConfigError("model.a", "Pareto shape must exceed 1 (finite mean)");
    if (!(m.b > 0.0)) throw ConfigError("model.b", "Pareto scale must be positive");
  } else if (m.heavy == "exponential") {
    if (!(m.heavy_rate > 0.0)) throw ConfigError("model.heavy_rate", "must be positive");
  } else {
    throw ConfigError("model.heavy", "expected 'pareto' or 'exponential'");
  }
  if (!(m.epsilon > 0.0 && m.epsilon < 1.0)) {
    throw ConfigError("model.epsilon", "must lie in (0, 1)");
  }
  if (m.rho && m.lambda) throw ConfigError("model.rho", "give either rho or lambda, not both");
  if (!m.rho && !m.lambda) throw ConfigError("model.rho", "missing key (or give lambda)");
  if (m.rho && !(*m.rho > 0.0 && *m.rho < 1.0)) {
    throw ConfigError("model.rho", "must lie in (0, 1) (net profit condition)");
  }
  if (m.lambda && !(*m.lambda > 0.0)) throw ConfigError("model.lambda", "must be positive");
  try {
    const DerivedRates r = derive_rates(to_model_params(m));
    (void)r;
  } catch (const ValidationError& e) {
    throw ConfigError(m.lambda ? "model.lambda" : "model.rho", e.what());
  }

  const SimSpec& s = c.sim;
  if (s.n < 2) throw ConfigError("sim.n", "truncation order must be >= 2");
  if (s.reps < 2) throw ConfigError("sim.reps", "must be >= 2");
  if (s.u_grid.empty()) throw ConfigError("sim.u_grid", "must not be empty");
  for (std::size_t i = 0; i < s.u_grid.size(); ++i) {
    if (!(s.u_grid[i] >= 0.0) || !std::isfinite(s.u_grid[i])) {
      throw ConfigError("sim.u_grid", "values must be finite and >= 0");
    }
    if (i && !(s.u_grid[i] > s.u_grid[i - 1])) {
      throw ConfigError("sim.u_grid", "values must be strictly ascending");
    }
  }
  if (c.estimators.empty()) throw ConfigError("run.estimators", "must list at least one");
  if (c.format != "csv") throw ConfigError("output.format", "only csv is supported");
}

ExperimentConfig parse_config(std::istream& in, const std::string& origin) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(origin, e.message() + " (line " + std::to_string(e.line()) + ")");
  }
  for (const auto& [name, child] : root) {
    if (name != "model" && name != "sim" && name != "run" && name != "output") {
      throw ConfigError(name, "unknown section");
    }
    if (child.empty() && !child.data().empty()) throw ConfigError(name, "key outside a section");
  }

  ExperimentConfig c;
  c.name = origin;

  Section model(root, "model");
  c.model.mu = to_double(model.qualified("mu"), model.require("mu"));
  c.model.epsilon = to_double(model.qualified("epsilon"), model.require("epsilon"));
  if (auto h = model.get("heavy")) c.model.heavy = *h;
  if (c.model.heavy == "exponential") {
    c.model.heavy_rate = to_double(model.qualified("heavy_rate"), model.require("heavy_rate"));
  } else {
    c.model.a = to_double(model.qualified("a"), model.require("a"));
    c.model.b = to_double(model.qualified("b"), model.require("b"));
  }
  if (auto v = model.get("rho")) c.model.rho = to_double(model.qualified("rho"), *v);
  if (auto v = model.get("lambda")) c.model.lambda = to_double(model.qualified("lambda"), *v);
  model.reject_unknown();

  Section sim(root, "sim");
  c.sim.n = static_cast<int>(to_integer("sim.n", sim.require("n")));
  c.sim.reps = to_integer("sim.reps", sim.require("reps"));
  c.sim.seed = to_seed("sim.seed", sim.require("seed"));
  c.sim.u_grid = parse_u_grid(sim.require("u_grid"));
  sim.reject_unknown();

  Section run(root, "run");
  for (const auto& item : split(run.require("estimators"), ',')) {
    if (item.empty()) continue;
    try {
      c.estimators.push_back(parse_kind(item));
    } catch (const DomainError& e) {
      throw ConfigError("run.estimators", e.what());
    }
  }
  run.reject_unknown();

  Section output(root, "output");
  if (auto p = output.get("path")) c.out_path = *p;
  if (auto f = output.get("format")) c.format = *f;
  output.reject_unknown();

  validate(c);
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path, "cannot open config file");
  ExperimentConfig c = parse_config(in, path);
  return c;
}

int resolve_workers(int requested) {
  if (const char* env = std::getenv("RUINSIM_WORKERS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 4096) return static_cast<int>(v);
  }
  return std::max(requested, 1);
}

}  // namespace ruinsim
