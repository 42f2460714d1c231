#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vml/experiments.hpp"
#include "vml/exponent.hpp"
#include "vml/operators.hpp"
#include "vml/signal.hpp"

namespace vml {

// Configuration errors map to CLI exit code 2.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sections of key = value lines; '#' and ';' start comments.
using IniMap = std::map<std::string, std::map<std::string, std::string>>;

IniMap parse_ini(const std::string& text);
std::string render_ini(const IniMap& ini);

struct FunctionSpec {
  std::string kind = "step";  // step | line | grid2d | radial-step | radial-power
  StepFunction step;
  std::vector<double> line_edges, line_values;
  std::optional<GridFunction2D> grid;
  int dimension = 1;
  double power_c = 1.0, power_alpha = 0.5, power_radius = 1.0;

  LineStep line() const;
  // The function as a step function on (0, inf): identity for `step`,
  // rearrangement for line/grid carriers, radial reduction otherwise.
  StepFunction as_step() const;
};

struct RunConfig {
  std::string command = "norm";
  std::uint64_t seed = 1;
  std::string out_dir = "out";
  bool write_json = true, write_csv = true;

  std::optional<VariableExponent> p, q, beta;
  double lambda = 0.0;

  std::optional<FunctionSpec> function;

  std::string norm_type = "lebesgue";

  // [apply]
  std::string op = "maximal";
  std::vector<double> points;
  double eps = 1.0;
  std::string kernel = "poisson";
  std::string omega = "cos";
  double t_radius = 1.0;
  double exclusion = 0.0;
  double c0 = 1.0;
  double delta = 1.0;
  int dim = 2;
  double r_value = 1.0;

  // [verify]
  std::string experiment = "T3.1";
  bool gate = false;
  ExperimentOptions opts;
  FunctionFamily family;

  ExponentPair pair() const;
  OmegaKernel omega_kernel() const;

  // Canonical key-value echo with every effective value materialized;
  // parsing it back reproduces this configuration byte-for-byte.
  std::string materialize() const;
};

RunConfig load_config(const std::string& path);
RunConfig config_from_ini(const IniMap& ini);

std::vector<double> parse_points(const std::string& text);

}  // namespace vml
