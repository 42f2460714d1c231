#include "vml/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "vml/numfmt.hpp"

namespace vml {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

const std::string* find(const IniMap& ini, const std::string& sec,
                        const std::string& key) {
  const auto s = ini.find(sec);
  if (s == ini.end()) return nullptr;
  const auto k = s->second.find(key);
  return k == s->second.end() ? nullptr : &k->second;
}

std::string get_str(const IniMap& ini, const std::string& sec,
                    const std::string& key, const std::string& dflt) {
  const std::string* v = find(ini, sec, key);
  return v ? *v : dflt;
}

double get_num(const IniMap& ini, const std::string& sec,
               const std::string& key, double dflt) {
  const std::string* v = find(ini, sec, key);
  if (!v) return dflt;
  try {
    return parse_double(*v);
  } catch (const std::exception&) {
    throw config_error("bad number for " + sec + "." + key + ": " + *v);
  }
}

bool get_bool(const IniMap& ini, const std::string& sec,
              const std::string& key, bool dflt) {
  const std::string* v = find(ini, sec, key);
  if (!v) return dflt;
  if (*v == "true" || *v == "1" || *v == "yes") return true;
  if (*v == "false" || *v == "0" || *v == "no") return false;
  throw config_error("bad boolean for " + sec + "." + key + ": " + *v);
}

VariableExponent exponent_from(const IniMap& ini, const std::string& sec) {
  const std::string kind = get_str(ini, sec, "kind", "constant");
  try {
    if (kind == "constant")
      return VariableExponent::constant(get_num(ini, sec, "value", 2.0));
    if (kind == "two-piece")
      return VariableExponent::two_piece(get_num(ini, sec, "value0", 2.0),
                                         get_num(ini, sec, "valueinf", 2.0));
    if (kind == "log-interpolant")
      return VariableExponent::log_interpolant(get_num(ini, sec, "p0", 2.0),
                                               get_num(ini, sec, "pinf", 2.0));
    if (kind == "tabulated") {
      const std::string* knots = find(ini, sec, "knots");
      const std::string* values = find(ini, sec, "values");
      if (!knots || !values)
        throw config_error(sec + ": tabulated exponent needs knots and values");
      return VariableExponent::tabulated(parse_list(*knots),
                                         parse_list(*values));
    }
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(sec + ": " + e.what());
  }
  throw config_error(sec + ": unknown exponent kind '" + kind + "'");
}

IniMap exponent_to(const VariableExponent& e) {
  IniMap out;
  std::istringstream is(to_config(e));
  std::string line;
  while (std::getline(is, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    out["x"][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

}  // namespace

IniMap parse_ini(const std::string& text) {
  IniMap out;
  std::istringstream is(text);
  std::string line, section;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto comment = line.find_first_of("#;");
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw config_error("line " + std::to_string(lineno) +
                           ": unterminated section header");
      section = trim(line.substr(1, line.size() - 2));
      out[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("line " + std::to_string(lineno) +
                         ": expected key = value");
    out[section][trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return out;
}

std::string render_ini(const IniMap& ini) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [sec, kv] : ini) {
    if (!first) os << "\n";
    first = false;
    os << "[" << sec << "]\n";
    for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
  }
  return os.str();
}

LineStep FunctionSpec::line() const {
  if (kind == "line") return LineStep(line_edges, line_values);
  if (kind == "step") return LineStep::from_step(step);
  throw config_error("operator needs a line or step function, got " + kind);
}

StepFunction FunctionSpec::as_step() const {
  if (kind == "step") return step;
  if (kind == "line") return rearrange_line(LineStep(line_edges, line_values));
  if (kind == "grid2d") {
    if (!grid) throw config_error("grid2d function missing cells");
    return rasterize(*grid);
  }
  if (kind == "radial-step")
    return radial_rearrange(RadialFunction::from_profile(dimension, step));
  if (kind == "radial-power")
    return radial_rearrange(
        RadialFunction::power(dimension, power_c, power_alpha, power_radius));
  throw config_error("unknown function kind: " + kind);
}

ExponentPair RunConfig::pair() const {
  ExponentPair pr;
  pr.p = p.value_or(VariableExponent::constant(2.0));
  pr.q = q.value_or(VariableExponent::constant(2.0));
  pr.lambda = lambda;
  return pr;
}

OmegaKernel RunConfig::omega_kernel() const {
  if (omega == "cos") return OmegaKernel::cos_theta();
  if (omega == "sin") return OmegaKernel::sin_theta();
  if (omega == "one") return OmegaKernel::constant_one();
  if (omega == "sign-cos") return OmegaKernel::sign_cos();
  if (omega.rfind("harmonic", 0) == 0) {
    const int k = std::stoi(omega.substr(8));
    return OmegaKernel::harmonic(k);
  }
  throw config_error("unknown omega kernel: " + omega);
}

std::vector<double> parse_points(const std::string& text) {
  if (text.rfind("log:", 0) == 0 || text.rfind("lin:", 0) == 0) {
    const bool logsp = text[1] == 'o';
    std::vector<std::string> parts;
    std::size_t pos = 4;
    while (pos <= text.size()) {
      auto colon = text.find(':', pos);
      if (colon == std::string::npos) colon = text.size();
      parts.push_back(text.substr(pos, colon - pos));
      pos = colon + 1;
    }
    if (parts.size() != 3) throw config_error("grid spec needs lo:hi:n");
    const double lo = parse_double(parts[0]);
    const double hi = parse_double(parts[1]);
    const int n = static_cast<int>(parse_double(parts[2]));
    if (n < 1 || !(hi >= lo)) throw config_error("bad grid spec: " + text);
    if (logsp) return log_grid(lo, hi, n);
    std::vector<double> out;
    for (int i = 0; i < n; ++i)
      out.push_back(lo + (hi - lo) * (n == 1 ? 0.0 : static_cast<double>(i) /
                                                         (n - 1)));
    return out;
  }
  return parse_list(text);
}

namespace {

FunctionSpec function_from(const IniMap& ini, const std::string& sec) {
  FunctionSpec fs;
  fs.kind = get_str(ini, sec, "kind", "step");
  try {
    if (fs.kind == "step" || fs.kind == "radial-step") {
      const std::string* bk = find(ini, sec, "breakpoints");
      const std::string* vals = find(ini, sec, "values");
      if (!bk || !vals)
        throw config_error(sec + ": step function needs breakpoints and values");
      fs.step = StepFunction(parse_list(*bk), parse_list(*vals));
      fs.dimension = static_cast<int>(get_num(ini, sec, "dimension", 1));
    } else if (fs.kind == "line") {
      const std::string* edges = find(ini, sec, "edges");
      const std::string* vals = find(ini, sec, "values");
      if (!edges || !vals)
        throw config_error(sec + ": line function needs edges and values");
      fs.line_edges = parse_list(*edges);
      fs.line_values = parse_list(*vals);
      LineStep check(fs.line_edges, fs.line_values);  // validate now
    } else if (fs.kind == "grid2d") {
      if (const std::string* file = find(ini, sec, "csv-file")) {
        std::ifstream in(*file);
        if (!in) throw config_error(sec + ": cannot open " + *file);
        std::ostringstream ss;
        ss << in.rdbuf();
        fs.grid = GridFunction2D::from_csv(ss.str());
      } else {
        const std::string* cells = find(ini, sec, "cells");
        if (!cells) throw config_error(sec + ": grid2d needs cells or csv-file");
        const auto origin = parse_list(get_str(ini, sec, "origin", "0,0"));
        if (origin.size() != 2) throw config_error(sec + ": origin needs x,y");
        fs.grid = GridFunction2D(
            origin[0], origin[1], get_num(ini, sec, "side", 1.0),
            static_cast<int>(get_num(ini, sec, "m", 2)), parse_list(*cells));
      }
    } else if (fs.kind == "radial-power") {
      fs.dimension = static_cast<int>(get_num(ini, sec, "dimension", 2));
      fs.power_c = get_num(ini, sec, "c", 1.0);
      fs.power_alpha = get_num(ini, sec, "alpha", 0.5);
      fs.power_radius = get_num(ini, sec, "radius", 1.0);
    } else {
      throw config_error(sec + ": unknown function kind '" + fs.kind + "'");
    }
  } catch (const config_error&) {
    throw;
  } catch (const std::exception& e) {
    throw config_error(sec + ": " + e.what());
  }
  return fs;
}

}  // namespace

RunConfig config_from_ini(const IniMap& ini) {
  RunConfig rc;
  rc.command = get_str(ini, "run", "command", rc.command);
  rc.seed = static_cast<std::uint64_t>(get_num(ini, "run", "seed", 1.0));
  rc.out_dir = get_str(ini, "run", "out", rc.out_dir);
  rc.write_json = get_bool(ini, "run", "json", true);
  rc.write_csv = get_bool(ini, "run", "csv", true);
  rc.opts.refine = static_cast<int>(get_num(ini, "run", "refine", 0.0));

  if (ini.count("exponent.p")) rc.p = exponent_from(ini, "exponent.p");
  if (ini.count("exponent.q")) rc.q = exponent_from(ini, "exponent.q");
  if (ini.count("exponent.beta")) rc.beta = exponent_from(ini, "exponent.beta");
  rc.lambda = get_num(ini, "space", "lambda", 0.0);

  if (ini.count("function.f")) rc.function = function_from(ini, "function.f");

  rc.norm_type = get_str(ini, "norm", "type", rc.norm_type);

  rc.op = get_str(ini, "apply", "operator", rc.op);
  if (const std::string* pts = find(ini, "apply", "points"))
    rc.points = parse_points(*pts);
  rc.eps = get_num(ini, "apply", "eps", rc.eps);
  rc.kernel = get_str(ini, "apply", "kernel", rc.kernel);
  rc.omega = get_str(ini, "apply", "omega", rc.omega);
  rc.t_radius = get_num(ini, "apply", "t", rc.t_radius);
  rc.exclusion = get_num(ini, "apply", "exclusion", rc.exclusion);
  rc.c0 = get_num(ini, "apply", "c0", rc.c0);
  rc.delta = get_num(ini, "apply", "delta", rc.delta);
  rc.dim = static_cast<int>(get_num(ini, "apply", "dim", rc.dim));
  rc.r_value = get_num(ini, "apply", "r", rc.r_value);

  rc.experiment = get_str(ini, "verify", "experiment", rc.experiment);
  rc.gate = get_bool(ini, "verify", "gate", false);
  rc.opts.samples = static_cast<std::size_t>(
      get_num(ini, "verify", "samples", static_cast<double>(rc.opts.samples)));
  rc.opts.span_factor = get_num(ini, "verify", "span-factor", rc.opts.span_factor);
  rc.opts.window_lo = get_num(ini, "verify", "window-lo", rc.opts.window_lo);
  rc.opts.window_hi = get_num(ini, "verify", "window-hi", rc.opts.window_hi);
  rc.opts.extensions =
      static_cast<int>(get_num(ini, "verify", "extensions", rc.opts.extensions));
  rc.opts.extension_step =
      get_num(ini, "verify", "extension-step", rc.opts.extension_step);
  const std::string dir = get_str(ini, "verify", "direction", "both");
  if (dir == "both")
    rc.opts.direction = 0;
  else if (dir == "toward-zero")
    rc.opts.direction = -1;
  else if (dir == "toward-inf")
    rc.opts.direction = 1;
  else
    throw config_error("verify.direction must be both|toward-zero|toward-inf");
  rc.opts.epsilon_points = static_cast<int>(
      get_num(ini, "verify", "epsilon-points", rc.opts.epsilon_points));
  rc.opts.grid2d_resolution = static_cast<int>(get_num(
      ini, "verify", "grid2d-resolution", rc.opts.grid2d_resolution));
  rc.opts.mu_samples =
      static_cast<int>(get_num(ini, "verify", "mu-samples", rc.opts.mu_samples));

  rc.family.generator = family_generator_from_name(
      get_str(ini, "family", "generator", "characteristic-intervals"));
  rc.family.count =
      static_cast<int>(get_num(ini, "family", "count", rc.family.count));
  rc.family.seed = static_cast<std::uint64_t>(
      get_num(ini, "family", "seed", static_cast<double>(rc.seed)));
  rc.family.scale_min = get_num(ini, "family", "scale-min", rc.family.scale_min);
  rc.family.scale_max = get_num(ini, "family", "scale-max", rc.family.scale_max);
  return rc;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return config_from_ini(parse_ini(ss.str()));
}

std::string RunConfig::materialize() const {
  IniMap ini;
  auto& run = ini["run"];
  run["command"] = command;
  run["seed"] = format_double(static_cast<double>(seed));
  // the output directory is not part of the computation, so it stays out
  // of the echo and replays land wherever the replayer points --out
  run["json"] = write_json ? "true" : "false";
  run["csv"] = write_csv ? "true" : "false";
  run["refine"] = std::to_string(opts.refine);

  const auto put_exp = [&](const char* sec, const VariableExponent& e) {
    ini[sec] = exponent_to(e).at("x");
  };
  if (p) put_exp("exponent.p", *p);
  if (q) put_exp("exponent.q", *q);
  if (beta) put_exp("exponent.beta", *beta);
  ini["space"]["lambda"] = format_double(lambda);

  if (function) {
    auto& f = ini["function.f"];
    f["kind"] = function->kind;
    if (function->kind == "step" || function->kind == "radial-step") {
      f["breakpoints"] = format_list(function->step.breakpoints());
      f["values"] = format_list(function->step.values());
      f["dimension"] = std::to_string(function->dimension);
    } else if (function->kind == "line") {
      f["edges"] = format_list(function->line_edges);
      f["values"] = format_list(function->line_values);
    } else if (function->kind == "grid2d" && function->grid) {
      const auto& g = *function->grid;
      f["origin"] = format_double(g.x0()) + "," + format_double(g.y0());
      f["side"] = format_double(g.side());
      f["m"] = std::to_string(g.m());
      f["cells"] = format_list(g.cells());
    } else if (function->kind == "radial-power") {
      f["dimension"] = std::to_string(function->dimension);
      f["c"] = format_double(function->power_c);
      f["alpha"] = format_double(function->power_alpha);
      f["radius"] = format_double(function->power_radius);
    }
  }

  ini["norm"]["type"] = norm_type;

  auto& ap = ini["apply"];
  ap["operator"] = op;
  ap["points"] = format_list(points);
  ap["eps"] = format_double(eps);
  ap["kernel"] = kernel;
  ap["omega"] = omega;
  ap["t"] = format_double(t_radius);
  ap["exclusion"] = format_double(exclusion);
  ap["c0"] = format_double(c0);
  ap["delta"] = format_double(delta);
  ap["dim"] = std::to_string(dim);
  ap["r"] = format_double(r_value);

  auto& ve = ini["verify"];
  ve["experiment"] = experiment;
  ve["gate"] = gate ? "true" : "false";
  ve["samples"] = std::to_string(opts.samples);
  ve["span-factor"] = format_double(opts.span_factor);
  ve["window-lo"] = format_double(opts.window_lo);
  ve["window-hi"] = format_double(opts.window_hi);
  ve["extensions"] = std::to_string(opts.extensions);
  ve["extension-step"] = format_double(opts.extension_step);
  ve["direction"] = opts.direction == 0
                        ? "both"
                        : (opts.direction < 0 ? "toward-zero" : "toward-inf");
  ve["epsilon-points"] = std::to_string(opts.epsilon_points);
  ve["grid2d-resolution"] = std::to_string(opts.grid2d_resolution);
  ve["mu-samples"] = std::to_string(opts.mu_samples);

  auto& fa = ini["family"];
  fa["generator"] = family_generator_name(family.generator);
  fa["count"] = std::to_string(family.count);
  fa["seed"] = format_double(static_cast<double>(family.seed));
  fa["scale-min"] = format_double(family.scale_min);
  fa["scale-max"] = format_double(family.scale_max);

  return render_ini(ini);
}

}  // namespace vml
