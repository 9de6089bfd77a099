#include "asymp/app/run_config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "asymp/app/runner.hpp"

namespace asymp::app {

namespace {

double to_double(const std::string& key, const std::string& text) {
  std::istringstream is(text);
  double v = 0.0;
  if (!(is >> v) || !(is >> std::ws).eof()) throw ConfigError("config: '" + key + "' is not a number: " + text);
  return v;
}

long to_integer(const std::string& key, const std::string& text) {
  const double v = to_double(key, text);
  if (v != std::floor(v)) throw ConfigError("config: '" + key + "' must be an integer");
  return static_cast<long>(v);
}

}  // namespace

double SweepAxis::value(int i) const {
  if (steps <= 1) return lo;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
}

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw ConfigError("unknown output format '" + text + "' (expected json or csv)");
}

std::string to_string(OutputFormat f) { return f == OutputFormat::json ? "json" : "csv"; }

SweepAxis parse_axis(const std::string& text) {
  std::string t = text;
  std::replace(t.begin(), t.end(), ':', ' ');
  std::istringstream is(t);
  SweepAxis a;
  std::string lo, hi, steps;
  if (!(is >> a.parameter >> lo >> hi >> steps) || !(is >> std::ws).eof()) {
    throw ConfigError("sweep axis must be '<param> <lo> <hi> <steps>': " + text);
  }
  a.lo = to_double("lo", lo);
  a.hi = to_double("hi", hi);
  a.steps = static_cast<int>(to_integer("steps", steps));
  return a;
}

void RunConfig::validate() const {
  if (problem.empty()) throw ConfigError("no problem selected");
  const auto& names = problem_names();
  if (std::find(names.begin(), names.end(), problem) == names.end()) {
    throw ConfigError("unknown problem '" + problem + "'");
  }
  const auto methods = methods_for(problem);
  if (!method.empty() && std::find(methods.begin(), methods.end(), method) == methods.end()) {
    throw ConfigError("method '" + method + "' is not available for " + problem);
  }
  if (!(tol > 0.0) || tol > 1e-3) throw ConfigError("tol must lie in (0, 1e-3]");
  if (jobs < 1) throw ConfigError("jobs must be >= 1");
  if (max_error && !(*max_error >= 0.0)) throw ConfigError("max-error must be >= 0");
  if (order && *order == 0) throw ConfigError("order must be >= 1");
  if (axes.size() > 2) throw ConfigError("at most two sweep axes");
  for (const auto& a : axes) {
    if (a.steps < 1) throw ConfigError("sweep axis '" + a.parameter + "' needs steps >= 1");
    if (!std::isfinite(a.lo) || !std::isfinite(a.hi)) throw ConfigError("sweep bounds must be finite");
  }
  if (axes.size() == 2 && axes[0].parameter == axes[1].parameter) {
    throw ConfigError("sweep axes must name different parameters");
  }
  // Every parameter, including each axis endpoint, must build a valid problem.
  auto check = [this](const ParamMap& p) {
    try {
      (void)make_problem(problem, p);
    } catch (const Error& e) {
      throw ConfigError(e.what());
    }
  };
  if (axes.empty()) {
    check(params);
    return;
  }
  for (const auto& a : axes) {
    for (double v : {a.lo, a.hi}) {
      ParamMap p = params;
      p[a.parameter] = v;
      for (const auto& other : axes) {
        if (other.parameter != a.parameter && !p.count(other.parameter)) p[other.parameter] = other.lo;
      }
      check(p);
    }
  }
}

RunConfig config_from_stream(std::istream& in) {
  RunConfig cfg;
  std::vector<ConfigSection> sections;
  try {
    sections = parse_config(in);
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
  for (const auto& s : sections) {
    if (s.name == "problem") {
      for (const auto& [k, v] : s.values) {
        if (k == "name") {
          cfg.problem = v;
        } else {
          cfg.params[k] = to_double(k, v);
        }
      }
    } else if (s.name == "run") {
      for (const auto& [k, v] : s.values) {
        if (k == "method") {
          cfg.method = v;
        } else if (k == "order") {
          const long o = to_integer(k, v);
          if (o < 1) throw ConfigError("config: order must be >= 1");
          cfg.order = static_cast<unsigned>(o);
        } else if (k == "tol") {
          cfg.tol = to_double(k, v);
        } else if (k == "format") {
          cfg.format = parse_format(v);
        } else if (k == "out") {
          cfg.out_path = v;
        } else if (k == "jobs") {
          cfg.jobs = static_cast<int>(to_integer(k, v));
        } else if (k == "max_error") {
          cfg.max_error = to_double(k, v);
        } else {
          throw ConfigError("config: unknown key '" + k + "' in [run]");
        }
      }
    } else if (s.name == "sweep") {
      for (const auto& [k, v] : s.values) {
        if (k != "axis1" && k != "axis2") throw ConfigError("config: unknown key '" + k + "' in [sweep]");
      }
      for (const char* key : {"axis1", "axis2"}) {
        auto it = s.values.find(key);
        if (it != s.values.end()) cfg.axes.push_back(parse_axis(it->second));
      }
    } else if (s.name.empty()) {
      if (!s.values.empty()) throw ConfigError("config: keys outside a section");
    } else {
      throw ConfigError("config: unknown section [" + s.name + "]");
    }
  }
  return cfg;
}

RunConfig config_from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  return config_from_stream(in);
}

}  // namespace asymp::app
